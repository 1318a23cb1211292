// Copyright 2026 The agsdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "agsdiff/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <condition_variable>
#include <mutex>
#include <sstream>
#include <thread>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"
#include "json.hpp"

namespace agsdiff {

namespace fs = std::filesystem;
using nlohmann::json;

struct SuiteWriteLock::Shared {
  fs::path path;
  std::mutex mutex;
  std::condition_variable released;
  std::thread::id owner;
  int depth = 0;
  int fd = -1;
};

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string unquote(std::string_view s) {
  s = trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

std::set<std::string> parse_list(std::string_view raw) {
  raw = trim(raw);
  if (!raw.empty() && raw.front() == '[') {
    if (raw.back() != ']') throw ConfigError("unterminated list '" + std::string(raw) + "'");
    raw = raw.substr(1, raw.size() - 2);
  }
  std::set<std::string> out;
  while (!raw.empty()) {
    auto comma = raw.find(',');
    auto item = unquote(raw.substr(0, comma));
    if (!item.empty()) out.insert(item);
    if (comma == std::string_view::npos) break;
    raw = raw.substr(comma + 1);
  }
  return out;
}

double parse_threshold(std::string_view raw, const char* name) {
  auto text = unquote(raw);
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string(name) + " must be a number, got '" + text + "'");
  }
}

std::string join_list(const std::set<std::string>& keys) {
  std::string out = "[";
  bool first = true;
  for (const auto& k : keys) {
    if (!first) out += ", ";
    out += "\"" + k + "\"";
    first = false;
  }
  return out + "]";
}

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

const Element* find_by_handle(const std::vector<Element>& list, std::string_view handle,
                              std::size_t& counter, std::size_t wanted, bool by_index) {
  for (const auto& e : list) {
    if (by_index) {
      if (counter == wanted) return &e;
    } else if (const auto* p = e.attributes.find("path"); p && *p == handle) {
      return &e;
    }
    ++counter;
    if (const auto* hit = find_by_handle(e.children, handle, counter, wanted, by_index)) {
      return hit;
    }
  }
  return nullptr;
}

Element* mutable_element(GuiState& state, std::string_view handle) {
  return const_cast<Element*>(find_element(state, handle));
}

}  // namespace

std::string SuiteConfig::to_text() const {
  std::ostringstream out;
  out << "strategy = \"" << to_string(strategy) << "\"\n";
  out << "strong_keys = " << join_list(keys.strong_keys) << "\n";
  out << "weak_keys = " << join_list(keys.weak_keys) << "\n";
  out << "extra_keys = " << join_list(keys.matching_extra_keys) << "\n";
  out << "t = " << format_double(keys.t) << "\n";
  out << "u = " << format_double(keys.u) << "\n";
  out << "rules = \"" << rules_path << "\"\n";
  if (!defaults_path.empty()) out << "defaults = \"" << defaults_path << "\"\n";
  return out.str();
}

SuiteConfig parse_suite_config(std::string_view text) {
  SuiteConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#' || line.front() == '[') continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = std::string(trim(line.substr(0, eq)));
    auto value = line.substr(eq + 1);
    if (key == "strategy") {
      cfg.strategy = parse_strategy(unquote(value));
    } else if (key == "strong_keys") {
      cfg.keys.strong_keys = parse_list(value);
    } else if (key == "weak_keys") {
      cfg.keys.weak_keys = parse_list(value);
    } else if (key == "extra_keys") {
      cfg.keys.matching_extra_keys = parse_list(value);
    } else if (key == "t") {
      cfg.keys.t = parse_threshold(value, "t");
    } else if (key == "u") {
      cfg.keys.u = parse_threshold(value, "u");
    } else if (key == "rules") {
      cfg.rules_path = unquote(value);
    } else if (key == "defaults") {
      cfg.defaults_path = unquote(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.keys.validate();
  return cfg;
}

std::string sanitize_name(std::string_view name) {
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '_' || c == '-';
    out += ok ? c : '_';
  }
  if (out.empty() || out == "." || out == "..") {
    throw NameCollision("name '" + std::string(name) + "' is not usable as a file name");
  }
  return out;
}

SuiteWriteLock::SuiteWriteLock(std::shared_ptr<Shared> shared) : shared_(std::move(shared)) {}

SuiteWriteLock::SuiteWriteLock(SuiteWriteLock&& other) noexcept
    : shared_(std::move(other.shared_)) {}

SuiteWriteLock::~SuiteWriteLock() {
  if (!shared_) return;
  std::lock_guard<std::mutex> guard(shared_->mutex);
  if (--shared_->depth == 0) {
    ::flock(shared_->fd, LOCK_UN);
    ::close(shared_->fd);
    shared_->fd = -1;
    shared_->owner = {};
    shared_->released.notify_all();
  }
}

Suite Suite::open(const fs::path& root) {
  Suite suite;
  suite.root_ = root;
  std::error_code ec;
  fs::create_directories(root, ec);
  if (ec) throw StoreIOError("cannot create suite " + root.string() + ": " + ec.message());
  if (fs::exists(root / "config")) {
    suite.config_ = parse_suite_config(read_file((root / "config").string()));
  }
  suite.lock_ = std::make_shared<SuiteWriteLock::Shared>();
  suite.lock_->path = root / ".lock";
  suite.reload_rules();
  suite.load_index();
  return suite;
}

fs::path Suite::rules_file() const {
  fs::path p(config_.rules_path);
  return p.is_absolute() ? p : root_ / p;
}

void Suite::reload_rules() {
  auto path = rules_file();
  rules_ = fs::exists(path) ? load_rules(path.string()) : FilterRuleSet{};
}

void Suite::load_index() {
  index_.clear();
  auto path = root_ / "index.json";
  if (!fs::exists(path)) return;
  try {
    auto doc = json::parse(read_file(path.string()));
    for (const auto& entry : doc.at("steps")) {
      index_.push_back({{entry.at("test").get<std::string>(), entry.at("step").get<std::string>()},
                        entry.at("file").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw CorruptGoldenMaster("suite index " + path.string() + ": " + e.what());
  }
}

void Suite::write_index() const {
  json steps = json::array();
  for (const auto& [key, file] : index_) {
    steps.push_back({{"test", key.test_id}, {"step", key.step_name}, {"file", file}});
  }
  write_file_atomic((root_ / "index.json").string(), json{{"steps", steps}}.dump(1) + "\n");
}

fs::path Suite::report_file(const StepKey& key) const {
  return root_ / ".results" / sanitize_name(key.test_id) /
         (sanitize_name(key.step_name) + ".report.json");
}

fs::path Suite::actual_file(const StepKey& key) const {
  return root_ / ".results" / sanitize_name(key.test_id) /
         (sanitize_name(key.step_name) + ".actual.ags.json");
}

std::optional<fs::path> Suite::golden_master_file(const StepKey& key) const {
  for (const auto& [k, file] : index_) {
    if (k == key) return root_ / file;
  }
  return std::nullopt;
}

std::vector<StepKey> Suite::steps() const {
  std::vector<StepKey> out;
  for (const auto& [k, _] : index_) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

bool Suite::has_golden_master(const StepKey& key) const {
  auto file = golden_master_file(key);
  return file && fs::exists(*file);
}

GuiState Suite::load_golden_master(const StepKey& key) const {
  auto file = golden_master_file(key);
  if (!file || !fs::exists(*file)) {
    throw UnknownStep("no golden master for test '" + key.test_id + "' step '" +
                      key.step_name + "'");
  }
  try {
    return load_state(file->string());
  } catch (const ParseError& e) {
    throw CorruptGoldenMaster(file->string() + ": " + e.what());
  } catch (const WellFormednessViolation& e) {
    throw CorruptGoldenMaster(file->string() + ": " + e.what());
  }
}

void Suite::save_golden_master(const StepKey& key, const GuiState& state) {
  auto lock = lock_for_writing(true);
  load_index();
  auto existing = golden_master_file(key);
  if (!existing) {
    std::string file = sanitize_name(key.test_id) + "/" + sanitize_name(key.step_name) + ".ags.json";
    for (const auto& [k, f] : index_) {
      if (f == file) {
        throw NameCollision("test '" + key.test_id + "' step '" + key.step_name +
                            "' maps to " + file + ", already used by test '" + k.test_id +
                            "' step '" + k.step_name + "'");
      }
    }
    index_.push_back({key, file});
    existing = root_ / file;
    save_state(existing->string(), state);
    write_index();
    return;
  }
  save_state(existing->string(), state);
}

std::optional<GuiState> Suite::load_actual(const StepKey& key) const {
  auto file = actual_file(key);
  if (!fs::exists(file)) return std::nullopt;
  return load_state(file.string());
}

void Suite::append_rule(const FilterRule& rule) {
  auto lock = lock_for_writing(true);
  auto path = rules_file();
  std::string existing = fs::exists(path) ? read_file(path.string()) : std::string{};
  if (!existing.empty() && existing.back() != '\n') existing += '\n';
  existing += rule.to_line() + "\n";
  write_file_atomic(path.string(), existing);
  reload_rules();
}

SuiteWriteLock Suite::lock_for_writing(bool wait) const {
  std::unique_lock<std::mutex> guard(lock_->mutex);
  if (lock_->depth > 0 && lock_->owner == std::this_thread::get_id()) {
    ++lock_->depth;
    return SuiteWriteLock(lock_);
  }
  if (lock_->depth > 0) {
    if (!wait) throw SuiteLocked("suite lock " + lock_->path.string() + " is held");
    lock_->released.wait(guard, [&] { return lock_->depth == 0; });
  }
  int fd = ::open(lock_->path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreIOError("cannot open lock file " + lock_->path.string());
  if (::flock(fd, wait ? LOCK_EX : LOCK_EX | LOCK_NB) != 0) {
    ::close(fd);
    throw SuiteLocked("suite lock " + lock_->path.string() + " is held");
  }
  lock_->fd = fd;
  lock_->owner = std::this_thread::get_id();
  lock_->depth = 1;
  return SuiteWriteLock(lock_);
}

DiffReport checkpoint(Suite& suite, const StepKey& key, const GuiState& actual,
                      std::optional<Strategy> strategy) {
  require_well_formed(actual);
  const auto chosen = strategy.value_or(suite.config().strategy);
  DiffReport report;
  if (!suite.has_golden_master(key)) {
    const auto start = std::chrono::steady_clock::now();
    GuiState filtered = canonicalize(apply_state_filter(actual, suite.rules()));
    suite.save_golden_master(key, filtered);
    report.status = ReportStatus::kGoldenMasterCreated;
    report.strategy = chosen;
    report.metrics.actual_elements = node_count(filtered);
    report.metrics.duration_ms = std::chrono::duration<double, std::milli>(
                                     std::chrono::steady_clock::now() - start)
                                     .count();
  } else {
    auto expected = suite.load_golden_master(key);
    report = execute(expected, actual, suite.rules(), chosen, suite.config().keys);
  }
  report.test_id = key.test_id;
  report.step_name = key.step_name;
  save_report(suite.report_file(key).string(), report);
  std::error_code ec;
  if (report.status == ReportStatus::kDifferences) {
    write_file_atomic(suite.actual_file(key).string(), serialize_pretty(canonicalize(actual)));
  } else {
    fs::remove(suite.actual_file(key), ec);
  }
  return report;
}

std::optional<DiffReport> recheck(Suite& suite, const StepKey& key) {
  auto actual = suite.load_actual(key);
  if (!actual) return std::nullopt;
  auto previous = suite.report_file(key);
  std::optional<Strategy> strategy;
  if (fs::exists(previous)) strategy = load_report(previous.string()).strategy;
  return checkpoint(suite, key, *actual, strategy);
}

const Element* find_element(const GuiState& state, std::string_view handle) {
  std::size_t counter = 0;
  if (!handle.empty() && handle.front() == '@') {
    std::size_t wanted = 0;
    try {
      wanted = std::stoul(std::string(handle.substr(1)));
    } catch (const std::exception&) {
      return nullptr;
    }
    return find_by_handle(state.roots, handle, counter, wanted, true);
  }
  return find_by_handle(state.roots, handle, counter, 0, false);
}

GuiState update_golden_master(Suite& suite, const StepKey& key, std::string_view handle,
                              const std::string& attribute,
                              const std::optional<std::string>& value) {
  auto lock = suite.lock_for_writing();
  GuiState state = suite.load_golden_master(key);
  Element* element = mutable_element(state, handle);
  if (element == nullptr) {
    throw UnknownElement("no element '" + std::string(handle) + "' in test '" + key.test_id +
                         "' step '" + key.step_name + "'");
  }
  if (value) {
    element->attributes.set(attribute, *value);
  } else {
    element->attributes.erase(attribute);
  }
  require_well_formed(state);
  suite.save_golden_master(key, state);
  return state;
}

}  // namespace agsdiff
