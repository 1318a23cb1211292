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

#include "agsdiff/maintenance.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <set>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"

namespace agsdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::map<std::string, std::string> identity_of(const ElementSummary& s) {
  std::map<std::string, std::string> out = s.identity;
  out.erase("path");
  if (out.empty()) {
    if (!s.path.empty()) {
      out["path"] = s.path;
    } else {
      out["handle"] = s.handle;
    }
  }
  return out;
}

json optional_json(const std::optional<std::string>& v) {
  return v ? json(*v) : json(nullptr);
}

std::optional<std::string> optional_from(const json& v, const char* key) {
  auto it = v.find(key);
  if (it == v.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

json occurrence_to_json(const Occurrence& o) {
  return {{"test_id", o.test_id},
          {"step_name", o.step_name},
          {"expected_handle", o.expected_handle},
          {"actual_handle", o.actual_handle}};
}

std::string now_iso8601() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Element* find_mutable(GuiState& state, std::string_view handle) {
  return const_cast<Element*>(find_element(state, handle));
}

std::vector<Element>* parent_list(std::vector<Element>& list, const Element* target,
                                  std::size_t& pos) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (&list[i] == target) {
      pos = i;
      return &list;
    }
    if (auto* hit = parent_list(list[i].children, target, pos)) return hit;
  }
  return nullptr;
}

const Element* parent_element(const std::vector<Element>& list, const Element* target,
                              const Element* parent) {
  for (const auto& e : list) {
    if (&e == target) return parent;
    if (const auto* hit = parent_element(e.children, target, &e)) return hit;
  }
  return nullptr;
}

std::string handle_of(const GuiState& state, const Element* element) {
  if (const auto* p = element->attributes.find("path")) return *p;
  std::size_t n = 0;
  std::string out;
  for_each_element(state, [&](const Element& e, std::size_t) {
    if (&e == element) out = "@" + std::to_string(n);
    ++n;
  });
  return out;
}

UnknownElement unknown_element(const StepKey& key, std::string_view handle) {
  return UnknownElement("no element '" + std::string(handle) + "' in test '" + key.test_id +
                        "' step '" + key.step_name + "'");
}

StepKey step_of(const json& edit) {
  return {edit.at("test_id").get<std::string>(), edit.at("step_name").get<std::string>()};
}

// Applies one journaled edit.
void apply_edit(Suite& suite, const json& edit) {
  const auto op = edit.at("op").get<std::string>();
  if (op == "rule") {
    suite.append_rule(parse_rules(edit.at("line").get<std::string>()).rules().at(0));
    return;
  }
  const StepKey key = step_of(edit);
  if (op == "set" || op == "erase") {
    std::optional<std::string> value;
    if (op == "set") value = edit.at("value").get<std::string>();
    update_golden_master(suite, key, edit.at("handle").get<std::string>(),
                         edit.at("key").get<std::string>(), value);
    return;
  }
  GuiState state = suite.load_golden_master(key);
  if (op == "remove-element") {
    const auto handle = edit.at("handle").get<std::string>();
    const Element* element = find_element(state, handle);
    if (element == nullptr) throw unknown_element(key, handle);
    std::size_t pos = 0;
    auto* list = parent_list(state.roots, element, pos);
    std::vector<Element> children = std::move((*list)[pos].children);
    list->erase(list->begin() + static_cast<std::ptrdiff_t>(pos));
    list->insert(list->begin() + static_cast<std::ptrdiff_t>(pos),
                 std::make_move_iterator(children.begin()),
                 std::make_move_iterator(children.end()));
  } else if (op == "insert-element") {
    std::vector<Element>* siblings = &state.roots;
    if (const auto& parent = edit.at("parent"); !parent.is_null()) {
      if (Element* p = find_mutable(state, parent.get<std::string>())) siblings = &p->children;
    }
    Element inserted;
    for (const auto& a : edit.at("attributes")) {
      inserted.attributes.set(a.at("key").get<std::string>(), a.at("value").get<std::string>());
    }
    auto position = std::min(edit.at("position").get<std::size_t>(), siblings->size());
    siblings->insert(siblings->begin() + static_cast<std::ptrdiff_t>(position),
                     std::move(inserted));
  } else {
    throw ParseError("unknown journal edit '" + op + "'", 0, 0);
  }
  require_well_formed(state);
  suite.save_golden_master(key, state);
}

std::optional<std::string> element_rule(const Element& element) {
  for (const char* k : {"id", "path"}) {
    if (const auto* v = element.attributes.find(k)) {
      return FilterRule::ignore_element({k, *v}).to_line();
    }
  }
  return std::nullopt;
}

// Resolves one occurrence of an accept into journal edits.
std::vector<json> accept_edits(Suite& suite, const ChangeSignature& sig, const Occurrence& o) {
  const StepKey key{o.test_id, o.step_name};
  const GuiState gm = suite.load_golden_master(key);
  json base = {{"test_id", o.test_id}, {"step_name", o.step_name}};
  switch (sig.kind) {
    case ChangeKind::kAttribute: {
      if (find_element(gm, o.expected_handle) == nullptr) {
        throw unknown_element(key, o.expected_handle);
      }
      json edit = base;
      edit["handle"] = o.expected_handle;
      edit["key"] = sig.key;
      if (sig.actual) {
        edit["op"] = "set";
        edit["value"] = *sig.actual;
      } else {
        edit["op"] = "erase";
      }
      return {edit};
    }
    case ChangeKind::kDeleted: {
      if (find_element(gm, o.expected_handle) == nullptr) {
        throw unknown_element(key, o.expected_handle);
      }
      json edit = base;
      edit["op"] = "remove-element";
      edit["handle"] = o.expected_handle;
      return {edit};
    }
    case ChangeKind::kCreated: {
      auto actual = suite.load_actual(key);
      if (!actual) {
        throw UnknownElement("no recorded actual state for test '" + key.test_id +
                             "' step '" + key.step_name + "'");
      }
      const Element* created = find_element(*actual, o.actual_handle);
      if (created == nullptr) throw unknown_element(key, o.actual_handle);
      const Element* parent = parent_element(actual->roots, created, nullptr);
      const auto& siblings = parent ? parent->children : actual->roots;
      std::size_t position = 0;
      while (&siblings[position] != created) ++position;
      json attrs = json::array();
      for (const auto& a : created->attributes) {
        attrs.push_back({{"key", a.key}, {"value", a.value}});
      }
      json edit = base;
      edit["op"] = "insert-element";
      edit["parent"] = parent ? json(handle_of(*actual, parent)) : json(nullptr);
      edit["position"] = position;
      edit["attributes"] = std::move(attrs);
      return {edit};
    }
  }
  return {};
}

std::string ignore_rule(Suite& suite, const ChangeSignature& sig, const Occurrence& o,
                        Scope scope) {
  const StepKey key{o.test_id, o.step_name};
  if (sig.kind == ChangeKind::kAttribute) {
    if (scope == Scope::kPropagate) return FilterRule::ignore_attribute(sig.key).to_line();
    const GuiState gm = suite.load_golden_master(key);
    const Element* element = find_element(gm, o.expected_handle);
    if (element == nullptr) throw unknown_element(key, o.expected_handle);
    for (const char* k : {"id", "path"}) {
      if (const auto* v = element->attributes.find(k)) {
        return FilterRule::ignore_attribute_of({k, *v}, sig.key).to_line();
      }
    }
    return FilterRule::ignore_attribute(sig.key).to_line();
  }
  std::optional<std::string> rule;
  if (sig.kind == ChangeKind::kDeleted) {
    const GuiState gm = suite.load_golden_master(key);
    const Element* element = find_element(gm, o.expected_handle);
    if (element == nullptr) throw unknown_element(key, o.expected_handle);
    rule = element_rule(*element);
  } else {
    auto actual = suite.load_actual(key);
    const Element* element = actual ? find_element(*actual, o.actual_handle) : nullptr;
    if (element == nullptr) throw unknown_element(key, o.actual_handle);
    rule = element_rule(*element);
  }
  if (!rule) {
    throw UnknownElement("element '" + (o.expected_handle.empty() ? o.actual_handle
                                                                  : o.expected_handle) +
                         "' has neither id nor path to ignore it by");
  }
  return *rule;
}

}  // namespace

const char* to_string(ChangeKind kind) {
  switch (kind) {
    case ChangeKind::kAttribute:
      return "attribute";
    case ChangeKind::kDeleted:
      return "deleted";
    case ChangeKind::kCreated:
      return "created";
  }
  return "unknown";
}

ChangeKind parse_change_kind(std::string_view name) {
  if (name == "attribute") return ChangeKind::kAttribute;
  if (name == "deleted") return ChangeKind::kDeleted;
  if (name == "created") return ChangeKind::kCreated;
  throw ParseError("unknown change kind '" + std::string(name) + "'", 0, 0);
}

const char* to_string(Action action) {
  return action == Action::kAccept ? "accept" : "ignore";
}

const char* to_string(Scope scope) {
  return scope == Scope::kSingle ? "single" : "propagate";
}

Action parse_action(std::string_view name) {
  if (name == "accept") return Action::kAccept;
  if (name == "ignore") return Action::kIgnore;
  throw ParseError("unknown action '" + std::string(name) + "'", 0, 0);
}

Scope parse_scope(std::string_view name) {
  if (name == "single") return Scope::kSingle;
  if (name == "propagate") return Scope::kPropagate;
  throw ParseError("unknown scope '" + std::string(name) + "'", 0, 0);
}

json signature_to_json(const ChangeSignature& s) {
  return {{"identity", s.identity},
          {"kind", to_string(s.kind)},
          {"key", s.key},
          {"expected", optional_json(s.expected)},
          {"actual", optional_json(s.actual)}};
}

ChangeSignature signature_from_json(const json& v) {
  try {
    ChangeSignature s;
    s.identity = v.at("identity").get<std::map<std::string, std::string>>();
    s.kind = parse_change_kind(v.value("kind", "attribute"));
    s.key = v.value("key", "");
    s.expected = optional_from(v, "expected");
    s.actual = optional_from(v, "actual");
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("signature: ") + e.what(), 0, 0);
  }
}

ChangeGroups group_changes(const std::vector<DiffReport>& reports) {
  ChangeGroups groups;
  for (const auto& r : reports) {
    for (const auto& c : r.changed) {
      const auto identity = identity_of(c.expected);
      const Occurrence o{r.test_id, r.step_name, c.expected.handle, c.actual.handle};
      for (const auto& d : c.value_diffs) {
        groups[{identity, ChangeKind::kAttribute, d.key, d.expected, d.actual}].push_back(o);
      }
      for (const auto& a : c.only_expected) {
        groups[{identity, ChangeKind::kAttribute, a.key, a.value, std::nullopt}].push_back(o);
      }
      for (const auto& a : c.only_actual) {
        groups[{identity, ChangeKind::kAttribute, a.key, std::nullopt, a.value}].push_back(o);
      }
    }
    for (const auto& d : r.deleted) {
      groups[{identity_of(d), ChangeKind::kDeleted, "", std::nullopt, std::nullopt}].push_back(
          {r.test_id, r.step_name, d.handle, ""});
    }
    for (const auto& c : r.created) {
      groups[{identity_of(c), ChangeKind::kCreated, "", std::nullopt, std::nullopt}].push_back(
          {r.test_id, r.step_name, "", c.handle});
    }
  }
  return groups;
}

json groups_to_json(const ChangeGroups& groups) {
  json out = json::array();
  std::size_t id = 0;
  for (const auto& [sig, occurrences] : groups) {
    json occ = json::array();
    for (const auto& o : occurrences) occ.push_back(occurrence_to_json(o));
    out.push_back({{"id", id++},
                   {"signature", signature_to_json(sig)},
                   {"count", occurrences.size()},
                   {"occurrences", std::move(occ)}});
  }
  return out;
}

bool DecisionSummary::all_applied() const {
  return std::all_of(outcomes.begin(), outcomes.end(),
                     [](const OccurrenceOutcome& o) { return o.applied; });
}

json summary_to_json(const DecisionSummary& s) {
  json outcomes = json::array();
  for (const auto& o : s.outcomes) {
    json entry = occurrence_to_json(o.occurrence);
    entry["applied"] = o.applied;
    if (!o.error.empty()) entry["error"] = o.error;
    outcomes.push_back(std::move(entry));
  }
  json steps = json::array();
  for (const auto& k : s.updated_steps) {
    steps.push_back({{"test_id", k.test_id}, {"step_name", k.step_name}});
  }
  return {{"outcomes", std::move(outcomes)},
          {"rules_added", s.rules_added},
          {"updated_steps", std::move(steps)}};
}

DecisionSummary apply_decision(Suite& suite, const Decision& decision,
                               const std::vector<Occurrence>& occurrences) {
  auto lock = suite.lock_for_writing();
  DecisionSummary summary;
  std::vector<Occurrence> targets = occurrences;
  if (decision.scope == Scope::kSingle && targets.size() > 1) targets.resize(1);

  json edits = json::array();
  std::set<StepKey> updated;
  std::set<std::string> existing_rules;
  for (const auto& r : suite.rules().rules()) existing_rules.insert(r.to_line());

  for (const auto& o : targets) {
    OccurrenceOutcome outcome{o, false, ""};
    try {
      if (decision.action == Action::kAccept) {
        for (auto& edit : accept_edits(suite, decision.signature, o)) {
          apply_edit(suite, edit);
          edits.push_back(std::move(edit));
        }
        updated.insert({o.test_id, o.step_name});
      } else {
        auto line = ignore_rule(suite, decision.signature, o, decision.scope);
        if (existing_rules.insert(line).second) {
          json edit = {{"op", "rule"}, {"line", line}};
          apply_edit(suite, edit);
          edits.push_back(std::move(edit));
          summary.rules_added.push_back(line);
        }
      }
      outcome.applied = true;
    } catch (const UnknownElement& e) {
      outcome.error = e.what();
    } catch (const UnknownStep& e) {
      outcome.error = e.what();
    }
    summary.outcomes.push_back(std::move(outcome));
  }
  summary.updated_steps.assign(updated.begin(), updated.end());

  json occ = json::array();
  for (const auto& o : targets) occ.push_back(occurrence_to_json(o));
  json entry = {{"timestamp", decision.timestamp.empty() ? now_iso8601() : decision.timestamp},
                {"signature", signature_to_json(decision.signature)},
                {"action", to_string(decision.action)},
                {"scope", to_string(decision.scope)},
                {"occurrences", std::move(occ)},
                {"edits", std::move(edits)}};
  append_file(suite.journal_file().string(), entry.dump() + "\n");
  return summary;
}

void replay_journal(Suite& suite, const fs::path& journal) {
  auto lock = suite.lock_for_writing(true);
  const auto text = read_file(journal.string());
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    ++line_no;
    std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
      for (const auto& edit : entry.at("edits")) apply_edit(suite, edit);
    } catch (const json::exception& e) {
      throw ParseError(journal.string() + ": " + e.what(), line_no, 0);
    }
  }
}

std::vector<DiffReport> load_reports(const Suite& suite) {
  std::vector<DiffReport> out;
  for (const auto& key : suite.steps()) {
    auto file = suite.report_file(key);
    if (fs::exists(file)) out.push_back(load_report(file.string()));
  }
  return out;
}

std::vector<DiffReport> recheck_all(Suite& suite) {
  std::vector<DiffReport> out;
  for (const auto& key : suite.steps()) {
    if (auto r = recheck(suite, key)) out.push_back(std::move(*r));
  }
  return out;
}

DiffReport accept_all(Suite& suite, const StepKey& key, int max_rounds) {
  auto file = suite.report_file(key);
  if (!fs::exists(file)) {
    throw UnknownStep("no report for test '" + key.test_id + "' step '" + key.step_name + "'");
  }
  DiffReport report = load_report(file.string());
  for (int round = 0; round < max_rounds && report.status == ReportStatus::kDifferences;
       ++round) {
    auto groups = group_changes({report});
    const auto& [sig, occurrences] = *groups.begin();
    auto summary = apply_decision(suite, {sig, Action::kAccept, Scope::kSingle, ""}, occurrences);
    if (!summary.all_applied()) {
      throw UnknownElement(summary.outcomes.front().error);
    }
    auto next = recheck(suite, key);
    if (!next) break;
    report = std::move(*next);
  }
  return report;
}

}  // namespace agsdiff
