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

#include "agsdiff/executor.hpp"

#include <chrono>
#include <sstream>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"
#include "agsdiff/relations.hpp"

namespace agsdiff {

using nlohmann::json;

namespace {

json attributes_json(const std::vector<Attribute>& attrs) {
  json out = json::array();
  for (const auto& a : attrs) out.push_back({{"key", a.key}, {"value", a.value}});
  return out;
}

std::vector<Attribute> attributes_from(const json& value) {
  std::vector<Attribute> out;
  for (const auto& a : value) {
    out.push_back({a.at("key").get<std::string>(), a.at("value").get<std::string>()});
  }
  return out;
}

json summary_json(const ElementSummary& s) {
  return {{"handle", s.handle},
          {"path", s.path},
          {"type", s.type},
          {"identity", s.identity},
          {"attributes", attributes_json(s.attributes)}};
}

ElementSummary summary_from(const json& v) {
  ElementSummary s;
  s.handle = v.at("handle").get<std::string>();
  s.path = v.value("path", "");
  s.type = v.value("type", "");
  if (v.contains("identity")) {
    s.identity = v.at("identity").get<std::map<std::string, std::string>>();
  }
  if (v.contains("attributes")) s.attributes = attributes_from(v.at("attributes"));
  return s;
}

}  // namespace

const char* to_string(ReportStatus status) {
  switch (status) {
    case ReportStatus::kOk:
      return "ok";
    case ReportStatus::kDifferences:
      return "differences";
    case ReportStatus::kGoldenMasterCreated:
      return "golden-master-created";
  }
  return "unknown";
}

ReportStatus parse_status(std::string_view name) {
  if (name == "ok") return ReportStatus::kOk;
  if (name == "differences") return ReportStatus::kDifferences;
  if (name == "golden-master-created") return ReportStatus::kGoldenMasterCreated;
  throw ParseError("unknown report status '" + std::string(name) + "'", 0, 0);
}

std::size_t DiffReport::attribute_diff_count() const {
  std::size_t n = 0;
  for (const auto& c : changed) {
    n += c.value_diffs.size() + c.only_expected.size() + c.only_actual.size();
  }
  return n;
}

ElementSummary summarize(const ExtractedElement& element, const KeyConfig& cfg) {
  ElementSummary s;
  s.handle = element.handle;
  if (const auto* p = element.attributes.find("path")) s.path = *p;
  if (const auto* t = element.attributes.find("type")) s.type = *t;
  for (const auto& k : cfg.strong_keys) {
    if (const auto* v = element.attributes.find(k)) s.identity[k] = *v;
  }
  for (const auto& a : element.attributes) {
    if (s.attributes.size() == ElementSummary::kSummaryAttributes) break;
    s.attributes.push_back(a);
  }
  return s;
}

DiffReport execute(const GuiState& expected, const GuiState& actual,
                   const FilterRuleSet& rules, Strategy strategy,
                   const KeyConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  DiffReport report;
  report.strategy = strategy;
  const GuiState lhs = canonicalize(apply_state_filter(expected, rules));
  const GuiState rhs = canonicalize(apply_state_filter(actual, rules));
  report.metrics.expected_elements = node_count(lhs);
  report.metrics.actual_elements = node_count(rhs);

  if (!derive_equality(lhs, rhs)) {
    auto ident = identify(lhs, rhs, strategy, cfg);
    report.metrics.maintained = ident.maintained.size();
    for (const auto& e : ident.deleted) report.deleted.push_back(summarize(e, cfg));
    for (const auto& e : ident.created) report.created.push_back(summarize(e, cfg));
    for (const auto& [exp, act] : ident.maintained) {
      ElementDiff diff;
      for (const auto& leaf :
           attribute_inequality_leaves(exp.attributes, act.attributes, rules)) {
        switch (leaf.kind) {
          case ProofKind::kAttributeValueDiff:
            diff.value_diffs.push_back(
                {*leaf.key, *leaf.expected_value, *leaf.actual_value});
            break;
          case ProofKind::kAttributeOnlyExpected:
            diff.only_expected.push_back({*leaf.key, *leaf.expected_value});
            break;
          case ProofKind::kAttributeOnlyActual:
            diff.only_actual.push_back({*leaf.key, *leaf.actual_value});
            break;
          default:
            break;
        }
      }
      if (diff.empty()) continue;
      diff.expected = summarize(exp, cfg);
      diff.actual = summarize(act, cfg);
      report.changed.push_back(std::move(diff));
    }
  } else {
    report.metrics.maintained = report.metrics.expected_elements;
  }
  report.status =
      report.has_differences() ? ReportStatus::kDifferences : ReportStatus::kOk;
  report.metrics.duration_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                start)
          .count();
  return report;
}

json report_to_json(const DiffReport& report) {
  json deleted = json::array();
  for (const auto& s : report.deleted) deleted.push_back(summary_json(s));
  json created = json::array();
  for (const auto& s : report.created) created.push_back(summary_json(s));
  json changed = json::array();
  for (const auto& c : report.changed) {
    json diffs = json::array();
    for (const auto& d : c.value_diffs) {
      diffs.push_back({{"key", d.key}, {"expected", d.expected}, {"actual", d.actual}});
    }
    changed.push_back({{"expected", summary_json(c.expected)},
                       {"actual", summary_json(c.actual)},
                       {"attribute_diffs", std::move(diffs)},
                       {"only_expected", attributes_json(c.only_expected)},
                       {"only_actual", attributes_json(c.only_actual)}});
  }
  return {{"test_id", report.test_id},
          {"step_name", report.step_name},
          {"status", to_string(report.status)},
          {"strategy", to_string(report.strategy)},
          {"deleted", std::move(deleted)},
          {"created", std::move(created)},
          {"changed", std::move(changed)},
          {"metrics",
           {{"expected_elements", report.metrics.expected_elements},
            {"actual_elements", report.metrics.actual_elements},
            {"maintained", report.metrics.maintained},
            {"deleted", report.deleted.size()},
            {"created", report.created.size()},
            {"changed", report.changed.size()},
            {"duration_ms", report.metrics.duration_ms}}}};
}

DiffReport report_from_json(const json& v) {
  try {
    DiffReport r;
    r.test_id = v.at("test_id").get<std::string>();
    r.step_name = v.at("step_name").get<std::string>();
    r.status = parse_status(v.at("status").get<std::string>());
    r.strategy = parse_strategy(v.at("strategy").get<std::string>());
    for (const auto& s : v.at("deleted")) r.deleted.push_back(summary_from(s));
    for (const auto& s : v.at("created")) r.created.push_back(summary_from(s));
    for (const auto& c : v.at("changed")) {
      ElementDiff d;
      d.expected = summary_from(c.at("expected"));
      d.actual = summary_from(c.at("actual"));
      for (const auto& x : c.at("attribute_diffs")) {
        d.value_diffs.push_back({x.at("key").get<std::string>(),
                                 x.at("expected").get<std::string>(),
                                 x.at("actual").get<std::string>()});
      }
      d.only_expected = attributes_from(c.at("only_expected"));
      d.only_actual = attributes_from(c.at("only_actual"));
      r.changed.push_back(std::move(d));
    }
    const auto& m = v.at("metrics");
    r.metrics.expected_elements = m.value("expected_elements", std::size_t{0});
    r.metrics.actual_elements = m.value("actual_elements", std::size_t{0});
    r.metrics.maintained = m.value("maintained", std::size_t{0});
    r.metrics.duration_ms = m.value("duration_ms", 0.0);
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report schema: ") + e.what(), 0, 0);
  } catch (const ConfigError& e) {
    throw ParseError(std::string("report schema: ") + e.what(), 0, 0);
  }
}

std::string report_to_string(const DiffReport& report) {
  return report_to_json(report).dump(1) + "\n";
}

DiffReport load_report(const std::string& path) {
  auto text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), 0, 0);
  }
  return report_from_json(doc);
}

void save_report(const std::string& path, const DiffReport& report) {
  write_file_atomic(path, report_to_string(report));
}

std::string render_report_text(const DiffReport& report) {
  std::ostringstream out;
  out << "Test '" << report.test_id << "' step '" << report.step_name
      << "': " << to_string(report.status) << " (strategy "
      << to_string(report.strategy) << ")\n";
  out << "  elements: " << report.metrics.expected_elements << " expected, "
      << report.metrics.actual_elements << " actual; " << report.deleted.size()
      << " deleted, " << report.created.size() << " created, "
      << report.changed.size() << " changed\n";
  auto label = [](const ElementSummary& s) {
    std::string l = s.type.empty() ? std::string("element") : "<" + s.type + ">";
    if (auto id = s.identity.find("id"); id != s.identity.end()) l += " #" + id->second;
    return l + " " + s.handle;
  };
  for (const auto& s : report.deleted) out << "  - deleted " << label(s) << "\n";
  for (const auto& s : report.created) out << "  + created " << label(s) << "\n";
  for (const auto& c : report.changed) {
    out << "  * " << label(c.expected);
    if (c.actual.handle != c.expected.handle) out << " -> " << c.actual.handle;
    out << "\n";
    for (const auto& d : c.value_diffs) {
      out << "      " << d.key << ": '" << d.expected << "' -> '" << d.actual
          << "'\n";
    }
    for (const auto& a : c.only_expected) {
      out << "      " << a.key << ": '" << a.value << "' -> (absent)\n";
    }
    for (const auto& a : c.only_actual) {
      out << "      " << a.key << ": (absent) -> '" << a.value << "'\n";
    }
  }
  return out.str();
}

}  // namespace agsdiff
