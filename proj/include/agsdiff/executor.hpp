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

#pragma once

// Golden master comparison of one expected/actual state pair and the
// resulting diff report.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agsdiff/ags.hpp"
#include "agsdiff/filter_rules.hpp"
#include "agsdiff/identification.hpp"
#include "json.hpp"

namespace agsdiff {

enum class ReportStatus { kOk, kDifferences, kGoldenMasterCreated };

const char* to_string(ReportStatus status);
ReportStatus parse_status(std::string_view name);

// Display summary of one element.
struct ElementSummary {
  std::string handle;
  std::string path;  // empty when the element has no path attribute
  std::string type;
  // Values of the strong identifying keys the element carries.
  std::map<std::string, std::string> identity;
  // At most kSummaryAttributes leading attributes, key order.
  std::vector<Attribute> attributes;

  static constexpr std::size_t kSummaryAttributes = 8;

  friend bool operator==(const ElementSummary&, const ElementSummary&) = default;
};

struct ValueDiff {
  std::string key;
  std::string expected;
  std::string actual;

  friend bool operator==(const ValueDiff&, const ValueDiff&) = default;
};

// Differences found on one maintained pair.
struct ElementDiff {
  ElementSummary expected;
  ElementSummary actual;
  std::vector<ValueDiff> value_diffs;
  std::vector<Attribute> only_expected;
  std::vector<Attribute> only_actual;

  bool empty() const {
    return value_diffs.empty() && only_expected.empty() && only_actual.empty();
  }
  friend bool operator==(const ElementDiff&, const ElementDiff&) = default;
};

struct ReportMetrics {
  std::size_t expected_elements = 0;
  std::size_t actual_elements = 0;
  std::size_t maintained = 0;
  double duration_ms = 0.0;

  friend bool operator==(const ReportMetrics&, const ReportMetrics&) = default;
};

struct DiffReport {
  std::string test_id;
  std::string step_name;
  ReportStatus status = ReportStatus::kOk;
  Strategy strategy = Strategy::kMatching;
  std::vector<ElementSummary> deleted;
  std::vector<ElementSummary> created;
  // Only maintained pairs with at least one unsuppressed difference.
  std::vector<ElementDiff> changed;
  ReportMetrics metrics;

  bool has_differences() const {
    return !deleted.empty() || !created.empty() || !changed.empty();
  }
  // deleted + created + changed pairs.
  std::size_t difference_count() const {
    return deleted.size() + created.size() + changed.size();
  }
  // Number of individual attribute-level differences over all changed pairs.
  std::size_t attribute_diff_count() const;

  friend bool operator==(const DiffReport&, const DiffReport&) = default;
};

ElementSummary summarize(const ExtractedElement& element, const KeyConfig& cfg);

// Filters both states, checks equality and otherwise identifies elements and
// derives attribute differences for every maintained pair. Status is `ok`
// exactly when nothing is reported. Throws WellFormednessViolation.
DiffReport execute(const GuiState& expected, const GuiState& actual,
                   const FilterRuleSet& rules, Strategy strategy,
                   const KeyConfig& cfg);

// Report JSON has a stable key order; `metrics.duration_ms` is the only
// non-deterministic field.
nlohmann::json report_to_json(const DiffReport& report);
DiffReport report_from_json(const nlohmann::json& value);
std::string report_to_string(const DiffReport& report);
DiffReport load_report(const std::string& path);
void save_report(const std::string& path, const DiffReport& report);

// Human-readable multi-line summary.
std::string render_report_text(const DiffReport& report);

}  // namespace agsdiff
