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

// User-configured filtering. State-level rules remove elements or attributes
// before comparison; the pixel threshold suppresses individual positional
// differences after comparison.
//
// Rule file grammar (`recheck.ignore`, one rule per line):
//
//   attribute: <key>
//   element: <key>=<value>
//   element: <key>=<value>, attribute: <key>
//   pixel-diff: <non-negative integer>
//   # comment
//
// Element matchers select on `id`, `type` or `path` with exact matching.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "agsdiff/ags.hpp"

namespace agsdiff {

enum class RuleKind {
  kIgnoreAttributeGlobally,
  kIgnoreElement,
  kIgnoreAttributeOfElement,
  kPixelDiffThreshold,
};

struct ElementMatcher {
  std::string key;
  std::string value;

  bool matches(const AttributeSet& attributes) const;
  friend bool operator==(const ElementMatcher&, const ElementMatcher&) = default;
};

class FilterRule {
 public:
  static FilterRule ignore_attribute(std::string key);
  static FilterRule ignore_element(ElementMatcher matcher);
  static FilterRule ignore_attribute_of(ElementMatcher matcher,
                                        std::string key);
  static FilterRule pixel_diff(std::uint64_t threshold);

  RuleKind kind() const { return kind_; }
  const std::optional<std::string>& key() const { return key_; }
  const std::optional<ElementMatcher>& matcher() const { return matcher_; }
  const std::optional<std::uint64_t>& threshold() const { return threshold_; }

  // The rule as one line of the rule file (no trailing newline).
  std::string to_line() const;

  friend bool operator==(const FilterRule&, const FilterRule&) = default;

 private:
  RuleKind kind_ = RuleKind::kIgnoreAttributeGlobally;
  std::optional<std::string> key_;
  std::optional<ElementMatcher> matcher_;
  std::optional<std::uint64_t> threshold_;
};

class FilterRuleSet {
 public:
  FilterRuleSet() = default;
  explicit FilterRuleSet(std::vector<FilterRule> rules);

  const std::vector<FilterRule>& rules() const { return rules_; }
  bool empty() const { return rules_.empty(); }

  // The effective pixel threshold: the last pixel-diff rule wins.
  std::optional<std::uint64_t> pixel_threshold() const;

  void add(FilterRule rule);
  std::string to_text() const;

 private:
  std::vector<FilterRule> rules_;
};

// Throws RuleParseError with the 1-based line and the offending token.
FilterRuleSet parse_rules(std::string_view text);
FilterRuleSet load_rules(const std::string& path);

// Removes every element matched by an ignore-element rule (with its subtree)
// and every attribute matched by an attribute rule. Matchers are evaluated on
// the unfiltered attributes of each element.
GuiState apply_state_filter(const GuiState& state, const FilterRuleSet& rules);

// Keys eligible for pixel thresholding.
bool is_positional_key(std::string_view key);

// True iff `key` is positional, both values are decimal integers, a pixel
// rule exists and |expected - actual| <= threshold.
bool suppress_difference(std::string_view key, std::string_view expected,
                         std::string_view actual, const FilterRuleSet& rules);

}  // namespace agsdiff
