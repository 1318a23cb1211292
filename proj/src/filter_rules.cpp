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

#include "agsdiff/filter_rules.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"

namespace agsdiff {

namespace {

constexpr std::array<std::string_view, 3> kMatcherKeys = {"id", "type", "path"};
constexpr std::array<std::string_view, 4> kPositionalKeys = {"x", "y", "width",
                                                             "height"};

std::string_view trim(std::string_view s) {
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with_word(std::string_view s, std::string_view word) {
  return s.substr(0, word.size()) == word;
}

std::optional<std::int64_t> parse_decimal(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::string parse_key(std::string_view raw, std::size_t line) {
  auto key = trim(raw);
  if (key.empty()) throw RuleParseError("missing attribute key", line, "");
  if (key.find_first_of(" \t,=") != std::string_view::npos) {
    throw RuleParseError("invalid attribute key", line, std::string(key));
  }
  return std::string(key);
}

ElementMatcher parse_matcher(std::string_view raw, std::size_t line) {
  auto text = trim(raw);
  auto eq = text.find('=');
  if (eq == std::string_view::npos) {
    throw RuleParseError("element matcher must be <key>=<value>", line,
                         std::string(text));
  }
  auto key = trim(text.substr(0, eq));
  auto value = trim(text.substr(eq + 1));
  if (std::find(kMatcherKeys.begin(), kMatcherKeys.end(), key) ==
      kMatcherKeys.end()) {
    throw RuleParseError("element matcher key must be id, type or path", line,
                         std::string(key));
  }
  if (value.empty()) {
    throw RuleParseError("empty element matcher value", line,
                         std::string(text));
  }
  return ElementMatcher{std::string(key), std::string(value)};
}

FilterRule parse_line(std::string_view text, std::size_t line) {
  if (starts_with_word(text, "attribute:")) {
    return FilterRule::ignore_attribute(
        parse_key(text.substr(std::string_view("attribute:").size()), line));
  }
  if (starts_with_word(text, "pixel-diff:")) {
    auto raw = trim(text.substr(std::string_view("pixel-diff:").size()));
    std::uint64_t threshold = 0;
    auto [ptr, ec] =
        std::from_chars(raw.data(), raw.data() + raw.size(), threshold);
    if (raw.empty() || ec != std::errc() || ptr != raw.data() + raw.size()) {
      throw RuleParseError("pixel-diff expects a non-negative integer", line,
                           std::string(raw));
    }
    return FilterRule::pixel_diff(threshold);
  }
  if (starts_with_word(text, "element:")) {
    auto rest = text.substr(std::string_view("element:").size());
    auto comma = rest.find(',');
    if (comma == std::string_view::npos) {
      return FilterRule::ignore_element(parse_matcher(rest, line));
    }
    auto matcher = parse_matcher(rest.substr(0, comma), line);
    auto tail = trim(rest.substr(comma + 1));
    if (!starts_with_word(tail, "attribute:")) {
      throw RuleParseError("expected 'attribute:' after element matcher", line,
                           std::string(tail));
    }
    return FilterRule::ignore_attribute_of(
        std::move(matcher),
        parse_key(tail.substr(std::string_view("attribute:").size()), line));
  }
  auto colon = text.find(':');
  throw RuleParseError("unknown rule", line,
                       std::string(text.substr(0, colon)));
}

bool element_removed(const AttributeSet& attributes,
                     const FilterRuleSet& rules) {
  return std::any_of(rules.rules().begin(), rules.rules().end(),
                     [&](const FilterRule& r) {
                       return r.kind() == RuleKind::kIgnoreElement &&
                              r.matcher()->matches(attributes);
                     });
}

AttributeSet filter_attributes(const AttributeSet& attributes,
                               const FilterRuleSet& rules) {
  std::vector<Attribute> kept;
  kept.reserve(attributes.size());
  for (const auto& a : attributes) {
    bool drop = false;
    for (const auto& r : rules.rules()) {
      if (r.kind() == RuleKind::kIgnoreAttributeGlobally && *r.key() == a.key) {
        drop = true;
      } else if (r.kind() == RuleKind::kIgnoreAttributeOfElement &&
                 *r.key() == a.key && r.matcher()->matches(attributes)) {
        drop = true;
      }
      if (drop) break;
    }
    if (!drop) kept.push_back(a);
  }
  return AttributeSet(std::move(kept));
}

void filter_children(const std::vector<Element>& in, std::vector<Element>& out,
                     const FilterRuleSet& rules) {
  out.reserve(in.size());
  for (const auto& element : in) {
    if (element_removed(element.attributes, rules)) continue;
    Element kept;
    kept.attributes = filter_attributes(element.attributes, rules);
    filter_children(element.children, kept.children, rules);
    out.push_back(std::move(kept));
  }
}

}  // namespace

bool ElementMatcher::matches(const AttributeSet& attributes) const {
  const auto* v = attributes.find(key);
  return v != nullptr && *v == value;
}

FilterRule FilterRule::ignore_attribute(std::string key) {
  FilterRule r;
  r.kind_ = RuleKind::kIgnoreAttributeGlobally;
  r.key_ = std::move(key);
  return r;
}

FilterRule FilterRule::ignore_element(ElementMatcher matcher) {
  FilterRule r;
  r.kind_ = RuleKind::kIgnoreElement;
  r.matcher_ = std::move(matcher);
  return r;
}

FilterRule FilterRule::ignore_attribute_of(ElementMatcher matcher,
                                           std::string key) {
  FilterRule r;
  r.kind_ = RuleKind::kIgnoreAttributeOfElement;
  r.matcher_ = std::move(matcher);
  r.key_ = std::move(key);
  return r;
}

FilterRule FilterRule::pixel_diff(std::uint64_t threshold) {
  FilterRule r;
  r.kind_ = RuleKind::kPixelDiffThreshold;
  r.threshold_ = threshold;
  return r;
}

std::string FilterRule::to_line() const {
  switch (kind_) {
    case RuleKind::kIgnoreAttributeGlobally:
      return "attribute: " + *key_;
    case RuleKind::kIgnoreElement:
      return "element: " + matcher_->key + "=" + matcher_->value;
    case RuleKind::kIgnoreAttributeOfElement:
      return "element: " + matcher_->key + "=" + matcher_->value +
             ", attribute: " + *key_;
    case RuleKind::kPixelDiffThreshold:
      return "pixel-diff: " + std::to_string(*threshold_);
  }
  return {};
}

FilterRuleSet::FilterRuleSet(std::vector<FilterRule> rules)
    : rules_(std::move(rules)) {}

std::optional<std::uint64_t> FilterRuleSet::pixel_threshold() const {
  for (auto it = rules_.rbegin(); it != rules_.rend(); ++it) {
    if (it->kind() == RuleKind::kPixelDiffThreshold) return it->threshold();
  }
  return std::nullopt;
}

void FilterRuleSet::add(FilterRule rule) { rules_.push_back(std::move(rule)); }

std::string FilterRuleSet::to_text() const {
  std::string out;
  for (const auto& r : rules_) out += r.to_line() + "\n";
  return out;
}

FilterRuleSet parse_rules(std::string_view text) {
  std::vector<FilterRule> rules;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    auto line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    rules.push_back(parse_line(line, line_no));
  }
  return FilterRuleSet(std::move(rules));
}

FilterRuleSet load_rules(const std::string& path) {
  return parse_rules(read_file(path));
}

GuiState apply_state_filter(const GuiState& state, const FilterRuleSet& rules) {
  if (rules.empty()) return state;
  GuiState out;
  filter_children(state.roots, out.roots, rules);
  return out;
}

bool is_positional_key(std::string_view key) {
  return std::find(kPositionalKeys.begin(), kPositionalKeys.end(), key) !=
         kPositionalKeys.end();
}

bool suppress_difference(std::string_view key, std::string_view expected,
                         std::string_view actual, const FilterRuleSet& rules) {
  if (!is_positional_key(key)) return false;
  auto threshold = rules.pixel_threshold();
  if (!threshold) return false;
  auto e = parse_decimal(expected);
  auto a = parse_decimal(actual);
  if (!e || !a) return false;
  auto delta = *e > *a ? static_cast<std::uint64_t>(*e) -
                             static_cast<std::uint64_t>(*a)
                       : static_cast<std::uint64_t>(*a) -
                             static_cast<std::uint64_t>(*e);
  return delta <= *threshold;
}

}  // namespace agsdiff
