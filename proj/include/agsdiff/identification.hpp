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

// GUI element identification: partition the elements of an expected and an
// actual state into deleted (D), created (C) and maintained pairs (M) using a
// configurable "fairly similar" relation.

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agsdiff/ags.hpp"

namespace agsdiff {

// A flattened element (children dropped) with a stable handle.
struct ExtractedElement {
  AttributeSet attributes;
  // Value of the `path` attribute, or "@<pre-order index>" when absent.
  std::string handle;
  // Pre-order position within the source state.
  std::size_t index = 0;

  friend bool operator==(const ExtractedElement&,
                         const ExtractedElement&) = default;
};

enum class Strategy {
  kStrongWeak,  // strong key values equal, weak key sets equal
  kKeyTests,    // strong key values Jaro-Winkler similar, weak key sets equal
  kMatching,    // average of equal configured key values >= u
};

const char* to_string(Strategy strategy);
// Accepts "strong-weak", "key-tests", "matching". Throws ConfigError.
Strategy parse_strategy(std::string_view name);

struct KeyConfig {
  std::set<std::string> strong_keys;
  std::set<std::string> weak_keys;
  // Extra keys scored only by the matching strategy.
  std::set<std::string> matching_extra_keys;
  double t = 0.9;
  double u = 0.3;

  // Strong {id, path}, weak {type, x, y, width, height}, extra
  // {class, id, name, text}, t = 0.9, u = 0.3.
  static KeyConfig defaults();

  // Throws ConfigError when strong and weak keys overlap or a threshold lies
  // outside [0, 1].
  void validate() const;

  // strong ∪ weak ∪ extra, ascending.
  std::vector<std::string> scoring_keys() const;
};

struct IdentificationResult {
  std::vector<ExtractedElement> deleted;   // expected pre-order
  std::vector<ExtractedElement> created;   // actual pre-order
  std::vector<std::pair<ExtractedElement, ExtractedElement>> maintained;

  friend bool operator==(const IdentificationResult&,
                         const IdentificationResult&) = default;
};

// One flattened element per node, pre-order.
std::vector<ExtractedElement> extract(const GuiState& state);

bool fairly_similar_strong_weak(const ExtractedElement& expected,
                                const ExtractedElement& actual,
                                const KeyConfig& cfg);

// A strong key present on exactly one side fails the relation.
bool fairly_similar_key_tests(const ExtractedElement& expected,
                              const ExtractedElement& actual,
                              const KeyConfig& cfg);

// Fraction of scoring keys carried by both sides with equal values. Throws
// EmptyKeyConfig when there are no scoring keys.
double match_score(const ExtractedElement& expected,
                   const ExtractedElement& actual, const KeyConfig& cfg);

bool fairly_similar_matching(const ExtractedElement& expected,
                             const ExtractedElement& actual,
                             const KeyConfig& cfg);

bool fairly_similar(Strategy strategy, const ExtractedElement& expected,
                    const ExtractedElement& actual, const KeyConfig& cfg);

// For the two key-based strategies every expected element (pre-order) takes
// the first unmatched actual element (pre-order) it is fairly similar to.
// For matching, pairs with score >= u are assigned greedily best first;
// ties are broken by expected handle, then actual handle, ascending.
IdentificationResult identify(const GuiState& expected, const GuiState& actual,
                              Strategy strategy, const KeyConfig& cfg);

IdentificationResult identify(const std::vector<ExtractedElement>& expected,
                              const std::vector<ExtractedElement>& actual,
                              Strategy strategy, const KeyConfig& cfg);

}  // namespace agsdiff
