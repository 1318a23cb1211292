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

// Equality and inequality judgements between an expected and an actual state.
//
// Equality holds when element lists have equal length and are positionwise
// equal and attribute sets are equal as sets of key/value pairs. Inequality
// produces a proof tree whose leaves say exactly why equality fails. For
// well-formed inputs exactly one of the two holds.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "agsdiff/ags.hpp"
#include "agsdiff/filter_rules.hpp"
#include "json.hpp"

namespace agsdiff {

enum class ProofKind {
  // Interior nodes.
  kElementsInequal,      // two element lists differ (root of a state proof)
  kElementInequal,       // two elements differ (root of an element proof)
  kChildInequalAtIndex,  // the elements at `index` of both lists differ
  // Leaves.
  kListLengthMismatch,   // expected_value / actual_value hold the lengths
  kAttributeValueDiff,
  kAttributeOnlyExpected,
  kAttributeOnlyActual,
};

const char* to_string(ProofKind kind);

struct InequalityProof {
  ProofKind kind = ProofKind::kElementsInequal;
  std::optional<std::size_t> index;
  std::optional<std::string> key;
  std::optional<std::string> expected_value;
  std::optional<std::string> actual_value;
  std::vector<InequalityProof> children;

  bool is_leaf() const { return children.empty(); }
  friend bool operator==(const InequalityProof&,
                         const InequalityProof&) = default;
};

// Collects the leaves of `proof` in depth-first order.
std::vector<const InequalityProof*> proof_leaves(const InequalityProof& proof);

nlohmann::json proof_to_json(const InequalityProof& proof);

// Throws WellFormednessViolation for malformed input.
bool derive_equality(const GuiState& expected, const GuiState& actual);
bool derive_element_equality(const Element& expected, const Element& actual);

// The inequality proof, or nullopt when the states are equal. Positional
// value differences suppressed by `rules` are dropped; a proof left without
// leaves collapses to nullopt. Unequal list lengths still compare the common
// prefix pairwise before recording the mismatch.
std::optional<InequalityProof> derive_inequality(
    const GuiState& expected, const GuiState& actual,
    const FilterRuleSet& rules = {});

std::optional<InequalityProof> derive_element_inequality(
    const Element& expected, const Element& actual,
    const FilterRuleSet& rules = {});

// Attribute-level part of the element judgement: one leaf per differing key,
// in ascending key order.
std::vector<InequalityProof> attribute_inequality_leaves(
    const AttributeSet& expected, const AttributeSet& actual,
    const FilterRuleSet& rules = {});

}  // namespace agsdiff
