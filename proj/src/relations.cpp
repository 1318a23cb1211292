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

#include "agsdiff/relations.hpp"

#include <algorithm>

#include "agsdiff/errors.hpp"

namespace agsdiff {

using nlohmann::json;

namespace {

std::vector<Attribute> sorted_copy(const AttributeSet& attributes) {
  std::vector<Attribute> items = attributes.items();
  if (!attributes.is_sorted()) {
    std::sort(items.begin(), items.end(),
              [](const Attribute& a, const Attribute& b) { return a.key < b.key; });
  }
  return items;
}

// As-Eq: equal as sets of key/value pairs.
bool attributes_equal(const AttributeSet& expected, const AttributeSet& actual) {
  if (expected.size() != actual.size()) return false;
  if (expected.is_sorted() && actual.is_sorted()) {
    return expected.items() == actual.items();
  }
  return sorted_copy(expected) == sorted_copy(actual);
}

bool elements_equal(const Element& expected, const Element& actual);

// Es-Eq1 / Es-Eq2.
bool lists_equal(const std::vector<Element>& expected,
                 const std::vector<Element>& actual) {
  if (expected.size() != actual.size()) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (!elements_equal(expected[i], actual[i])) return false;
  }
  return true;
}

// E-Eq.
bool elements_equal(const Element& expected, const Element& actual) {
  return attributes_equal(expected.attributes, actual.attributes) &&
         lists_equal(expected.children, actual.children);
}

InequalityProof leaf(ProofKind kind) {
  InequalityProof p;
  p.kind = kind;
  return p;
}

void list_premises(const std::vector<Element>& expected,
                   const std::vector<Element>& actual,
                   const FilterRuleSet& rules,
                   std::vector<InequalityProof>& out);

// Premises of E-Ineq: attribute leaves followed by child list premises.
std::vector<InequalityProof> element_premises(const Element& expected,
                                              const Element& actual,
                                              const FilterRuleSet& rules) {
  auto premises =
      attribute_inequality_leaves(expected.attributes, actual.attributes, rules);
  list_premises(expected.children, actual.children, rules, premises);
  return premises;
}

// Premises of Es-Ineq over the common prefix plus a length leaf.
void list_premises(const std::vector<Element>& expected,
                   const std::vector<Element>& actual,
                   const FilterRuleSet& rules,
                   std::vector<InequalityProof>& out) {
  auto common = std::min(expected.size(), actual.size());
  for (std::size_t i = 0; i < common; ++i) {
    auto premises = element_premises(expected[i], actual[i], rules);
    if (premises.empty()) continue;
    InequalityProof node = leaf(ProofKind::kChildInequalAtIndex);
    node.index = i;
    node.children = std::move(premises);
    out.push_back(std::move(node));
  }
  if (expected.size() != actual.size()) {
    InequalityProof node = leaf(ProofKind::kListLengthMismatch);
    node.expected_value = std::to_string(expected.size());
    node.actual_value = std::to_string(actual.size());
    out.push_back(std::move(node));
  }
}

void collect_leaves(const InequalityProof& proof,
                    std::vector<const InequalityProof*>& out) {
  if (proof.is_leaf()) {
    out.push_back(&proof);
    return;
  }
  for (const auto& child : proof.children) collect_leaves(child, out);
}

}  // namespace

const char* to_string(ProofKind kind) {
  switch (kind) {
    case ProofKind::kElementsInequal:
      return "elements-inequal";
    case ProofKind::kElementInequal:
      return "element-inequal";
    case ProofKind::kChildInequalAtIndex:
      return "child-inequal-at-index";
    case ProofKind::kListLengthMismatch:
      return "list-length-mismatch";
    case ProofKind::kAttributeValueDiff:
      return "attribute-value-diff";
    case ProofKind::kAttributeOnlyExpected:
      return "attribute-only-expected";
    case ProofKind::kAttributeOnlyActual:
      return "attribute-only-actual";
  }
  return "unknown";
}

std::vector<const InequalityProof*> proof_leaves(const InequalityProof& proof) {
  std::vector<const InequalityProof*> out;
  collect_leaves(proof, out);
  return out;
}

json proof_to_json(const InequalityProof& proof) {
  json out = {{"kind", to_string(proof.kind)}};
  if (proof.index) out["index"] = *proof.index;
  if (proof.key) out["key"] = *proof.key;
  if (proof.expected_value) out["expected"] = *proof.expected_value;
  if (proof.actual_value) out["actual"] = *proof.actual_value;
  if (!proof.children.empty()) {
    json children = json::array();
    for (const auto& c : proof.children) children.push_back(proof_to_json(c));
    out["children"] = std::move(children);
  }
  return out;
}

bool derive_equality(const GuiState& expected, const GuiState& actual) {
  require_well_formed(expected);
  require_well_formed(actual);
  return lists_equal(expected.roots, actual.roots);
}

bool derive_element_equality(const Element& expected, const Element& actual) {
  require_well_formed(expected);
  require_well_formed(actual);
  return elements_equal(expected, actual);
}

std::vector<InequalityProof> attribute_inequality_leaves(
    const AttributeSet& expected, const AttributeSet& actual,
    const FilterRuleSet& rules) {
  auto lhs = sorted_copy(expected);
  auto rhs = sorted_copy(actual);
  std::vector<InequalityProof> out;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < lhs.size() || j < rhs.size()) {
    if (j == rhs.size() || (i < lhs.size() && lhs[i].key < rhs[j].key)) {
      auto p = leaf(ProofKind::kAttributeOnlyExpected);
      p.key = lhs[i].key;
      p.expected_value = lhs[i].value;
      out.push_back(std::move(p));
      ++i;
    } else if (i == lhs.size() || rhs[j].key < lhs[i].key) {
      auto p = leaf(ProofKind::kAttributeOnlyActual);
      p.key = rhs[j].key;
      p.actual_value = rhs[j].value;
      out.push_back(std::move(p));
      ++j;
    } else {
      // A-Ineq: equal keys, different values.
      if (lhs[i].value != rhs[j].value &&
          !suppress_difference(lhs[i].key, lhs[i].value, rhs[j].value, rules)) {
        auto p = leaf(ProofKind::kAttributeValueDiff);
        p.key = lhs[i].key;
        p.expected_value = lhs[i].value;
        p.actual_value = rhs[j].value;
        out.push_back(std::move(p));
      }
      ++i;
      ++j;
    }
  }
  return out;
}

std::optional<InequalityProof> derive_inequality(const GuiState& expected,
                                                 const GuiState& actual,
                                                 const FilterRuleSet& rules) {
  require_well_formed(expected);
  require_well_formed(actual);
  InequalityProof root = leaf(ProofKind::kElementsInequal);
  list_premises(expected.roots, actual.roots, rules, root.children);
  if (root.children.empty()) return std::nullopt;
  return root;
}

std::optional<InequalityProof> derive_element_inequality(
    const Element& expected, const Element& actual,
    const FilterRuleSet& rules) {
  require_well_formed(expected);
  require_well_formed(actual);
  InequalityProof root = leaf(ProofKind::kElementInequal);
  root.children = element_premises(expected, actual, rules);
  if (root.children.empty()) return std::nullopt;
  return root;
}

}  // namespace agsdiff
