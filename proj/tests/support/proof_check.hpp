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

// Reference equality and an independent checker for inequality proofs.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "agsdiff/relations.hpp"

namespace agsdiff::testing {

// Structural equality with attributes compared as maps.
inline std::map<std::string, std::string> as_map(const AttributeSet& s) {
  std::map<std::string, std::string> m;
  for (const auto& a : s) m.emplace(a.key, a.value);
  return m;
}

inline bool oracle_equal(const std::vector<Element>& a, const std::vector<Element>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (as_map(a[i].attributes) != as_map(b[i].attributes)) return false;
    if (!oracle_equal(a[i].children, b[i].children)) return false;
  }
  return true;
}

// Every node of the proof must state a true fact about the inputs. Returns
// the first problem, empty when the proof checks.
std::string check_list(const std::vector<InequalityProof>& premises, const std::vector<Element>& a,
                       const std::vector<Element>& b);

inline std::string check_element(const std::vector<InequalityProof>& premises, const Element& a,
                                 const Element& b) {
  std::vector<InequalityProof> list_part;
  const auto ma = as_map(a.attributes);
  const auto mb = as_map(b.attributes);
  for (const auto& p : premises) {
    switch (p.kind) {
      case ProofKind::kAttributeValueDiff: {
        auto ia = ma.find(*p.key);
        auto ib = mb.find(*p.key);
        if (ia == ma.end() || ib == mb.end() || ia->second == ib->second ||
            ia->second != *p.expected_value || ib->second != *p.actual_value) {
          return "bad value diff on " + *p.key;
        }
        break;
      }
      case ProofKind::kAttributeOnlyExpected:
        if (!ma.count(*p.key) || mb.count(*p.key)) return "bad only-expected " + *p.key;
        break;
      case ProofKind::kAttributeOnlyActual:
        if (ma.count(*p.key) || !mb.count(*p.key)) return "bad only-actual " + *p.key;
        break;
      default:
        list_part.push_back(p);
    }
  }
  return check_list(list_part, a.children, b.children);
}

inline std::string check_list(const std::vector<InequalityProof>& premises, const std::vector<Element>& a,
                              const std::vector<Element>& b) {
  for (const auto& p : premises) {
    if (p.kind == ProofKind::kListLengthMismatch) {
      if (a.size() == b.size() || *p.expected_value != std::to_string(a.size()) ||
          *p.actual_value != std::to_string(b.size())) {
        return "bad length leaf";
      }
    } else if (p.kind == ProofKind::kChildInequalAtIndex) {
      const auto i = *p.index;
      if (i >= a.size() || i >= b.size()) return "index out of range";
      if (p.children.empty()) return "empty premise";
      if (auto r = check_element(p.children, a[i], b[i]); !r.empty()) return r;
    } else {
      return std::string("unexpected ") + to_string(p.kind);
    }
  }
  return "";
}

inline GuiState shuffled_attributes(GuiState g, std::mt19937_64& rng) {
  std::function<void(std::vector<Element>&)> walk = [&](std::vector<Element>& list) {
    for (auto& e : list) {
      auto items = e.attributes.items();
      std::shuffle(items.begin(), items.end(), rng);
      e.attributes = AttributeSet(items);
      walk(e.children);
    }
  };
  walk(g.roots);
  return g;
}

}  // namespace agsdiff::testing
