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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "agsdiff/errors.hpp"
#include "agsdiff/relations.hpp"
#include "gen.hpp"
#include "proof_check.hpp"

namespace agsdiff {
namespace {

using testing::check_list;
using testing::oracle_equal;
using testing::shuffled_attributes;

TEST(Relations, EqualityIsSetBased) {
  GuiState a{{Element{AttributeSet{{"a", "1"}, {"b", "2"}}, {}}}};
  GuiState b{{Element{AttributeSet{{"b", "2"}, {"a", "1"}}, {}}}};
  EXPECT_TRUE(derive_equality(a, b));
  EXPECT_FALSE(derive_inequality(a, b));
}

TEST(Relations, ChildOrderMatters) {
  Element x{AttributeSet{{"k", "x"}}, {}};
  Element y{AttributeSet{{"k", "y"}}, {}};
  GuiState a{{x, y}};
  GuiState b{{y, x}};
  EXPECT_FALSE(derive_equality(a, b));
  auto proof = derive_inequality(a, b);
  ASSERT_TRUE(proof);
  EXPECT_EQ(proof->kind, ProofKind::kElementsInequal);
  EXPECT_EQ(proof_leaves(*proof).size(), 2u);
}

TEST(Relations, LengthMismatchStillComparesPrefix) {
  GuiState a{{Element{AttributeSet{{"k", "1"}}, {}}}};
  GuiState b{{Element{AttributeSet{{"k", "2"}}, {}}, Element{AttributeSet{{"k", "3"}}, {}}}};
  auto proof = derive_inequality(a, b);
  ASSERT_TRUE(proof);
  auto leaves = proof_leaves(*proof);
  ASSERT_EQ(leaves.size(), 2u);
  EXPECT_EQ(leaves[0]->kind, ProofKind::kAttributeValueDiff);
  EXPECT_EQ(leaves[1]->kind, ProofKind::kListLengthMismatch);
  EXPECT_EQ(*leaves[1]->expected_value, "1");
  EXPECT_EQ(*leaves[1]->actual_value, "2");
}

TEST(Relations, LoginElementLeaves) {
  Element e{AttributeSet{{"background-color", "#047bf8"}, {"href", "/app.html"}, {"id", "login"},
                         {"text", "Sign in"}, {"type", "a"}},
            {}};
  Element e2{AttributeSet{{"background-color", "#292b2c"}, {"id", "login"}, {"onclick", "login()"},
                          {"text", "Log in"}, {"type", "button"}},
             {}};
  auto proof = derive_element_inequality(e, e2);
  ASSERT_TRUE(proof);
  EXPECT_EQ(proof->kind, ProofKind::kElementInequal);
  std::vector<std::pair<ProofKind, std::string>> got;
  for (const auto* l : proof_leaves(*proof)) got.emplace_back(l->kind, *l->key);
  std::vector<std::pair<ProofKind, std::string>> want{
      {ProofKind::kAttributeValueDiff, "background-color"},
      {ProofKind::kAttributeOnlyExpected, "href"},
      {ProofKind::kAttributeOnlyActual, "onclick"},
      {ProofKind::kAttributeValueDiff, "text"},
      {ProofKind::kAttributeValueDiff, "type"},
  };
  EXPECT_EQ(got, want);
  EXPECT_TRUE(derive_element_equality(e, e));
}

TEST(Relations, PixelRuleCollapsesProof) {
  GuiState a{{Element{AttributeSet{{"x", "10"}}, {}}}};
  GuiState b{{Element{AttributeSet{{"x", "30"}}, {}}}};
  EXPECT_FALSE(derive_inequality(a, b, parse_rules("pixel-diff: 25\n")));
  EXPECT_TRUE(derive_inequality(a, b, parse_rules("pixel-diff: 19\n")));
}

TEST(Relations, MalformedInputThrows) {
  GuiState bad{{Element{AttributeSet{{"a", "1"}, {"a", "2"}}, {}}}};
  EXPECT_THROW(derive_equality(bad, bad), WellFormednessViolation);
  EXPECT_THROW(derive_inequality(bad, bad), WellFormednessViolation);
}

TEST(Relations, SoundAgainstOracle) {
  testing::Gen gen(31);
  int unequal = 0;
  for (int i = 0; i < 1500; ++i) {
    auto a = gen.state(50, 6);
    auto b = gen.chance(30) ? a : gen.perturb(a);
    b = shuffled_attributes(b, gen.engine());
    const bool eq = derive_equality(a, b);
    const auto proof = derive_inequality(a, b);
    ASSERT_NE(eq, proof.has_value()) << serialize(a) << "\n" << serialize(canonicalize(b));
    ASSERT_EQ(eq, oracle_equal(a.roots, b.roots));
    if (proof) {
      ++unequal;
      EXPECT_EQ(check_list(proof->children, a.roots, b.roots), "");
      for (const auto* l : proof_leaves(*proof)) EXPECT_TRUE(l->is_leaf());
    }
  }
  EXPECT_GT(unequal, 300);
}

}  // namespace
}  // namespace agsdiff
