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

#include <cmath>

#include "agsdiff/similarity.hpp"
#include "gen.hpp"
#include "jw_pairs.hpp"
#include "oracles.hpp"

namespace agsdiff {
namespace {

TEST(JaroWinkler, LoginSignin) {
  const double v = jaro_winkler("login", "signin");
  EXPECT_GE(v, 0.584);
  EXPECT_LE(v, 0.594);
  EXPECT_EQ(std::round(v * 100) / 100, 0.59);
}

TEST(JaroWinkler, EdgeCases) {
  EXPECT_EQ(jaro_winkler("login", "login"), 1.0);
  EXPECT_EQ(jaro_winkler("abc", ""), 0.0);
  EXPECT_EQ(jaro_winkler("", "abc"), 0.0);
  EXPECT_EQ(jaro_winkler("", ""), 1.0);
  EXPECT_EQ(jaro("", ""), 1.0);
}

TEST(JaroWinkler, FrozenValues) {
  for (const auto& p : testing::kJwPairs) {
    EXPECT_NEAR(jaro_winkler(p.a, p.b), p.expected, 1e-12) << p.a << " / " << p.b;
  }
}

TEST(JaroWinkler, MatchesReference) {
  for (const auto& p : testing::kJwPairs) {
    EXPECT_NEAR(jaro_winkler(p.a, p.b), testing::reference_jaro_winkler(p.a, p.b), 1e-9)
        << p.a << " / " << p.b;
  }
  testing::Gen gen(41);
  for (int i = 0; i < 5000; ++i) {
    auto a = gen.word(12, "abcde");
    auto b = gen.chance(20) ? a : gen.word(12, "abcde");
    EXPECT_NEAR(jaro_winkler(a, b), testing::reference_jaro_winkler(a, b), 1e-9) << a << " / " << b;
  }
}

TEST(JaroWinkler, SymmetricAndBounded) {
  testing::Gen gen(42);
  for (int i = 0; i < 5000; ++i) {
    auto a = gen.word(10, "abc");
    auto b = gen.word(10, "abc");
    const double ab = jaro_winkler(a, b);
    EXPECT_EQ(ab, jaro_winkler(b, a)) << a << " / " << b;
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
    EXPECT_GE(ab, jaro(a, b));
  }
}

}  // namespace
}  // namespace agsdiff
