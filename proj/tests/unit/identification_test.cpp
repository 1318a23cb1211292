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

#include <map>

#include "agsdiff/errors.hpp"
#include "agsdiff/identification.hpp"
#include "assignment_check.hpp"
#include "examples.hpp"
#include "gen.hpp"

namespace agsdiff {
namespace {

using testing::flat;

constexpr Strategy kStrategies[] = {Strategy::kStrongWeak, Strategy::kKeyTests, Strategy::kMatching};

ExtractedElement extracted(const Element& e, std::size_t index) { return {e.attributes, "@" + std::to_string(index), index}; }

TEST(Extract, FlattensPreOrder) {
  GuiState g{{Element{AttributeSet{{"n", "0"}},
                      {Element{AttributeSet{{"n", "1"}}, {Element{AttributeSet{{"n", "2"}, {"path", "/p"}}, {}}}}}}}};
  auto out = extract(g);
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0].handle, "@0");
  EXPECT_EQ(out[2].handle, "/p");
  EXPECT_EQ(out[2].index, 2u);
  EXPECT_TRUE(extract(GuiState{}).empty());
}

TEST(Extract, CountMatchesNodeCount) {
  testing::Gen gen(51);
  for (int i = 0; i < 200; ++i) {
    auto g = gen.state();
    EXPECT_EQ(extract(g).size(), node_count(g));
  }
}

TEST(KeyConfig, DefaultsAndValidation) {
  auto cfg = KeyConfig::defaults();
  EXPECT_EQ(cfg.strong_keys, (std::set<std::string>{"id", "path"}));
  EXPECT_EQ(cfg.weak_keys, (std::set<std::string>{"height", "type", "width", "x", "y"}));
  EXPECT_EQ(cfg.matching_extra_keys, (std::set<std::string>{"class", "id", "name", "text"}));
  EXPECT_EQ(cfg.t, 0.9);
  EXPECT_EQ(cfg.u, 0.3);
  EXPECT_EQ(cfg.scoring_keys().size(), 10u);
  cfg.validate();

  auto overlap = cfg;
  overlap.weak_keys.insert("id");
  EXPECT_THROW(overlap.validate(), ConfigError);
  auto bad_t = cfg;
  bad_t.t = 1.5;
  EXPECT_THROW(bad_t.validate(), ConfigError);
  auto bad_u = cfg;
  bad_u.u = -0.1;
  EXPECT_THROW(bad_u.validate(), ConfigError);

  EXPECT_THROW(match_score(flat({}), flat({}), KeyConfig{}), EmptyKeyConfig);
  EXPECT_EQ(parse_strategy("key-tests"), Strategy::kKeyTests);
  EXPECT_THROW(parse_strategy("fuzzy"), ConfigError);
}

TEST(FairlySimilar, WorkedExampleRelations) {
  const auto cfg = testing::worked_example_keys();
  const auto e = extracted(testing::login_before(), 0);
  const auto e1 = extracted(testing::login_after(), 1);
  EXPECT_TRUE(fairly_similar_strong_weak(e, e1, cfg));
  EXPECT_TRUE(fairly_similar_key_tests(e, e1, cfg));
  EXPECT_EQ(match_score(e, e1, cfg), 1.0 / 3.0);
  EXPECT_TRUE(fairly_similar_matching(e, e1, cfg));

  const auto renamed = extracted(testing::login_after("signin"), 1);
  EXPECT_FALSE(fairly_similar_strong_weak(e, renamed, cfg));
  EXPECT_FALSE(fairly_similar_key_tests(e, renamed, cfg));
  EXPECT_EQ(match_score(e, renamed, cfg), 0.0);
  EXPECT_FALSE(fairly_similar_matching(e, renamed, cfg));
}

TEST(FairlySimilar, KeyTestsThresholdFloorAndMissingStrongKey) {
  auto cfg = testing::worked_example_keys();
  cfg.t = 0.0;
  auto a = flat({{"id", "abc"}, {"text", "1"}, {"type", "x"}});
  auto b = flat({{"id", "zzz"}, {"text", "2"}, {"type", "y"}});
  EXPECT_TRUE(fairly_similar_key_tests(a, b, cfg));
  auto no_id = flat({{"text", "2"}, {"type", "y"}});
  EXPECT_FALSE(fairly_similar_key_tests(a, no_id, cfg));
  auto missing_weak = flat({{"id", "abc"}, {"text", "1"}});
  EXPECT_FALSE(fairly_similar_key_tests(a, missing_weak, cfg));
}

TEST(FairlySimilar, MatchScoreCountsKeysMissingOnBothSidesAsZero) {
  auto cfg = testing::worked_example_keys();
  auto a = flat({{"id", "x"}});
  EXPECT_EQ(match_score(a, a, cfg), 1.0 / 3.0);
  auto full = flat({{"id", "x"}, {"text", "t"}, {"type", "b"}});
  EXPECT_EQ(match_score(full, full, cfg), 1.0);
  EXPECT_EQ(match_score(flat({}), flat({}), cfg), 0.0);
}

TEST(Identify, WorkedExample) {
  const auto cfg = testing::worked_example_keys();
  const auto e = testing::login_before();
  const auto e1 = testing::login_after();
  const auto e2 = testing::remember_checkbox();
  const GuiState g{{e, e2}};
  const GuiState g1{{e2, e1}};
  for (auto s : kStrategies) {
    auto r = identify(g, g1, s, cfg);
    EXPECT_TRUE(r.deleted.empty()) << to_string(s);
    EXPECT_TRUE(r.created.empty()) << to_string(s);
    ASSERT_EQ(r.maintained.size(), 2u) << to_string(s);
    std::map<std::string, std::string> pairs;
    for (const auto& [x, y] : r.maintained) pairs[*x.attributes.find("text")] = *y.attributes.find("text");
    EXPECT_EQ(pairs["Sign in"], "Log in") << to_string(s);
    EXPECT_EQ(pairs["Remember Me"], "Remember Me") << to_string(s);
  }

  const GuiState renamed{{e2, testing::login_after("signin")}};
  for (auto s : kStrategies) {
    auto r = identify(g, renamed, s, cfg);
    ASSERT_EQ(r.deleted.size(), 1u) << to_string(s);
    ASSERT_EQ(r.created.size(), 1u) << to_string(s);
    ASSERT_EQ(r.maintained.size(), 1u) << to_string(s);
    EXPECT_EQ(r.deleted[0].attributes, e.attributes);
    EXPECT_EQ(*r.created[0].attributes.find("id"), "signin");
    EXPECT_EQ(r.maintained[0].first.attributes, e2.attributes);
    EXPECT_EQ(r.maintained[0].second.attributes, e2.attributes);
  }
}

TEST(Identify, PartitionAndInjectivity) {
  testing::Gen gen(52);
  KeyConfig cfg;
  cfg.strong_keys = {"a"};
  cfg.weak_keys = {"b", "c"};
  cfg.matching_extra_keys = {"d"};
  for (int i = 0; i < 300; ++i) {
    auto g = gen.state(30);
    auto g1 = gen.perturb(gen.chance(50) ? g : gen.state(30));
    for (auto s : kStrategies) {
      auto r = identify(g, g1, s, cfg);
      EXPECT_EQ(r.deleted.size() + r.maintained.size(), node_count(g));
      EXPECT_EQ(r.created.size() + r.maintained.size(), node_count(g1));
      std::set<std::size_t> left, right;
      for (const auto& [x, y] : r.maintained) {
        EXPECT_TRUE(left.insert(x.index).second);
        EXPECT_TRUE(right.insert(y.index).second);
        EXPECT_TRUE(fairly_similar(s, x, y, cfg));
      }
      for (const auto& d : r.deleted) EXPECT_FALSE(left.count(d.index));
      for (const auto& c : r.created) EXPECT_FALSE(right.count(c.index));
      EXPECT_EQ(identify(g, g1, s, cfg), r);
    }
  }
}

TEST(Identify, SelfIdentification) {
  testing::Gen gen(53);
  KeyConfig cfg;
  cfg.strong_keys = {"a"};
  cfg.weak_keys = {"b"};
  cfg.matching_extra_keys = {"c"};
  for (int i = 0; i < 200; ++i) {
    GuiState g;
    std::size_t budget = 1 + gen.below(40);
    while (budget > 0) {
      Element e;
      e.attributes = gen.attributes({"a", "b", "c"}, 100);
      --budget;
      g.roots.push_back(e);
    }
    for (auto s : kStrategies) {
      auto r = identify(g, g, s, cfg);
      EXPECT_TRUE(r.deleted.empty());
      EXPECT_TRUE(r.created.empty());
      EXPECT_EQ(r.maintained.size(), node_count(g));
    }
  }
}

// ≈1 on elements carrying every configured key.
TEST(StrongWeak, EquivalenceLaws) {
  testing::Gen gen(54);
  KeyConfig cfg;
  cfg.strong_keys = {"s1", "s2"};
  cfg.weak_keys = {"w1", "w2"};
  const std::vector<std::string> keys{"s1", "s2", "w1", "w2"};
  int transitive_cases = 0;
  for (int i = 0; i < 2000; ++i) {
    auto make = [&] {
      auto attrs = gen.attributes(keys, 100, 1).items();
      if (gen.chance(50)) attrs.push_back({"other", gen.word()});
      return flat(attrs);
    };
    auto a = make(), b = make(), c = make();
    EXPECT_TRUE(fairly_similar_strong_weak(a, a, cfg));
    EXPECT_EQ(fairly_similar_strong_weak(a, b, cfg), fairly_similar_strong_weak(b, a, cfg));
    if (fairly_similar_strong_weak(a, b, cfg) && fairly_similar_strong_weak(b, c, cfg)) {
      ++transitive_cases;
      EXPECT_TRUE(fairly_similar_strong_weak(a, c, cfg));
    }
  }
  EXPECT_GT(transitive_cases, 50);
}

TEST(StrongWeak, MaintainedPairsStayStable) {
  testing::Gen gen(55);
  KeyConfig cfg;
  cfg.strong_keys = {"a"};
  cfg.weak_keys = {"b", "c"};
  const std::vector<std::string> keys{"a", "b", "c"};
  auto all_keys_state = [&] {
    GuiState g;
    const auto n = 1 + gen.below(12);
    for (std::uint64_t i = 0; i < n; ++i) {
      g.roots.push_back(Element{gen.attributes(keys, 100, 1), {}});
    }
    return canonicalize(g);
  };
  int chained = 0;
  for (int i = 0; i < 500; ++i) {
    auto g = all_keys_state(), g1 = all_keys_state(), g2 = all_keys_state();
    auto m01 = identify(g, g1, Strategy::kStrongWeak, cfg).maintained;
    auto m12 = identify(g1, g2, Strategy::kStrongWeak, cfg).maintained;
    auto m02 = identify(g, g2, Strategy::kStrongWeak, cfg).maintained;
    for (const auto& [e, e1] : m01) {
      for (const auto& [x, e2] : m12) {
        if (x.index != e1.index) continue;
        ++chained;
        EXPECT_TRUE(fairly_similar_strong_weak(e, e2, cfg));
      }
      for (const auto& [y, e2] : m02) {
        if (y.index != e.index) continue;
        EXPECT_TRUE(fairly_similar_strong_weak(e1, e2, cfg));
      }
    }
  }
  EXPECT_GT(chained, 100);
}

TEST(Matching, GreedyAgainstExhaustive) {
  testing::Gen gen(56);
  KeyConfig cfg;
  cfg.strong_keys = {"a", "b"};
  cfg.weak_keys = {"c", "d"};
  cfg.matching_extra_keys = {"e", "f"};
  const std::vector<std::string> keys{"a", "b", "c", "d", "e", "f"};
  int optimal = 0;
  for (int i = 0; i < 500; ++i) {
    auto ex = testing::random_elements(gen, 6, keys, "/e");
    auto ac = testing::random_elements(gen, 6, keys, "/a");
    auto check = testing::check_assignment(ex, ac, cfg);
    EXPECT_TRUE(check.same_as_naive);
    EXPECT_FALSE(check.blocking_pair);
    EXPECT_GE(check.greedy_total * 2 + 1e-9, check.optimum);
    EXPECT_LE(check.greedy_total, check.optimum + 1e-9);
    if (std::abs(check.greedy_total - check.optimum) < 1e-9) {
      ++optimal;
    } else {
      EXPECT_TRUE(check.has_tie);
    }
  }
  EXPECT_GT(optimal, 250);
}

TEST(Matching, TieBreakByHandle) {
  KeyConfig cfg;
  cfg.strong_keys = {"id"};
  std::vector<ExtractedElement> ex{flat({{"id", "x"}}, "/b", 0), flat({{"id", "x"}}, "/a", 1)};
  std::vector<ExtractedElement> ac{flat({{"id", "x"}}, "/d", 0), flat({{"id", "x"}}, "/c", 1)};
  auto r = identify(ex, ac, Strategy::kMatching, cfg);
  ASSERT_EQ(r.maintained.size(), 2u);
  std::map<std::string, std::string> pairs;
  for (const auto& [x, y] : r.maintained) pairs[x.handle] = y.handle;
  EXPECT_EQ(pairs["/a"], "/c");
  EXPECT_EQ(pairs["/b"], "/d");
}

TEST(Matching, LargeInstanceMatchesNaiveGreedy) {
  testing::Gen gen(57);
  KeyConfig cfg;
  cfg.strong_keys = {"a"};
  cfg.weak_keys = {"b"};
  cfg.u = 0.0;
  // Few distinct values force long equal-score candidate lists.
  for (int i = 0; i < 5; ++i) {
    auto ex = testing::random_elements(gen, 300, {"a", "b"}, "/e");
    auto ac = testing::random_elements(gen, 300, {"a", "b"}, "/a");
    EXPECT_TRUE(testing::check_assignment(ex, ac, cfg).same_as_naive);
  }
}

TEST(FirstFit, KeyBasedStrategiesTakeFirstCandidate) {
  KeyConfig cfg;
  cfg.strong_keys = {"id"};
  cfg.weak_keys = {"type"};
  std::vector<ExtractedElement> ex{flat({{"id", "x"}, {"type", "a"}}, "/e0", 0)};
  std::vector<ExtractedElement> ac{flat({{"id", "y"}, {"type", "a"}}, "/a0", 0),
                                   flat({{"id", "x"}, {"type", "b"}}, "/a1", 1),
                                   flat({{"id", "x"}, {"type", "c"}}, "/a2", 2)};
  auto r = identify(ex, ac, Strategy::kStrongWeak, cfg);
  ASSERT_EQ(r.maintained.size(), 1u);
  EXPECT_EQ(r.maintained[0].second.handle, "/a1");
  EXPECT_EQ(r.created.size(), 2u);
}

}  // namespace
}  // namespace agsdiff
