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

// Greedy matching assignment versus exhaustive and naive references.

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "agsdiff/identification.hpp"
#include "gen.hpp"
#include "oracles.hpp"

namespace agsdiff::testing {

struct AssignmentCheck {
  double greedy_total = 0.0;
  double optimum = 0.0;  // only computed for at most 8 x 8 elements
  bool has_tie = false;        // two eligible pairs with the same score
  bool same_as_naive = false;  // pairs equal to the sort-everything greedy
  bool blocking_pair = false;  // a pair both sides would rather have
};

inline AssignmentCheck check_assignment(const std::vector<ExtractedElement>& expected,
                                        const std::vector<ExtractedElement>& actual,
                                        const KeyConfig& cfg) {
  AssignmentCheck out;
  const auto result = identify(expected, actual, Strategy::kMatching, cfg);

  std::vector<std::vector<double>> score(expected.size(), std::vector<double>(actual.size()));
  std::vector<std::tuple<double, std::size_t, std::size_t>> eligible;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    for (std::size_t j = 0; j < actual.size(); ++j) {
      score[i][j] = match_score(expected[i], actual[j], cfg);
      if (score[i][j] >= cfg.u) eligible.emplace_back(score[i][j], i, j);
    }
  }
  if (expected.size() <= 8 && actual.size() <= 8) out.optimum = exhaustive_max_assignment(score, cfg.u);

  std::set<double> seen;
  for (const auto& [s, i, j] : eligible) {
    if (!seen.insert(s).second) out.has_tie = true;
  }

  std::map<std::string, std::size_t> e_index, a_index;
  for (std::size_t i = 0; i < expected.size(); ++i) e_index[expected[i].handle] = i;
  for (std::size_t j = 0; j < actual.size(); ++j) a_index[actual[j].handle] = j;
  std::vector<std::pair<std::size_t, std::size_t>> got;
  std::vector<double> e_best(expected.size(), 0.0), a_best(actual.size(), 0.0);
  for (const auto& [e, a] : result.maintained) {
    const auto i = e_index.at(e.handle);
    const auto j = a_index.at(a.handle);
    got.emplace_back(i, j);
    out.greedy_total += score[i][j];
    e_best[i] = a_best[j] = score[i][j];
  }

  // Naive greedy: sort every eligible pair once, take what is still free.
  std::sort(eligible.begin(), eligible.end(), [&](const auto& x, const auto& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) > std::get<0>(y);
    const auto& ex = expected[std::get<1>(x)].handle;
    const auto& ey = expected[std::get<1>(y)].handle;
    if (ex != ey) return ex < ey;
    return actual[std::get<2>(x)].handle < actual[std::get<2>(y)].handle;
  });
  std::vector<char> e_used(expected.size(), 0), a_used(actual.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> naive;
  for (const auto& [s, i, j] : eligible) {
    if (e_used[i] || a_used[j]) continue;
    e_used[i] = a_used[j] = 1;
    naive.emplace_back(i, j);
  }
  std::sort(got.begin(), got.end());
  std::sort(naive.begin(), naive.end());
  out.same_as_naive = got == naive;

  for (const auto& [s, i, j] : eligible) {
    if (s > e_best[i] && s > a_best[j]) out.blocking_pair = true;
  }
  return out;
}

// Random extracted elements for assignment instances.
inline std::vector<ExtractedElement> random_elements(Gen& gen, std::size_t max_count,
                                                     const std::vector<std::string>& keys,
                                                     const char* prefix) {
  std::vector<ExtractedElement> out;
  const auto n = gen.below(max_count + 1);
  for (std::size_t i = 0; i < n; ++i) {
    auto attrs = gen.attributes(keys, 70, 1).items();
    out.push_back(flat(attrs, std::string(prefix) + std::to_string(i), i));
  }
  return out;
}

}  // namespace agsdiff::testing
