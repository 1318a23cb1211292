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

// Mutation benchmark: synthetic pages, the GUI change taxonomy, and scoring
// of diff reports against the introduced changes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agsdiff/executor.hpp"
#include "agsdiff/filter_rules.hpp"
#include "agsdiff/identification.hpp"
#include "agsdiff/snapshot.hpp"
#include "json.hpp"

namespace agsdiff {

// Deterministic page of `size` nodes rooted at /html[1]. Throws ConfigError
// for size 0.
Snapshot generate_page(std::uint64_t seed, std::size_t size);

enum class MutationCategory {
  kTextContent,  // 1.1
  kFont,         // 1.2
  kFontColor,    // 1.3
  kTranslation,  // 2.1
  kSizeChange,   // 2.2
  kDelete,       // 3.1
  kCreate,       // 3.2
  kTypeChange,   // 3.3
};

inline constexpr MutationCategory kAllCategories[] = {
    MutationCategory::kTextContent, MutationCategory::kFont,
    MutationCategory::kFontColor,   MutationCategory::kTranslation,
    MutationCategory::kSizeChange,  MutationCategory::kDelete,
    MutationCategory::kCreate,      MutationCategory::kTypeChange,
};

// "1.1" ... "3.3".
const char* category_code(MutationCategory category);

struct Mutation {
  MutationCategory category = MutationCategory::kTextContent;
  // Mutated node; the parent for kCreate.
  std::string target;
  // text / font-family / color; x or y; width or height.
  std::string key;
  std::string value;       // new value for 1.x
  std::int64_t delta = 0;  // 2.x
  // kCreate: the inserted node. kTypeChange: the node after the change.
  std::optional<SnapshotNode> node;
  // Following siblings of the target are shifted vertically by this much
  // (2.2 on height, 3.1, 3.2).
  std::int64_t cascade = 0;
};

// Throws UnknownTarget when the target (or the parent for kCreate) is not in
// the snapshot.
Snapshot apply_mutation(const Snapshot& snapshot, const Mutation& mutation);

// One mutation per category on pairwise non-nested targets.
std::vector<Mutation> plan_mutations(const Snapshot& snapshot, std::uint64_t seed);

struct BenchScore {
  std::size_t tp = 0;
  std::size_t fn = 0;
  std::size_t fp = 0;
  std::optional<double> precision;
  std::optional<double> recall;

  static BenchScore from_counts(std::size_t tp, std::size_t fn, std::size_t fp);
};

// A mutation is a TP when some report entry on its target carries its key or
// classification, else an FN. A report entry (attribute difference, deleted
// or created element) that no mutation explains is an FP; geometry-only
// differences below the parent of a 2.x/3.x target count as explained.
BenchScore score_run(const std::vector<Mutation>& mutations, const DiffReport& report);

struct BenchConfig {
  std::size_t pages = 20;
  // Page i has sizes[i % sizes.size()] nodes.
  std::vector<std::size_t> sizes = {200, 400, 600, 800, 1000, 1200, 1400, 1600, 1800, 2000};
  std::vector<Strategy> strategies = {Strategy::kStrongWeak, Strategy::kKeyTests,
                                      Strategy::kMatching};
  std::size_t repetitions = 1;
  std::uint64_t seed = 1;
  KeyConfig keys = KeyConfig::defaults();
  std::uint64_t pixel_threshold = 25;
};

struct BenchRow {
  std::size_t page = 0;
  std::size_t nodes = 0;
  Strategy strategy = Strategy::kMatching;
  std::size_t rep = 0;
  double ms = 0.0;
  BenchScore score;
  std::size_t deleted = 0;
  std::size_t created = 0;
  std::size_t changed = 0;
};

struct StrategyAggregate {
  Strategy strategy = Strategy::kMatching;
  BenchScore score;  // micro-averaged over all rows
  double ms_min = 0.0;
  double ms_avg = 0.0;
  double ms_max = 0.0;
  std::size_t deleted = 0;
  std::size_t created = 0;
  std::size_t changed = 0;

  std::size_t differences() const { return deleted + created + changed; }
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<StrategyAggregate> aggregates;  // config strategy order

  const StrategyAggregate& aggregate(Strategy strategy) const;
};

// Page sizes used for a config, one per page.
std::vector<std::size_t> page_sizes(const BenchConfig& config);

// Throws ConfigError for repetitions 0 or an empty size/strategy list.
BenchResult run_benchmark(const BenchConfig& config);

std::string bench_csv(const BenchResult& result);
nlohmann::json bench_json(const BenchResult& result);

}  // namespace agsdiff
