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

#include "agsdiff/identification.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <unordered_map>

#include "agsdiff/errors.hpp"
#include "agsdiff/similarity.hpp"

namespace agsdiff {

namespace {

void extract_into(const Element& element, std::vector<ExtractedElement>& out) {
  ExtractedElement flat;
  flat.attributes = element.attributes;
  flat.index = out.size();
  const auto* path = element.attributes.find("path");
  flat.handle = path ? *path : "@" + std::to_string(flat.index);
  out.push_back(std::move(flat));
  for (const auto& child : element.children) extract_into(child, out);
}

bool weak_keys_agree(const AttributeSet& lhs, const AttributeSet& rhs,
                     const KeyConfig& cfg) {
  return std::all_of(cfg.weak_keys.begin(), cfg.weak_keys.end(),
                     [&](const std::string& k) {
                       return lhs.contains(k) == rhs.contains(k);
                     });
}

// Canonical text of proj(As, I_s) together with proj(As, I_w) keys; two
// elements are strong/weak similar iff their signatures are equal.
std::string strong_weak_signature(const AttributeSet& attributes,
                                  const KeyConfig& cfg) {
  std::string sig;
  for (const auto& k : cfg.strong_keys) {
    if (const auto* v = attributes.find(k)) {
      sig += '+';
      sig += *v;
    } else {
      sig += '-';
    }
    sig += '\x1f';
  }
  for (const auto& k : cfg.weak_keys) sig += attributes.contains(k) ? '1' : '0';
  return sig;
}

std::string key_presence_signature(const AttributeSet& attributes,
                                   const KeyConfig& cfg) {
  std::string sig;
  for (const auto& k : cfg.strong_keys) sig += attributes.contains(k) ? '1' : '0';
  sig += '|';
  for (const auto& k : cfg.weak_keys) sig += attributes.contains(k) ? '1' : '0';
  return sig;
}

IdentificationResult assemble(const std::vector<ExtractedElement>& expected,
                              const std::vector<ExtractedElement>& actual,
                              const std::vector<std::int64_t>& partner) {
  IdentificationResult result;
  std::vector<char> actual_used(actual.size(), 0);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (partner[i] < 0) {
      result.deleted.push_back(expected[i]);
    } else {
      actual_used[static_cast<std::size_t>(partner[i])] = 1;
      result.maintained.emplace_back(
          expected[i], actual[static_cast<std::size_t>(partner[i])]);
    }
  }
  for (std::size_t j = 0; j < actual.size(); ++j) {
    if (!actual_used[j]) result.created.push_back(actual[j]);
  }
  return result;
}

std::vector<std::int64_t> assign_strong_weak(
    const std::vector<ExtractedElement>& expected,
    const std::vector<ExtractedElement>& actual, const KeyConfig& cfg) {
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t j = 0; j < actual.size(); ++j) {
    buckets[strong_weak_signature(actual[j].attributes, cfg)].push_back(j);
  }
  std::unordered_map<std::string, std::size_t> cursor;
  std::vector<std::int64_t> partner(expected.size(), -1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    auto sig = strong_weak_signature(expected[i].attributes, cfg);
    auto it = buckets.find(sig);
    if (it == buckets.end()) continue;
    auto& next = cursor[sig];
    if (next < it->second.size()) {
      partner[i] = static_cast<std::int64_t>(it->second[next++]);
    }
  }
  return partner;
}

std::vector<std::int64_t> assign_key_tests(
    const std::vector<ExtractedElement>& expected,
    const std::vector<ExtractedElement>& actual, const KeyConfig& cfg) {
  // Only elements with identical strong and weak key sets can be related.
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t j = 0; j < actual.size(); ++j) {
    buckets[key_presence_signature(actual[j].attributes, cfg)].push_back(j);
  }
  std::vector<char> used(actual.size(), 0);
  std::vector<std::int64_t> partner(expected.size(), -1);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    auto it = buckets.find(key_presence_signature(expected[i].attributes, cfg));
    if (it == buckets.end()) continue;
    auto& bucket = it->second;
    for (std::size_t pos = 0; pos < bucket.size(); ++pos) {
      const auto j = bucket[pos];
      if (used[j]) continue;
      if (fairly_similar_key_tests(expected[i], actual[j], cfg)) {
        used[j] = 1;
        partner[i] = static_cast<std::int64_t>(j);
        break;
      }
    }
    // Drop used entries from the front so later scans start at the first
    // unmatched candidate.
    std::size_t head = 0;
    while (head < bucket.size() && used[bucket[head]]) ++head;
    if (head > 64) bucket.erase(bucket.begin(), bucket.begin() + head);
  }
  return partner;
}

// Best-first greedy assignment over all pairs with score >= u. Each expected
// element keeps a bounded, sorted candidate list; a heap holds the current
// head of every list, so pops follow the global pair order.
class MatchingAssigner {
 public:
  MatchingAssigner(const std::vector<ExtractedElement>& expected,
                   const std::vector<ExtractedElement>& actual,
                   const KeyConfig& cfg)
      : expected_(expected), actual_(actual), keys_(cfg.scoring_keys()) {
    if (keys_.empty()) throw EmptyKeyConfig("no scoring keys configured");
    const double n = static_cast<double>(keys_.size());
    min_count_ = keys_.size() + 1;
    for (std::size_t c = 0; c <= keys_.size(); ++c) {
      if (static_cast<double>(c) / n >= cfg.u) {
        min_count_ = c;
        break;
      }
    }
    index_.resize(keys_.size());
    for (std::size_t j = 0; j < actual_.size(); ++j) {
      for (std::size_t k = 0; k < keys_.size(); ++k) {
        if (const auto* v = actual_[j].attributes.find(keys_[k])) {
          index_[k][*v].push_back(static_cast<std::uint32_t>(j));
        }
      }
    }
    counts_.assign(actual_.size(), 0);
    matched_.assign(actual_.size(), 0);
  }

  std::vector<std::int64_t> run() {
    std::vector<std::int64_t> partner(expected_.size(), -1);
    if (min_count_ > keys_.size() || actual_.empty()) return partner;
    lists_.resize(expected_.size());
    auto worse = [this](const Head& a, const Head& b) { return precedes(b, a); };
    std::priority_queue<Head, std::vector<Head>, decltype(worse)> heap(worse);
    for (std::size_t i = 0; i < expected_.size(); ++i) {
      fill(i);
      if (!lists_[i].items.empty()) heap.push(head_of(i));
    }
    while (!heap.empty()) {
      Head top = heap.top();
      heap.pop();
      if (!matched_[top.actual]) {
        matched_[top.actual] = 1;
        partner[top.expected] = top.actual;
        lists_[top.expected] = {};
        continue;
      }
      auto& list = lists_[top.expected];
      while (list.pos < list.items.size() &&
             matched_[list.items[list.pos].actual]) {
        ++list.pos;
      }
      if (list.pos == list.items.size()) {
        if (!list.truncated) continue;
        fill(top.expected);
        if (lists_[top.expected].items.empty()) continue;
      }
      heap.push(head_of(top.expected));
    }
    return partner;
  }

 private:
  static constexpr std::size_t kListCap = 64;

  struct Candidate {
    std::uint32_t count;
    std::uint32_t actual;
  };
  struct CandidateList {
    std::vector<Candidate> items;
    std::size_t pos = 0;
    bool truncated = false;
  };
  struct Head {
    std::uint32_t count;
    std::uint32_t expected;
    std::uint32_t actual;
  };

  bool actual_before(const Candidate& a, const Candidate& b) const {
    if (a.count != b.count) return a.count > b.count;
    const auto& ha = actual_[a.actual].handle;
    const auto& hb = actual_[b.actual].handle;
    if (ha != hb) return ha < hb;
    return a.actual < b.actual;
  }

  bool precedes(const Head& a, const Head& b) const {
    if (a.count != b.count) return a.count > b.count;
    if (a.expected != b.expected) {
      const auto& ha = expected_[a.expected].handle;
      const auto& hb = expected_[b.expected].handle;
      if (ha != hb) return ha < hb;
      return a.expected < b.expected;
    }
    return actual_before({a.count, a.actual}, {b.count, b.actual});
  }

  Head head_of(std::size_t i) const {
    const auto& c = lists_[i].items[lists_[i].pos];
    return {c.count, static_cast<std::uint32_t>(i), c.actual};
  }

  void fill(std::size_t i) {
    touched_.clear();
    const auto& attrs = expected_[i].attributes;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      const auto* v = attrs.find(keys_[k]);
      if (v == nullptr) continue;
      auto it = index_[k].find(*v);
      if (it == index_[k].end()) continue;
      for (auto j : it->second) {
        if (counts_[j]++ == 0) touched_.push_back(j);
      }
    }
    std::vector<Candidate> all;
    if (min_count_ == 0) {
      all.reserve(actual_.size());
      for (std::size_t j = 0; j < actual_.size(); ++j) {
        if (!matched_[j]) {
          all.push_back({counts_[j], static_cast<std::uint32_t>(j)});
        }
      }
    } else {
      for (auto j : touched_) {
        if (!matched_[j] && counts_[j] >= min_count_) {
          all.push_back({counts_[j], j});
        }
      }
    }
    for (auto j : touched_) counts_[j] = 0;

    auto before = [this](const Candidate& a, const Candidate& b) {
      return actual_before(a, b);
    };
    CandidateList list;
    list.truncated = all.size() > kListCap;
    if (list.truncated) {
      std::partial_sort(all.begin(), all.begin() + kListCap, all.end(), before);
      all.resize(kListCap);
    } else {
      std::sort(all.begin(), all.end(), before);
    }
    list.items = std::move(all);
    lists_[i] = std::move(list);
  }

  const std::vector<ExtractedElement>& expected_;
  const std::vector<ExtractedElement>& actual_;
  std::vector<std::string> keys_;
  std::size_t min_count_ = 0;
  std::vector<std::unordered_map<std::string, std::vector<std::uint32_t>>>
      index_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::uint32_t> touched_;
  std::vector<char> matched_;
  std::vector<CandidateList> lists_;
};

}  // namespace

const char* to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::kStrongWeak:
      return "strong-weak";
    case Strategy::kKeyTests:
      return "key-tests";
    case Strategy::kMatching:
      return "matching";
  }
  return "unknown";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "strong-weak") return Strategy::kStrongWeak;
  if (name == "key-tests") return Strategy::kKeyTests;
  if (name == "matching") return Strategy::kMatching;
  throw ConfigError("unknown strategy '" + std::string(name) +
                    "' (expected strong-weak, key-tests or matching)");
}

KeyConfig KeyConfig::defaults() {
  KeyConfig cfg;
  cfg.strong_keys = {"id", "path"};
  cfg.weak_keys = {"type", "x", "y", "width", "height"};
  cfg.matching_extra_keys = {"class", "id", "name", "text"};
  cfg.t = 0.9;
  cfg.u = 0.3;
  return cfg;
}

void KeyConfig::validate() const {
  for (const auto& k : strong_keys) {
    if (weak_keys.count(k)) {
      throw ConfigError("key '" + k + "' is both strong and weak");
    }
  }
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("t must lie in [0, 1]");
  if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("u must lie in [0, 1]");
}

std::vector<std::string> KeyConfig::scoring_keys() const {
  std::set<std::string> all = strong_keys;
  all.insert(weak_keys.begin(), weak_keys.end());
  all.insert(matching_extra_keys.begin(), matching_extra_keys.end());
  return {all.begin(), all.end()};
}

std::vector<ExtractedElement> extract(const GuiState& state) {
  std::vector<ExtractedElement> out;
  for (const auto& root : state.roots) extract_into(root, out);
  return out;
}

bool fairly_similar_strong_weak(const ExtractedElement& expected,
                                const ExtractedElement& actual,
                                const KeyConfig& cfg) {
  for (const auto& k : cfg.strong_keys) {
    const auto* lhs = expected.attributes.find(k);
    const auto* rhs = actual.attributes.find(k);
    if ((lhs == nullptr) != (rhs == nullptr)) return false;
    if (lhs != nullptr && *lhs != *rhs) return false;
  }
  return weak_keys_agree(expected.attributes, actual.attributes, cfg);
}

bool fairly_similar_key_tests(const ExtractedElement& expected,
                              const ExtractedElement& actual,
                              const KeyConfig& cfg) {
  if (!weak_keys_agree(expected.attributes, actual.attributes, cfg)) {
    return false;
  }
  for (const auto& k : cfg.strong_keys) {
    const auto* lhs = expected.attributes.find(k);
    const auto* rhs = actual.attributes.find(k);
    if ((lhs == nullptr) != (rhs == nullptr)) return false;
    if (lhs != nullptr && *lhs != *rhs && jaro_winkler(*lhs, *rhs) < cfg.t) {
      return false;
    }
  }
  return true;
}

double match_score(const ExtractedElement& expected,
                   const ExtractedElement& actual, const KeyConfig& cfg) {
  const auto keys = cfg.scoring_keys();
  if (keys.empty()) throw EmptyKeyConfig("no scoring keys configured");
  std::size_t equal = 0;
  for (const auto& k : keys) {
    const auto* lhs = expected.attributes.find(k);
    const auto* rhs = actual.attributes.find(k);
    if (lhs != nullptr && rhs != nullptr && *lhs == *rhs) ++equal;
  }
  return static_cast<double>(equal) / static_cast<double>(keys.size());
}

bool fairly_similar_matching(const ExtractedElement& expected,
                             const ExtractedElement& actual,
                             const KeyConfig& cfg) {
  return match_score(expected, actual, cfg) >= cfg.u;
}

bool fairly_similar(Strategy strategy, const ExtractedElement& expected,
                    const ExtractedElement& actual, const KeyConfig& cfg) {
  switch (strategy) {
    case Strategy::kStrongWeak:
      return fairly_similar_strong_weak(expected, actual, cfg);
    case Strategy::kKeyTests:
      return fairly_similar_key_tests(expected, actual, cfg);
    case Strategy::kMatching:
      return fairly_similar_matching(expected, actual, cfg);
  }
  return false;
}

IdentificationResult identify(const std::vector<ExtractedElement>& expected,
                              const std::vector<ExtractedElement>& actual,
                              Strategy strategy, const KeyConfig& cfg) {
  cfg.validate();
  std::vector<std::int64_t> partner;
  switch (strategy) {
    case Strategy::kStrongWeak:
      partner = assign_strong_weak(expected, actual, cfg);
      break;
    case Strategy::kKeyTests:
      partner = assign_key_tests(expected, actual, cfg);
      break;
    case Strategy::kMatching:
      partner = MatchingAssigner(expected, actual, cfg).run();
      break;
  }
  return assemble(expected, actual, partner);
}

IdentificationResult identify(const GuiState& expected, const GuiState& actual,
                              Strategy strategy, const KeyConfig& cfg) {
  return identify(extract(expected), extract(actual), strategy, cfg);
}

}  // namespace agsdiff
