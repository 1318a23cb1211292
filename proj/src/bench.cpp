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

#include "agsdiff/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <unordered_map>

#include "agsdiff/errors.hpp"

namespace agsdiff {

using nlohmann::json;

namespace {

constexpr const char* kWords[] = {
    "home",   "news",  "about", "login",   "search", "cart",  "profile", "menu",
    "header", "footer", "item",  "product", "price",  "offer", "contact", "help",
    "account", "share", "video", "story",   "sport",  "world", "media",   "detail",
};
constexpr const char* kFonts[] = {"Arial", "Helvetica", "Georgia", "Verdana"};
constexpr const char* kColors[] = {"rgb(0, 0, 0)", "rgb(51, 51, 51)", "rgb(0, 102, 204)",
                                   "rgb(204, 0, 0)", "rgb(34, 139, 34)"};
constexpr const char* kFontSizes[] = {"12px", "14px", "16px", "18px"};
constexpr const char* kContainers[] = {"div", "div", "div", "section", "form", "nav", "ul"};
constexpr const char* kLeaves[] = {"p",   "span", "a",     "button", "img",
                                   "h2",  "input", "label", "p",      "span"};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  bool chance(unsigned percent) { return below(100) < percent; }
  template <std::size_t N>
  const char* pick(const char* const (&items)[N]) {
    return items[below(N)];
  }

 private:
  std::mt19937_64 engine_;
};

bool is_container(const std::string& tag) {
  return tag == "html" || tag == "body" || tag == "div" || tag == "section" ||
         tag == "form" || tag == "nav" || tag == "ul" || tag == "li";
}

struct GenNode {
  std::string tag;
  std::size_t parent = 0;
  std::vector<std::size_t> children;
  std::size_t depth = 0;
  std::int64_t leaf_height = 0;
  SnapshotNode node;
};

std::int64_t layout(std::vector<GenNode>& nodes, std::size_t i, std::int64_t x, std::int64_t y,
                    std::int64_t w) {
  auto& n = nodes[i].node;
  n.x = x;
  n.y = y;
  n.width = std::max<std::int64_t>(w, 0);
  if (nodes[i].children.empty()) {
    n.height = is_container(nodes[i].tag) ? 24 : nodes[i].leaf_height;
    return n.height;
  }
  std::int64_t cy = y + 8;
  for (auto c : nodes[i].children) {
    cy += layout(nodes, c, x + 8, cy, w - 16) + 4;
  }
  nodes[i].node.height = cy - y + 4;
  return nodes[i].node.height;
}

bool in_subtree(std::string_view path, std::string_view root) {
  if (path == root) return true;
  return path.size() > root.size() && path.substr(0, root.size()) == root &&
         path[root.size()] == '/';
}

bool nested(std::string_view a, std::string_view b) {
  return in_subtree(a, b) || in_subtree(b, a);
}

std::string parent_path(std::string_view path) {
  auto slash = path.rfind('/');
  return slash == 0 || slash == std::string_view::npos ? std::string{}
                                                        : std::string(path.substr(0, slash));
}

std::string tag_of(std::string_view path) {
  auto seg = path.substr(path.rfind('/') + 1);
  return std::string(seg.substr(0, seg.find('[')));
}

std::uint32_t next_index(const Snapshot& s, const std::string& parent, const std::string& tag) {
  std::uint32_t max = 0;
  for (const auto& n : s.nodes) {
    if (parent_path(n.path) != parent) continue;
    auto segs = parse_xpath(n.path);
    if (segs.back().tag == tag) max = std::max(max, segs.back().index);
  }
  return max + 1;
}

void shift_following(std::vector<SnapshotNode>& nodes, const SnapshotNode& target,
                     std::int64_t dy) {
  if (dy == 0) return;
  const auto parent = parent_path(target.path);
  std::vector<std::string> roots;
  for (const auto& n : nodes) {
    if (n.path != target.path && parent_path(n.path) == parent && n.y > target.y) {
      roots.push_back(n.path);
    }
  }
  for (auto& n : nodes) {
    for (const auto& r : roots) {
      if (in_subtree(n.path, r)) {
        n.y += dy;
        break;
      }
    }
  }
}

bool is_geometry(std::string_view key) {
  return key == "x" || key == "y" || key == "width" || key == "height";
}

bool is_layout_or_resource(MutationCategory c) {
  return c == MutationCategory::kTranslation || c == MutationCategory::kSizeChange ||
         c == MutationCategory::kDelete || c == MutationCategory::kCreate ||
         c == MutationCategory::kTypeChange;
}

std::string format_ratio(const std::optional<double>& v) {
  if (!v) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

json ratio_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Snapshot generate_page(std::uint64_t seed, std::size_t size) {
  if (size == 0) throw ConfigError("page size must be at least 1");
  Rng rng(seed);
  std::vector<GenNode> nodes;
  nodes.reserve(size);
  nodes.push_back({"html", 0, {}, 0, 0, {}});
  nodes[0].node.path = "/html[1]";
  nodes[0].node.html["lang"] = "en";
  std::vector<std::size_t> containers;
  if (size >= 2) {
    nodes.push_back({"body", 0, {}, 1, 0, {}});
    nodes[1].node.path = "/html[1]/body[1]";
    nodes[0].children.push_back(1);
    containers.push_back(1);
  }
  std::size_t counter = 0;
  while (nodes.size() < size) {
    std::size_t parent;
    if (rng.chance(50) && containers.size() > 8) {
      parent = containers[containers.size() - 1 - rng.below(8)];
    } else {
      parent = containers[rng.below(containers.size())];
    }
    if (nodes[parent].depth >= 9) parent = 1;
    GenNode g;
    if (nodes[parent].tag == "ul") {
      g.tag = "li";
    } else if (rng.chance(30)) {
      g.tag = rng.pick(kContainers);
    } else {
      g.tag = rng.pick(kLeaves);
    }
    g.parent = parent;
    g.depth = nodes[parent].depth + 1;
    g.leaf_height = 18 + static_cast<std::int64_t>(rng.below(30));
    std::uint32_t index = 1;
    for (auto c : nodes[parent].children) {
      if (nodes[c].tag == g.tag) ++index;
    }
    g.node.path = nodes[parent].node.path + "/" + g.tag + "[" + std::to_string(index) + "]";
    ++counter;
    if (rng.chance(30)) {
      g.node.html["id"] = std::string(rng.pick(kWords)) + "-" + std::to_string(counter);
    }
    if (rng.chance(50)) {
      std::string cls = rng.pick(kWords);
      if (rng.chance(40)) cls += std::string(" ") + rng.pick(kWords);
      g.node.html["class"] = cls;
    }
    if (g.tag == "a") g.node.html["href"] = std::string("/") + rng.pick(kWords);
    if (g.tag == "input") {
      g.node.html["name"] = std::string(rng.pick(kWords)) + std::to_string(counter);
    }
    if (g.tag == "img") g.node.html["src"] = std::string("/img/") + rng.pick(kWords) + ".png";
    g.node.css["font-family"] = rng.pick(kFonts);
    g.node.css["color"] = rng.pick(kColors);
    g.node.css["font-size"] = rng.pick(kFontSizes);
    g.node.css["display"] = (g.tag == "span" || g.tag == "a" || g.tag == "label") ? "inline" : "block";
    g.node.css["background-color"] = rng.chance(80) ? "rgba(0, 0, 0, 0)" : rng.pick(kColors);
    if (!is_container(g.tag) && g.tag != "img" && g.tag != "input") {
      std::string text = rng.pick(kWords);
      for (auto n = rng.below(4); n > 0; --n) text += std::string(" ") + rng.pick(kWords);
      g.node.text = text;
    }
    const auto id = nodes.size();
    nodes[parent].children.push_back(id);
    if (is_container(g.tag)) containers.push_back(id);
    nodes.push_back(std::move(g));
  }
  layout(nodes, 0, 0, 0, 1280);
  Snapshot out;
  out.nodes.reserve(nodes.size());
  for (auto& g : nodes) out.nodes.push_back(std::move(g.node));
  return out;
}

const char* category_code(MutationCategory category) {
  switch (category) {
    case MutationCategory::kTextContent:
      return "1.1";
    case MutationCategory::kFont:
      return "1.2";
    case MutationCategory::kFontColor:
      return "1.3";
    case MutationCategory::kTranslation:
      return "2.1";
    case MutationCategory::kSizeChange:
      return "2.2";
    case MutationCategory::kDelete:
      return "3.1";
    case MutationCategory::kCreate:
      return "3.2";
    case MutationCategory::kTypeChange:
      return "3.3";
  }
  return "?";
}

Snapshot apply_mutation(const Snapshot& snapshot, const Mutation& m) {
  Snapshot out = snapshot;
  auto it = std::find_if(out.nodes.begin(), out.nodes.end(),
                         [&](const SnapshotNode& n) { return n.path == m.target; });
  if (it == out.nodes.end()) {
    throw UnknownTarget(std::string("mutation ") + category_code(m.category) + ": no node '" +
                        m.target + "'");
  }
  const SnapshotNode target = *it;
  switch (m.category) {
    case MutationCategory::kTextContent:
      it->text = m.value;
      break;
    case MutationCategory::kFont:
    case MutationCategory::kFontColor:
      it->css[m.key] = m.value;
      break;
    case MutationCategory::kTranslation:
      for (auto& n : out.nodes) {
        if (!in_subtree(n.path, m.target)) continue;
        (m.key == "x" ? n.x : n.y) += m.delta;
      }
      break;
    case MutationCategory::kSizeChange:
      (m.key == "width" ? it->width : it->height) += m.delta;
      shift_following(out.nodes, target, m.cascade);
      break;
    case MutationCategory::kDelete:
      out.nodes.erase(std::remove_if(out.nodes.begin(), out.nodes.end(),
                                     [&](const SnapshotNode& n) {
                                       return in_subtree(n.path, m.target);
                                     }),
                      out.nodes.end());
      shift_following(out.nodes, target, m.cascade);
      break;
    case MutationCategory::kCreate:
      if (!m.node) throw UnknownTarget("mutation 3.2 without a node");
      out.nodes.push_back(*m.node);
      break;
    case MutationCategory::kTypeChange: {
      if (!m.node) throw UnknownTarget("mutation 3.3 without a node");
      for (auto& n : out.nodes) {
        if (in_subtree(n.path, m.target)) {
          n.path = m.node->path + n.path.substr(m.target.size());
        }
      }
      break;
    }
  }
  validate_snapshot(out);
  return out;
}

std::vector<Mutation> plan_mutations(const Snapshot& snapshot, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> chosen;
  const auto& nodes = snapshot.nodes;

  auto free = [&](const std::string& path) {
    return std::none_of(chosen.begin(), chosen.end(),
                        [&](const std::string& c) { return nested(c, path); });
  };
  // Subtree sizes and child counts by path.
  std::unordered_map<std::string, std::size_t> sizes;
  std::unordered_map<std::string, std::size_t> children;
  for (const auto& n : nodes) {
    ++sizes[n.path];
    ++children[parent_path(n.path)];
    for (auto p = parent_path(n.path); !p.empty(); p = parent_path(p)) ++sizes[p];
  }
  auto has_children = [&](const SnapshotNode& n) { return children.count(n.path) > 0; };
  auto choose = [&](auto&& eligible) -> const SnapshotNode* {
    std::vector<const SnapshotNode*> pool;
    for (const auto& n : nodes) {
      if (std::count(n.path.begin(), n.path.end(), '/') < 3) continue;
      if (eligible(n) && free(n.path)) pool.push_back(&n);
    }
    if (pool.empty()) return nullptr;
    const SnapshotNode* hit = pool[rng.below(pool.size())];
    chosen.push_back(hit->path);
    return hit;
  };

  std::vector<Mutation> out;
  const auto uid = std::to_string(seed % 100000);

  if (const auto* n = choose([&](const SnapshotNode& c) { return sizes.at(c.path) <= 12; })) {
    Mutation m{MutationCategory::kDelete, n->path, "", "", 0, std::nullopt, -(n->height + 4)};
    out.push_back(m);
  }
  if (const auto* n = choose([&](const SnapshotNode& c) {
        auto tag = tag_of(c.path);
        return tag == "a" || tag == "button" || tag == "span" || tag == "p";
      })) {
    static const std::map<std::string, std::string> swap = {
        {"a", "button"}, {"button", "a"}, {"span", "label"}, {"p", "div"}};
    const auto tag = swap.at(tag_of(n->path));
    const auto parent = parent_path(n->path);
    SnapshotNode changed = *n;
    changed.path = parent + "/" + tag + "[" + std::to_string(next_index(snapshot, parent, tag)) + "]";
    out.push_back({MutationCategory::kTypeChange, n->path, "type", tag, 0, changed, 0});
  }
  if (const auto* n = choose([&](const SnapshotNode& c) {
        return is_container(tag_of(c.path)) && tag_of(c.path) != "ul" && c.width >= 40;
      })) {
    SnapshotNode inserted;
    inserted.path = n->path + "/aside[" + std::to_string(next_index(snapshot, n->path, "aside")) + "]";
    inserted.html["id"] = "inserted-" + uid;
    inserted.css["font-family"] = "Courier New";
    inserted.x = n->x + 12;
    inserted.y = n->y + n->height - 4;
    inserted.width = n->width - 24;
    inserted.height = 51;
    inserted.text = "Inserted block " + uid;
    out.push_back({MutationCategory::kCreate, n->path, "", "", 0, inserted, 0});
  }
  if (const auto* n = choose([](const SnapshotNode&) { return true; })) {
    const std::string key = rng.chance(50) ? "x" : "y";
    auto delta = 30 + static_cast<std::int64_t>(rng.below(51));
    if (rng.chance(50)) delta = -delta;
    out.push_back({MutationCategory::kTranslation, n->path, key, "", delta, std::nullopt, 0});
  }
  if (const auto* n = choose([](const SnapshotNode&) { return true; })) {
    const std::string key = rng.chance(50) ? "width" : "height";
    auto delta = 30 + static_cast<std::int64_t>(rng.below(51));
    out.push_back({MutationCategory::kSizeChange, n->path, key, "", delta, std::nullopt,
                   key == "height" ? delta : 0});
  }
  if (const auto* n = choose([&](const SnapshotNode& c) { return c.text && !has_children(c); })) {
    out.push_back({MutationCategory::kTextContent, n->path, "text", *n->text + " (changed)", 0,
                   std::nullopt, 0});
  }
  if (const auto* n = choose([](const SnapshotNode& c) { return c.css.count("font-family") > 0; })) {
    out.push_back({MutationCategory::kFont, n->path, "font-family", "Times New Roman", 0,
                   std::nullopt, 0});
  }
  if (const auto* n = choose([](const SnapshotNode& c) { return c.css.count("color") > 0; })) {
    out.push_back({MutationCategory::kFontColor, n->path, "color", "rgb(255, 0, 255)", 0,
                   std::nullopt, 0});
  }
  std::sort(out.begin(), out.end(), [](const Mutation& a, const Mutation& b) {
    return static_cast<int>(a.category) < static_cast<int>(b.category);
  });
  return out;
}

BenchScore BenchScore::from_counts(std::size_t tp, std::size_t fn, std::size_t fp) {
  BenchScore s;
  s.tp = tp;
  s.fn = fn;
  s.fp = fp;
  if (tp + fp > 0) s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) s.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return s;
}

BenchScore score_run(const std::vector<Mutation>& mutations, const DiffReport& report) {
  auto created_path = [](const Mutation& m) { return m.node ? m.node->path : std::string{}; };

  auto explains_change = [&](const std::string& eh, const std::string& ah,
                             const std::string& key) {
    for (const auto& m : mutations) {
      switch (m.category) {
        case MutationCategory::kTextContent:
        case MutationCategory::kFont:
        case MutationCategory::kFontColor:
        case MutationCategory::kSizeChange:
          if (eh == m.target && key == m.key) return true;
          break;
        case MutationCategory::kTranslation:
          if (in_subtree(eh, m.target) && key == m.key) return true;
          break;
        case MutationCategory::kTypeChange:
          if (in_subtree(eh, m.target) && in_subtree(ah, created_path(m)) &&
              (key == "path" || (eh == m.target && key == "type"))) {
            return true;
          }
          break;
        default:
          break;
      }
      if (is_layout_or_resource(m.category) && is_geometry(key)) {
        const auto zone = m.category == MutationCategory::kCreate ? m.target : parent_path(m.target);
        if (in_subtree(eh, zone)) return true;
      }
    }
    return false;
  };

  std::size_t fp = 0;
  for (const auto& c : report.changed) {
    const auto& eh = c.expected.handle;
    const auto& ah = c.actual.handle;
    for (const auto& d : c.value_diffs) fp += explains_change(eh, ah, d.key) ? 0 : 1;
    for (const auto& a : c.only_expected) fp += explains_change(eh, ah, a.key) ? 0 : 1;
    for (const auto& a : c.only_actual) fp += explains_change(eh, ah, a.key) ? 0 : 1;
  }
  for (const auto& d : report.deleted) {
    bool ok = std::any_of(mutations.begin(), mutations.end(), [&](const Mutation& m) {
      return (m.category == MutationCategory::kDelete || m.category == MutationCategory::kTypeChange) &&
             in_subtree(d.handle, m.target);
    });
    fp += ok ? 0 : 1;
  }
  for (const auto& c : report.created) {
    bool ok = std::any_of(mutations.begin(), mutations.end(), [&](const Mutation& m) {
      return (m.category == MutationCategory::kCreate && c.handle == created_path(m)) ||
             (m.category == MutationCategory::kTypeChange && in_subtree(c.handle, created_path(m)));
    });
    fp += ok ? 0 : 1;
  }

  auto changed_key_on = [&](const std::string& handle, const std::string& key) {
    for (const auto& c : report.changed) {
      if (c.expected.handle != handle) continue;
      for (const auto& d : c.value_diffs) {
        if (d.key == key) return true;
      }
      for (const auto& a : c.only_expected) {
        if (a.key == key) return true;
      }
      for (const auto& a : c.only_actual) {
        if (a.key == key) return true;
      }
    }
    return false;
  };
  auto has_deleted = [&](const std::string& h) {
    return std::any_of(report.deleted.begin(), report.deleted.end(),
                       [&](const ElementSummary& s) { return s.handle == h; });
  };
  auto has_created = [&](const std::string& h) {
    return std::any_of(report.created.begin(), report.created.end(),
                       [&](const ElementSummary& s) { return s.handle == h; });
  };

  std::size_t tp = 0;
  for (const auto& m : mutations) {
    bool hit = false;
    switch (m.category) {
      case MutationCategory::kDelete:
        hit = has_deleted(m.target);
        break;
      case MutationCategory::kCreate:
        hit = has_created(created_path(m));
        break;
      case MutationCategory::kTypeChange:
        hit = changed_key_on(m.target, "type") || has_deleted(m.target) ||
              has_created(created_path(m));
        break;
      default:
        hit = changed_key_on(m.target, m.key);
        break;
    }
    tp += hit ? 1 : 0;
  }
  return BenchScore::from_counts(tp, mutations.size() - tp, fp);
}

const StrategyAggregate& BenchResult::aggregate(Strategy strategy) const {
  for (const auto& a : aggregates) {
    if (a.strategy == strategy) return a;
  }
  throw ConfigError(std::string("no benchmark results for strategy ") + to_string(strategy));
}

std::vector<std::size_t> page_sizes(const BenchConfig& config) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < config.pages; ++i) out.push_back(config.sizes[i % config.sizes.size()]);
  return out;
}

BenchResult run_benchmark(const BenchConfig& config) {
  if (config.repetitions == 0) throw ConfigError("repetitions must be at least 1");
  if (config.sizes.empty()) throw ConfigError("no page sizes given");
  if (config.strategies.empty()) throw ConfigError("no strategies given");
  config.keys.validate();

  FilterRuleSet rules;
  rules.add(FilterRule::pixel_diff(config.pixel_threshold));
  const auto defaults = DefaultsTable::builtin();
  const auto sizes = page_sizes(config);

  BenchResult result;
  for (std::size_t page = 0; page < config.pages; ++page) {
    const std::uint64_t page_seed = config.seed * 1000003ULL + page;
    const Snapshot original = generate_page(page_seed, sizes[page]);
    const auto mutations = plan_mutations(original, page_seed ^ 0x9e3779b97f4a7c15ULL);
    Snapshot mutated = original;
    for (const auto& m : mutations) mutated = apply_mutation(mutated, m);
    const GuiState expected = construct_ags(original.nodes, defaults);
    const GuiState actual = construct_ags(mutated.nodes, defaults);
    for (auto strategy : config.strategies) {
      for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        const auto report = execute(expected, actual, rules, strategy, config.keys);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        result.rows.push_back({page, original.nodes.size(), strategy, rep, ms,
                               score_run(mutations, report), report.deleted.size(),
                               report.created.size(), report.changed.size()});
      }
    }
  }

  for (auto strategy : config.strategies) {
    StrategyAggregate agg;
    agg.strategy = strategy;
    std::size_t tp = 0, fn = 0, fp = 0, n = 0;
    double total = 0.0;
    agg.ms_min = std::numeric_limits<double>::infinity();
    for (const auto& row : result.rows) {
      if (row.strategy != strategy) continue;
      tp += row.score.tp;
      fn += row.score.fn;
      fp += row.score.fp;
      agg.ms_min = std::min(agg.ms_min, row.ms);
      agg.ms_max = std::max(agg.ms_max, row.ms);
      total += row.ms;
      ++n;
      if (row.rep == 0) {
        agg.deleted += row.deleted;
        agg.created += row.created;
        agg.changed += row.changed;
      }
    }
    agg.score = BenchScore::from_counts(tp, fn, fp);
    agg.ms_avg = n ? total / static_cast<double>(n) : 0.0;
    if (n == 0) agg.ms_min = 0.0;
    result.aggregates.push_back(agg);
  }
  return result;
}

std::string bench_csv(const BenchResult& result) {
  std::ostringstream out;
  out << "page,strategy,rep,ms,tp,fn,fp,precision,recall\n";
  for (const auto& r : result.rows) {
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.ms);
    out << r.page << ',' << to_string(r.strategy) << ',' << r.rep << ',' << ms << ','
        << r.score.tp << ',' << r.score.fn << ',' << r.score.fp << ','
        << format_ratio(r.score.precision) << ',' << format_ratio(r.score.recall) << '\n';
  }
  return out.str();
}

json bench_json(const BenchResult& result) {
  json strategies = json::array();
  for (const auto& a : result.aggregates) {
    strategies.push_back({{"strategy", to_string(a.strategy)},
                          {"tp", a.score.tp},
                          {"fn", a.score.fn},
                          {"fp", a.score.fp},
                          {"precision", ratio_json(a.score.precision)},
                          {"recall", ratio_json(a.score.recall)},
                          {"ms", {{"min", a.ms_min}, {"avg", a.ms_avg}, {"max", a.ms_max}}},
                          {"deleted", a.deleted},
                          {"created", a.created},
                          {"changed", a.changed},
                          {"differences", a.differences()}});
  }
  json rows = json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"page", r.page},
                    {"nodes", r.nodes},
                    {"strategy", to_string(r.strategy)},
                    {"rep", r.rep},
                    {"ms", r.ms},
                    {"tp", r.score.tp},
                    {"fn", r.score.fn},
                    {"fp", r.score.fp},
                    {"precision", ratio_json(r.score.precision)},
                    {"recall", ratio_json(r.score.recall)},
                    {"deleted", r.deleted},
                    {"created", r.created},
                    {"changed", r.changed}});
  }
  return {{"aggregate", std::move(strategies)}, {"rows", std::move(rows)}};
}

}  // namespace agsdiff
