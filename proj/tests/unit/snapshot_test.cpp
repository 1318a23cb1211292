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
#include "agsdiff/identification.hpp"
#include "agsdiff/snapshot.hpp"
#include "examples.hpp"
#include "gen.hpp"

namespace agsdiff {
namespace {

std::map<std::string, std::string> attrs_of(const Element& e) {
  std::map<std::string, std::string> m;
  for (const auto& a : e.attributes) m[a.key] = a.value;
  return m;
}

SnapshotNode node_at(std::string path) {
  SnapshotNode n;
  n.path = std::move(path);
  return n;
}

TEST(XPath, ParseAndFormat) {
  auto segs = parse_xpath("/html[1]/body[1]/div[12]");
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[2], (PathSegment{"div", 12}));
  EXPECT_EQ(format_xpath(segs), "/html[1]/body[1]/div[12]");
  for (const char* bad : {"", "html[1]", "/html", "/html[0]", "/html[x]", "/[1]", "/html[1]//div[1]",
                          "/html[1]/", "/a[1]b[2]"}) {
    EXPECT_THROW(parse_xpath(bad), SnapshotParseError) << bad;
  }
}

TEST(Snapshot, FourNodePage) {
  auto snap = load_snapshot(testing::fixture("page.snap.json"));
  ASSERT_EQ(snap.nodes.size(), 4u);
  auto g = construct_ags(snap.nodes, DefaultsTable::builtin());
  ASSERT_EQ(g.roots.size(), 1u);
  const auto& html = g.roots[0];
  EXPECT_EQ(attrs_of(html), (std::map<std::string, std::string>{{"height", "720"},
                                                                 {"lang", "en"},
                                                                 {"path", "/html[1]"},
                                                                 {"type", "html"},
                                                                 {"width", "1280"},
                                                                 {"x", "0"},
                                                                 {"y", "0"}}));
  // Siblings sort by index, then tag: body[1] before head[1].
  ASSERT_EQ(html.children.size(), 2u);
  EXPECT_EQ(attrs_of(html.children[1]).at("display"), "none");
  const auto& body = html.children[0];
  EXPECT_FALSE(body.attributes.contains("background-color"));
  ASSERT_EQ(body.children.size(), 1u);
  const auto button = attrs_of(body.children[0]);
  EXPECT_EQ(button.at("name"), "foo");
  EXPECT_EQ(button.at("text"), "bar");
  EXPECT_EQ(button.at("type"), "button");
  EXPECT_FALSE(button.count("opacity"));
  EXPECT_EQ(extract(g).size(), 4u);
  EXPECT_TRUE(is_well_formed(g));
}

TEST(Snapshot, EmptyDefaultsKeepEverything) {
  auto snap = load_snapshot(testing::fixture("page.snap.json"));
  auto g = construct_ags(snap.nodes, DefaultsTable{});
  EXPECT_EQ(*g.roots[0].children[0].attributes.find("background-color"), "rgba(0, 0, 0, 0)");
}

TEST(Snapshot, DerivedKeysWinThenCss) {
  SnapshotNode n = node_at("/html[1]");
  n.html = {{"type", "fake"}, {"color", "html"}, {"x", "99"}};
  n.css = {{"color", "css"}};
  n.x = 3;
  auto g = construct_ags({n}, DefaultsTable{});
  auto m = attrs_of(g.roots[0]);
  EXPECT_EQ(m.at("type"), "html");
  EXPECT_EQ(m.at("color"), "css");
  EXPECT_EQ(m.at("x"), "3");
  EXPECT_FALSE(m.count("text"));
}

TEST(Snapshot, SiblingOrderByIndexThenTag) {
  std::vector<SnapshotNode> nodes{node_at("/html[1]"), node_at("/html[1]/p[2]"), node_at("/html[1]/div[2]"),
                                  node_at("/html[1]/p[1]")};
  auto g = construct_ags(nodes, DefaultsTable{});
  std::vector<std::string> order;
  for (const auto& c : g.roots[0].children) order.push_back(*c.attributes.find("path"));
  EXPECT_EQ(order, (std::vector<std::string>{"/html[1]/p[1]", "/html[1]/div[2]", "/html[1]/p[2]"}));
}

TEST(Snapshot, OrphansAttachToNearestAncestor) {
  std::vector<SnapshotNode> nodes{node_at("/html[1]"), node_at("/html[1]/body[1]/div[1]/span[1]"),
                                  node_at("/other[1]/x[1]")};
  auto c = construct_ags_with_warnings(nodes, DefaultsTable{});
  ASSERT_EQ(c.orphans.size(), 2u);
  EXPECT_EQ(c.orphans[0], (OrphanWarning{"/html[1]/body[1]/div[1]/span[1]", "/html[1]"}));
  EXPECT_EQ(c.orphans[1], (OrphanWarning{"/other[1]/x[1]", ""}));
  ASSERT_EQ(c.state.roots.size(), 2u);
  EXPECT_EQ(c.state.roots[0].children.size(), 1u);
  EXPECT_EQ(node_count(c.state), 3u);
}

TEST(Snapshot, RejectsBadInput) {
  EXPECT_THROW(parse_snapshot("[]"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot("{\"nodes\": 1}"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot("{\"nodes\": [{\"html\": {}}]}"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot(R"({"nodes":[{"path":"/a[1]"},{"path":"/a[1]"}]})"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot(R"({"nodes":[{"path":"/a[1]","rect":{"x":0,"y":0,"w":-1,"h":0}}]})"),
               SnapshotParseError);
  EXPECT_THROW(parse_snapshot(R"({"nodes":[{"path":"/a[1]","html":{"k":3}}]})"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot(R"({"nodes":[{"path":"a"}]})"), SnapshotParseError);
  EXPECT_THROW(parse_snapshot("{"), SnapshotParseError);
}

TEST(Snapshot, SerializeRoundTrip) {
  auto snap = load_snapshot(testing::fixture("page.snap.json"));
  EXPECT_EQ(parse_snapshot(serialize_snapshot(snap)), snap);
}

TEST(Defaults, ParseTable) {
  auto d = parse_defaults(R"({"display": ["block", "inline"], "color": ["black"]})");
  EXPECT_TRUE(d.is_default("display", "inline"));
  EXPECT_FALSE(d.is_default("display", "none"));
  EXPECT_FALSE(d.is_default("margin", "0"));
  EXPECT_THROW(parse_defaults("[]"), SnapshotParseError);
  EXPECT_THROW(parse_defaults(R"({"a": "b"})"), SnapshotParseError);
  EXPECT_THROW(parse_defaults(R"({"a": [1]})"), SnapshotParseError);
  EXPECT_TRUE(DefaultsTable::builtin().is_default("opacity", "1"));
}

// Reference parent: longest proper prefix present among the paths.
std::string reference_parent(const std::string& path, const std::set<std::string>& present) {
  auto segs = parse_xpath(path);
  for (std::size_t len = segs.size() - 1; len > 0; --len) {
    auto p = format_xpath({segs.begin(), segs.begin() + len});
    if (present.count(p)) return p;
  }
  return "";
}

void collect_parents(const Element& e, const std::string& parent, std::map<std::string, std::string>& out,
                     std::vector<std::string>& order) {
  const auto path = *e.attributes.find("path");
  out[path] = parent;
  order.push_back(path);
  for (const auto& c : e.children) collect_parents(c, path, out, order);
}

TEST(Snapshot, TreeMatchesPrefixOracle) {
  testing::Gen gen(61);
  const std::vector<std::string> tags{"div", "p", "a"};
  for (int round = 0; round < 200; ++round) {
    std::set<std::string> paths;
    const auto n = 1 + gen.below(60);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::string p = "/html[1]";
      const auto depth = gen.below(5);
      for (std::uint64_t d = 0; d < depth; ++d) {
        p += "/" + gen.pick(tags) + "[" + std::to_string(1 + gen.below(3)) + "]";
      }
      paths.insert(p);
    }
    std::vector<SnapshotNode> nodes;
    for (const auto& p : paths) nodes.push_back(node_at(p));
    std::shuffle(nodes.begin(), nodes.end(), gen.engine());

    auto c = construct_ags_with_warnings(nodes, DefaultsTable{});
    ASSERT_EQ(node_count(c.state), paths.size());
    std::map<std::string, std::string> parents;
    std::vector<std::string> order;
    for (const auto& r : c.state.roots) collect_parents(r, "", parents, order);
    for (const auto& p : paths) EXPECT_EQ(parents.at(p), reference_parent(p, paths)) << p;

    // Shuffled input yields the same state.
    std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.path < b.path; });
    EXPECT_EQ(construct_ags(nodes, DefaultsTable{}), c.state);
  }
}

}  // namespace
}  // namespace agsdiff
