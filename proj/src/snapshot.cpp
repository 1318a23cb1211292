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

#include "agsdiff/snapshot.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"
#include "json.hpp"

namespace agsdiff {

using nlohmann::json;

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SnapshotParseError(std::string(what) + ": " + e.what());
  }
}

std::map<std::string, std::string> string_map(const json& v,
                                              const std::string& where) {
  if (!v.is_object()) throw SnapshotParseError(where + " must be an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, value] : v.items()) {
    if (k.empty()) throw SnapshotParseError(where + " has an empty key");
    if (!value.is_string()) {
      throw SnapshotParseError(where + "." + k + " must be a string");
    }
    out.emplace(k, value.get<std::string>());
  }
  return out;
}

std::int64_t integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    auto d = v.get<double>();
    if (!std::isfinite(d)) throw SnapshotParseError(where + " is not finite");
    return std::llround(d);
  }
  throw SnapshotParseError(where + " must be a number");
}

SnapshotNode node_from_json(const json& v, std::size_t i) {
  const std::string where = "nodes[" + std::to_string(i) + "]";
  if (!v.is_object()) throw SnapshotParseError(where + " must be an object");
  SnapshotNode node;
  auto path = v.find("path");
  if (path == v.end() || !path->is_string()) {
    throw SnapshotParseError(where + " is missing a string 'path'");
  }
  node.path = format_xpath(parse_xpath(path->get<std::string>()));
  if (auto it = v.find("html"); it != v.end()) {
    node.html = string_map(*it, where + ".html");
  }
  if (auto it = v.find("css"); it != v.end()) {
    node.css = string_map(*it, where + ".css");
  }
  if (auto it = v.find("rect"); it != v.end()) {
    if (!it->is_object()) throw SnapshotParseError(where + ".rect must be an object");
    auto field = [&](const char* name) -> std::int64_t {
      auto f = it->find(name);
      return f == it->end() ? 0 : integer(*f, where + ".rect." + name);
    };
    node.x = field("x");
    node.y = field("y");
    node.width = field("w");
    node.height = field("h");
  }
  if (auto it = v.find("text"); it != v.end()) {
    if (!it->is_string()) throw SnapshotParseError(where + ".text must be a string");
    node.text = it->get<std::string>();
  }
  return node;
}

// Document order: segment-wise by XPath index, then tag; a prefix first.
bool document_before(const std::vector<PathSegment>& a,
                     const std::vector<PathSegment>& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].index != b[i].index) return a[i].index < b[i].index;
    if (a[i].tag != b[i].tag) return a[i].tag < b[i].tag;
  }
  return a.size() < b.size();
}

struct Pending {
  const SnapshotNode* node;
  std::vector<PathSegment> segments;
  std::vector<std::size_t> children;
};

Element build(std::vector<Pending>& pending, std::size_t i,
              const DefaultsTable& defaults) {
  const SnapshotNode& node = *pending[i].node;
  std::map<std::string, std::string> merged;
  for (const auto& [k, v] : node.html) {
    if (!defaults.is_default(k, v)) merged[k] = v;
  }
  for (const auto& [k, v] : node.css) {
    if (!defaults.is_default(k, v)) merged[k] = v;
  }
  merged["path"] = format_xpath(pending[i].segments);
  merged["type"] = pending[i].segments.back().tag;
  if (node.text) merged["text"] = *node.text;
  merged["x"] = std::to_string(node.x);
  merged["y"] = std::to_string(node.y);
  merged["width"] = std::to_string(node.width);
  merged["height"] = std::to_string(node.height);

  std::vector<Attribute> attrs;
  attrs.reserve(merged.size());
  for (auto& [k, v] : merged) attrs.push_back({k, v});
  Element element;
  element.attributes = AttributeSet(std::move(attrs));
  element.children.reserve(pending[i].children.size());
  for (auto c : pending[i].children) {
    element.children.push_back(build(pending, c, defaults));
  }
  return element;
}

}  // namespace

std::vector<PathSegment> parse_xpath(std::string_view path) {
  if (path.empty() || path.front() != '/') {
    throw SnapshotParseError("path '" + std::string(path) +
                             "' must start with '/'");
  }
  std::vector<PathSegment> out;
  std::size_t pos = 1;
  while (pos <= path.size()) {
    auto end = path.find('/', pos);
    if (end == std::string_view::npos) end = path.size();
    auto seg = path.substr(pos, end - pos);
    auto open = seg.find('[');
    if (seg.empty() || open == 0 || open == std::string_view::npos ||
        seg.back() != ']') {
      throw SnapshotParseError("path '" + std::string(path) +
                               "' has a malformed segment '" + std::string(seg) +
                               "' (expected tag[index])");
    }
    auto tag = seg.substr(0, open);
    auto digits = seg.substr(open + 1, seg.size() - open - 2);
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() ||
        index == 0 || tag.find_first_of("[]") != std::string_view::npos) {
      throw SnapshotParseError("path '" + std::string(path) +
                               "' has an invalid index in '" + std::string(seg) + "'");
    }
    out.push_back({std::string(tag), index});
    pos = end + 1;
  }
  return out;
}

std::string format_xpath(const std::vector<PathSegment>& segments) {
  std::string out;
  for (const auto& s : segments) {
    out += '/';
    out += s.tag;
    out += '[';
    out += std::to_string(s.index);
    out += ']';
  }
  return out;
}

DefaultsTable::DefaultsTable(std::map<std::string, std::set<std::string>> values)
    : values_(std::move(values)) {
  for (const auto& [k, _] : values_) {
    if (k.empty()) throw SnapshotParseError("defaults table has an empty key");
  }
}

DefaultsTable DefaultsTable::builtin() {
  return DefaultsTable({
      {"background-color", {"rgba(0, 0, 0, 0)", "transparent"}},
      {"background-image", {"none"}},
      {"border-style", {"none"}},
      {"box-shadow", {"none"}},
      {"float", {"none"}},
      {"opacity", {"1"}},
      {"outline-style", {"none"}},
      {"text-decoration-line", {"none"}},
      {"transform", {"none"}},
      {"visibility", {"visible"}},
  });
}

bool DefaultsTable::is_default(const std::string& key,
                               const std::string& value) const {
  auto it = values_.find(key);
  return it != values_.end() && it->second.count(value) > 0;
}

DefaultsTable parse_defaults(std::string_view text) {
  auto doc = parse_json(text, "defaults table");
  if (!doc.is_object()) throw SnapshotParseError("defaults table must be an object");
  std::map<std::string, std::set<std::string>> values;
  for (const auto& [k, list] : doc.items()) {
    if (!list.is_array()) {
      throw SnapshotParseError("defaults for '" + k + "' must be a list");
    }
    auto& set = values[k];
    for (const auto& v : list) {
      if (!v.is_string()) {
        throw SnapshotParseError("defaults for '" + k + "' must be strings");
      }
      set.insert(v.get<std::string>());
    }
  }
  return DefaultsTable(std::move(values));
}

DefaultsTable load_defaults(const std::string& path) {
  return parse_defaults(read_file(path));
}

void validate_snapshot(const Snapshot& snapshot) {
  std::set<std::string> seen;
  for (const auto& node : snapshot.nodes) {
    auto canonical = format_xpath(parse_xpath(node.path));
    if (!seen.insert(canonical).second) {
      throw SnapshotParseError("duplicate path '" + node.path + "'");
    }
    if (node.width < 0 || node.height < 0) {
      throw SnapshotParseError("negative size for '" + node.path + "'");
    }
  }
}

Snapshot parse_snapshot(std::string_view text) {
  auto doc = parse_json(text, "snapshot");
  if (!doc.is_object()) throw SnapshotParseError("snapshot must be an object");
  auto nodes = doc.find("nodes");
  if (nodes == doc.end() || !nodes->is_array()) {
    throw SnapshotParseError("snapshot is missing a 'nodes' array");
  }
  Snapshot snapshot;
  snapshot.nodes.reserve(nodes->size());
  for (std::size_t i = 0; i < nodes->size(); ++i) {
    snapshot.nodes.push_back(node_from_json((*nodes)[i], i));
  }
  validate_snapshot(snapshot);
  return snapshot;
}

Snapshot load_snapshot(const std::string& path) {
  return parse_snapshot(read_file(path));
}

std::string serialize_snapshot(const Snapshot& snapshot) {
  json nodes = json::array();
  for (const auto& n : snapshot.nodes) {
    json node = {{"path", n.path},
                 {"html", n.html},
                 {"css", n.css},
                 {"rect", {{"x", n.x}, {"y", n.y}, {"w", n.width}, {"h", n.height}}}};
    if (n.text) node["text"] = *n.text;
    nodes.push_back(std::move(node));
  }
  return json{{"nodes", std::move(nodes)}}.dump() + "\n";
}

Construction construct_ags_with_warnings(const std::vector<SnapshotNode>& nodes,
                                         const DefaultsTable& defaults) {
  std::vector<Pending> pending;
  pending.reserve(nodes.size());
  for (const auto& n : nodes) pending.push_back({&n, parse_xpath(n.path), {}});
  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return document_before(a.segments, b.segments);
  });

  std::unordered_map<std::string, std::size_t> by_path;
  by_path.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!by_path.emplace(format_xpath(pending[i].segments), i).second) {
      throw SnapshotParseError("duplicate path '" + pending[i].node->path + "'");
    }
  }

  Construction out;
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    const auto& segs = pending[i].segments;
    std::optional<std::size_t> parent;
    for (std::size_t len = segs.size() - 1; len > 0 && !parent; --len) {
      std::vector<PathSegment> prefix(segs.begin(), segs.begin() + len);
      auto it = by_path.find(format_xpath(prefix));
      if (it != by_path.end()) {
        parent = it->second;
        if (len != segs.size() - 1) {
          out.orphans.push_back({pending[i].node->path, pending[it->second].node->path});
        }
      }
    }
    if (parent) {
      pending[*parent].children.push_back(i);
    } else {
      if (segs.size() > 1) out.orphans.push_back({pending[i].node->path, ""});
      roots.push_back(i);
    }
  }
  out.state.roots.reserve(roots.size());
  for (auto r : roots) out.state.roots.push_back(build(pending, r, defaults));
  return out;
}

GuiState construct_ags(const std::vector<SnapshotNode>& nodes,
                       const DefaultsTable& defaults) {
  return construct_ags_with_warnings(nodes, defaults).state;
}

}  // namespace agsdiff
