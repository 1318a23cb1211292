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

// Ingestion of browser DOM snapshots (`.snap.json`) and their conversion into
// an AGS. A snapshot is the flat per-node output of an in-browser attribute
// collector: absolute XPath, non-default HTML and CSS attributes, geometry and
// optional text.
//
//   {"nodes":[{"path":"/html[1]/body[1]/button[1]",
//              "html":{...}, "css":{...},
//              "rect":{"x":0,"y":0,"w":0,"h":0},
//              "text":"..."}, ...]}

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "agsdiff/ags.hpp"

namespace agsdiff {

struct PathSegment {
  std::string tag;
  std::uint32_t index = 1;  // 1-based

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

// Splits "/html[1]/body[1]" into segments. Throws SnapshotParseError.
std::vector<PathSegment> parse_xpath(std::string_view path);
std::string format_xpath(const std::vector<PathSegment>& segments);

struct SnapshotNode {
  std::string path;
  std::map<std::string, std::string> html;
  std::map<std::string, std::string> css;
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t width = 0;
  std::int64_t height = 0;
  std::optional<std::string> text;

  friend bool operator==(const SnapshotNode&, const SnapshotNode&) = default;
};

struct Snapshot {
  std::vector<SnapshotNode> nodes;

  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

// Attribute key -> values treated as defaults and dropped during
// construction.
class DefaultsTable {
 public:
  DefaultsTable() = default;
  explicit DefaultsTable(std::map<std::string, std::set<std::string>> values);

  // A small set of CSS initial values that no page needs to carry.
  static DefaultsTable builtin();

  bool is_default(const std::string& key, const std::string& value) const;
  const std::map<std::string, std::set<std::string>>& values() const {
    return values_;
  }

 private:
  std::map<std::string, std::set<std::string>> values_;
};

// JSON object mapping key -> list of default values. Throws
// SnapshotParseError.
DefaultsTable parse_defaults(std::string_view text);
DefaultsTable load_defaults(const std::string& path);

// Validates paths (well-formed and pairwise distinct) and geometry
// (non-negative width/height). Throws SnapshotParseError.
Snapshot parse_snapshot(std::string_view text);
Snapshot load_snapshot(const std::string& path);
std::string serialize_snapshot(const Snapshot& snapshot);
void validate_snapshot(const Snapshot& snapshot);

struct OrphanWarning {
  std::string path;
  // Nearest ancestor present in the snapshot, empty when attached as a root.
  std::string attached_to;

  friend bool operator==(const OrphanWarning&, const OrphanWarning&) = default;
};

struct Construction {
  GuiState state;
  std::vector<OrphanWarning> orphans;
};

// Builds the AGS. Each node becomes an element carrying its non-default HTML
// and CSS attributes plus the derived keys path, type, text, x, y, width and
// height; derived keys win over HTML/CSS keys of the same name, CSS wins
// over HTML. An element hangs below the node whose path is its longest proper
// path prefix present in the snapshot; siblings are ordered by XPath index,
// then tag.
Construction construct_ags_with_warnings(const std::vector<SnapshotNode>& nodes,
                                         const DefaultsTable& defaults);
GuiState construct_ags(const std::vector<SnapshotNode>& nodes,
                       const DefaultsTable& defaults);

}  // namespace agsdiff
