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

#include "agsdiff/ags.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "agsdiff/ags_json.hpp"
#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"

namespace agsdiff {

using nlohmann::json;

const std::string* AttributeSet::find(std::string_view key) const {
  for (const auto& a : items_) {
    if (a.key == key) return &a.value;
  }
  return nullptr;
}

void AttributeSet::set(std::string key, std::string value) {
  for (auto& a : items_) {
    if (a.key == key) {
      a.value = std::move(value);
      return;
    }
  }
  auto pos = std::lower_bound(
      items_.begin(), items_.end(), key,
      [](const Attribute& a, const std::string& k) { return a.key < k; });
  items_.insert(pos, Attribute{std::move(key), std::move(value)});
}

bool AttributeSet::erase(std::string_view key) {
  auto removed = std::erase_if(items_,
                               [&](const Attribute& a) { return a.key == key; });
  return removed > 0;
}

bool AttributeSet::has_distinct_keys() const {
  if (items_.size() < 2) return true;
  std::vector<std::string_view> keys;
  keys.reserve(items_.size());
  for (const auto& a : items_) keys.emplace_back(a.key);
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

bool AttributeSet::is_sorted() const {
  return std::is_sorted(
      items_.begin(), items_.end(),
      [](const Attribute& a, const Attribute& b) { return a.key < b.key; });
}

void AttributeSet::sort_canonical() {
  std::stable_sort(
      items_.begin(), items_.end(),
      [](const Attribute& a, const Attribute& b) { return a.key < b.key; });
  auto dup = std::adjacent_find(
      items_.begin(), items_.end(),
      [](const Attribute& a, const Attribute& b) { return a.key == b.key; });
  if (dup != items_.end()) {
    throw WellFormednessViolation("duplicate attribute key '" + dup->key + "'");
  }
}

bool is_well_formed(const Element& element) {
  if (!element.attributes.has_distinct_keys()) return false;
  return std::all_of(element.children.begin(), element.children.end(),
                     [](const Element& c) { return is_well_formed(c); });
}

bool is_well_formed(const GuiState& state) {
  return std::all_of(state.roots.begin(), state.roots.end(),
                     [](const Element& e) { return is_well_formed(e); });
}

namespace {

void check_element(const Element& element) {
  if (!element.attributes.has_distinct_keys()) {
    std::set<std::string_view> seen;
    for (const auto& a : element.attributes) {
      if (!seen.insert(a.key).second) {
        throw WellFormednessViolation("duplicate attribute key '" + a.key +
                                      "'");
      }
    }
  }
  for (const auto& child : element.children) check_element(child);
}

void canonicalize_in_place(Element& element) {
  element.attributes.sort_canonical();
  for (auto& child : element.children) canonicalize_in_place(child);
}

void visit_element(
    const Element& element, std::size_t depth,
    const std::function<void(const Element&, std::size_t)>& visit) {
  visit(element, depth);
  for (const auto& child : element.children) {
    visit_element(child, depth + 1, visit);
  }
}

// Offset to 1-based line/column.
std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void schema_error(const std::string& where,
                               const std::string& what) {
  throw ParseError("AGS schema: " + what + " at " + where, 0, 0);
}

Element element_from_json_at(const json& value, const std::string& where) {
  if (!value.is_object()) schema_error(where, "element must be an object");
  Element element;
  for (const auto& [name, field] : value.items()) {
    if (name == "attributes") {
      if (!field.is_object()) {
        schema_error(where + "/attributes", "attributes must be an object");
      }
      std::vector<Attribute> attrs;
      attrs.reserve(field.size());
      for (const auto& [key, v] : field.items()) {
        if (key.empty()) schema_error(where + "/attributes", "empty key");
        if (!v.is_string()) {
          schema_error(where + "/attributes/" + key,
                       "attribute value must be a string");
        }
        attrs.push_back({key, v.get<std::string>()});
      }
      element.attributes = AttributeSet(std::move(attrs));
    } else if (name == "children") {
      if (!field.is_array()) {
        schema_error(where + "/children", "children must be an array");
      }
      element.children.reserve(field.size());
      for (std::size_t i = 0; i < field.size(); ++i) {
        element.children.push_back(element_from_json_at(
            field[i], where + "/children/" + std::to_string(i)));
      }
    } else {
      schema_error(where, "unknown field '" + name + "'");
    }
  }
  return element;
}

}  // namespace

void require_well_formed(const GuiState& state) {
  for (const auto& root : state.roots) check_element(root);
}

void require_well_formed(const Element& element) { check_element(element); }

Element canonicalize(Element element) {
  canonicalize_in_place(element);
  return element;
}

GuiState canonicalize(GuiState state) {
  for (auto& root : state.roots) canonicalize_in_place(root);
  return state;
}

std::size_t node_count(const Element& element) {
  std::size_t n = 1;
  for (const auto& child : element.children) n += node_count(child);
  return n;
}

std::size_t node_count(const GuiState& state) {
  std::size_t n = 0;
  for (const auto& root : state.roots) n += node_count(root);
  return n;
}

void for_each_element(
    const GuiState& state,
    const std::function<void(const Element&, std::size_t)>& visit) {
  for (const auto& root : state.roots) visit_element(root, 0, visit);
}

json attributes_to_json(const AttributeSet& attributes) {
  json out = json::object();
  for (const auto& a : attributes) out[a.key] = a.value;
  return out;
}

json element_to_json(const Element& element) {
  json children = json::array();
  for (const auto& child : element.children) {
    children.push_back(element_to_json(child));
  }
  return json{{"attributes", attributes_to_json(element.attributes)},
              {"children", std::move(children)}};
}

json state_to_json(const GuiState& state) {
  require_well_formed(state);
  json roots = json::array();
  for (const auto& root : state.roots) roots.push_back(element_to_json(root));
  return json{{"roots", std::move(roots)}};
}

Element element_from_json(const json& value) {
  Element element = element_from_json_at(value, "/");
  return canonicalize(std::move(element));
}

GuiState state_from_json(const json& value) {
  if (!value.is_object()) schema_error("/", "document must be an object");
  GuiState state;
  bool has_roots = false;
  for (const auto& [name, field] : value.items()) {
    if (name != "roots") schema_error("/", "unknown field '" + name + "'");
    if (!field.is_array()) schema_error("/roots", "roots must be an array");
    has_roots = true;
    state.roots.reserve(field.size());
    for (std::size_t i = 0; i < field.size(); ++i) {
      state.roots.push_back(
          element_from_json_at(field[i], "/roots/" + std::to_string(i)));
    }
  }
  if (!has_roots) schema_error("/", "missing 'roots'");
  return canonicalize(std::move(state));
}

std::string serialize(const GuiState& state) {
  return state_to_json(state).dump();
}

std::string serialize_pretty(const GuiState& state) {
  return state_to_json(state).dump(1) + "\n";
}

GuiState deserialize(std::string_view text) {
  // nlohmann keeps the last of duplicate object keys; the callback tracks key
  // sets per open object so duplicates are rejected instead.
  struct Frame {
    std::set<std::string> keys;
    std::string last_key;
    bool is_object = false;
  };
  std::vector<Frame> frames;
  auto callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        frames.push_back(Frame{{}, {}, true});
        break;
      case json::parse_event_t::array_start:
        frames.push_back(Frame{});
        break;
      case json::parse_event_t::object_end:
      case json::parse_event_t::array_end:
        if (!frames.empty()) frames.pop_back();
        break;
      case json::parse_event_t::key: {
        auto& frame = frames.back();
        auto key = parsed.get<std::string>();
        if (!frame.keys.insert(key).second) {
          bool in_attributes =
              frames.size() >= 2 && frames[frames.size() - 2].is_object &&
              frames[frames.size() - 2].last_key == "attributes";
          if (in_attributes) {
            throw WellFormednessViolation("duplicate attribute key '" + key +
                                          "'");
          }
          throw ParseError("duplicate object key '" + key + "'", 0, 0);
        }
        frame.last_key = std::move(key);
        break;
      }
      case json::parse_event_t::value:
        break;
    }
    return true;
  };
  json doc;
  try {
    doc = json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    auto [line, column] = locate(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(e.what(), line, column);
  }
  return state_from_json(doc);
}

GuiState load_state(const std::string& path) {
  return deserialize(read_file(path));
}

void save_state(const std::string& path, const GuiState& state) {
  write_file_atomic(path, serialize_pretty(canonicalize(state)));
}

}  // namespace agsdiff
