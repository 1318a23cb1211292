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

// Abstract GUI state (AGS): a platform-independent tree of elements, each an
// attribute set plus an ordered list of children.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace agsdiff {

struct Attribute {
  std::string key;
  std::string value;

  friend bool operator==(const Attribute&, const Attribute&) = default;
  friend auto operator<=>(const Attribute&, const Attribute&) = default;
};

// Attributes of a single element. Storage is a plain sequence so that
// malformed input (duplicate keys) stays representable and detectable; the
// mutating helpers keep a canonical (key-sorted, duplicate-free) set canonical.
class AttributeSet {
 public:
  using const_iterator = std::vector<Attribute>::const_iterator;

  AttributeSet() = default;
  AttributeSet(std::initializer_list<Attribute> attributes)
      : items_(attributes) {}
  explicit AttributeSet(std::vector<Attribute> attributes)
      : items_(std::move(attributes)) {}

  const std::vector<Attribute>& items() const { return items_; }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  // First value stored under `key`, or nullptr.
  const std::string* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  // Replaces the value of `key` or inserts it at its sorted position.
  void set(std::string key, std::string value);
  // Removes every attribute with `key`; returns whether one was removed.
  bool erase(std::string_view key);

  bool has_distinct_keys() const;
  bool is_sorted() const;
  // Sorts by key ascending (byte-wise). Throws WellFormednessViolation on a
  // duplicate key.
  void sort_canonical();

  friend bool operator==(const AttributeSet&, const AttributeSet&) = default;

 private:
  std::vector<Attribute> items_;
};

struct Element {
  AttributeSet attributes;
  std::vector<Element> children;

  friend bool operator==(const Element&, const Element&) = default;
};

struct GuiState {
  std::vector<Element> roots;

  friend bool operator==(const GuiState&, const GuiState&) = default;
};

bool is_well_formed(const Element& element);
bool is_well_formed(const GuiState& state);

// Throws WellFormednessViolation naming the offending key.
void require_well_formed(const GuiState& state);
void require_well_formed(const Element& element);

Element canonicalize(Element element);
GuiState canonicalize(GuiState state);

// Total number of elements in the tree.
std::size_t node_count(const GuiState& state);
std::size_t node_count(const Element& element);

// Pre-order traversal. `depth` is 0 for roots.
void for_each_element(
    const GuiState& state,
    const std::function<void(const Element&, std::size_t depth)>& visit);

// Compact JSON in the `.ags.json` schema, keys sorted ascending. Throws
// WellFormednessViolation for malformed input.
std::string serialize(const GuiState& state);
std::string serialize_pretty(const GuiState& state);

// Throws ParseError (with line/column) for malformed JSON or schema
// violations and WellFormednessViolation for duplicate attribute keys.
GuiState deserialize(std::string_view text);

GuiState load_state(const std::string& path);
// Atomic write (temporary file plus rename).
void save_state(const std::string& path, const GuiState& state);

}  // namespace agsdiff
