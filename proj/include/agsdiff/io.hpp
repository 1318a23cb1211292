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

#include <string>

namespace agsdiff {

// Reads a whole file. Throws StoreIOError.
std::string read_file(const std::string& path);

// Writes `content` to a temporary sibling and renames it over `path`, so a
// reader never observes a partially written file. Throws StoreIOError.
void write_file_atomic(const std::string& path, const std::string& content);

// Appends to `path`, creating it when missing. Throws StoreIOError.
void append_file(const std::string& path, const std::string& content);

}  // namespace agsdiff
