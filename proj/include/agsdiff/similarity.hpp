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

#include <string_view>

namespace agsdiff {

// Jaro similarity over bytes. Two empty strings are identical (1.0); an empty
// string against a non-empty one scores 0.0.
double jaro(std::string_view a, std::string_view b);

// Jaro-Winkler similarity: Jaro plus a common-prefix boost (prefix of at most
// 4 bytes, scale 0.1) applied when the Jaro score exceeds 0.7. Symmetric and
// within [0, 1].
double jaro_winkler(std::string_view a, std::string_view b);

}  // namespace agsdiff
