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

#include "agsdiff/ags.hpp"
#include "json.hpp"

namespace agsdiff {

nlohmann::json element_to_json(const Element& element);
nlohmann::json attributes_to_json(const AttributeSet& attributes);
nlohmann::json state_to_json(const GuiState& state);

Element element_from_json(const nlohmann::json& value);
GuiState state_from_json(const nlohmann::json& value);

}  // namespace agsdiff
