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

// The `agsdiff` command line.
//
//   agsdiff check  --suite S --test T --step N SNAPSHOT
//   agsdiff diff   EXPECTED ACTUAL
//   agsdiff accept --suite S [--report R | --test T --step N] (--group I | --all) [--propagate]
//   agsdiff ignore --suite S [--report R | --test T --step N] (--group I | --rule LINE) [--propagate]
//   agsdiff report --suite S [--test T --step N] | --report R  [--json] [--groups]
//   agsdiff bench  [--pages N] [--sizes A,B] [--strategies X,Y] [--reps R] [--out CSV]
//   agsdiff serve  --suite S [--port P]
//
// Exit codes: 0 ok, 1 differences, 2 golden master created, 3 usage error,
// 4 any other error.

#include <iosfwd>
#include <string>
#include <vector>

#include "agsdiff/ags.hpp"
#include "agsdiff/snapshot.hpp"

namespace agsdiff {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDifferences = 1;
inline constexpr int kExitGoldenMasterCreated = 2;
inline constexpr int kExitUsage = 3;
inline constexpr int kExitError = 4;

// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads a `.snap.json` snapshot (converted with `defaults`) or an `.ags.json`
// state; other names are sniffed by content.
GuiState load_input_state(const std::string& path, const DefaultsTable& defaults,
                          std::vector<OrphanWarning>* orphans = nullptr);

}  // namespace agsdiff
