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

// Accept/ignore decisions on reported changes and their propagation to every
// occurrence of the same change across tests.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agsdiff/executor.hpp"
#include "agsdiff/store.hpp"
#include "json.hpp"

namespace agsdiff {

enum class ChangeKind { kAttribute, kDeleted, kCreated };

const char* to_string(ChangeKind kind);
ChangeKind parse_change_kind(std::string_view name);

struct ChangeSignature {
  // Strong-key values of the element other than `path`; {"path": ...} when
  // the element carries none of them.
  std::map<std::string, std::string> identity;
  ChangeKind kind = ChangeKind::kAttribute;
  std::string key;  // empty for deleted/created elements
  std::optional<std::string> expected;
  std::optional<std::string> actual;

  friend bool operator==(const ChangeSignature&, const ChangeSignature&) = default;
  friend auto operator<=>(const ChangeSignature&, const ChangeSignature&) = default;
};

nlohmann::json signature_to_json(const ChangeSignature& signature);
// Throws ParseError.
ChangeSignature signature_from_json(const nlohmann::json& value);

struct Occurrence {
  std::string test_id;
  std::string step_name;
  std::string expected_handle;  // empty for created elements
  std::string actual_handle;    // empty for deleted elements

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

using ChangeGroups = std::map<ChangeSignature, std::vector<Occurrence>>;

// One signature per attribute difference, deleted and created element.
// Occurrences keep report order.
ChangeGroups group_changes(const std::vector<DiffReport>& reports);

nlohmann::json groups_to_json(const ChangeGroups& groups);

enum class Action { kAccept, kIgnore };
enum class Scope { kSingle, kPropagate };

const char* to_string(Action action);
const char* to_string(Scope scope);
// Throw ParseError.
Action parse_action(std::string_view name);
Scope parse_scope(std::string_view name);

struct Decision {
  ChangeSignature signature;
  Action action = Action::kAccept;
  Scope scope = Scope::kPropagate;
  std::string timestamp;  // ISO 8601 UTC; filled in when empty
};

struct OccurrenceOutcome {
  Occurrence occurrence;
  bool applied = false;
  std::string error;
};

struct DecisionSummary {
  std::vector<OccurrenceOutcome> outcomes;
  std::vector<std::string> rules_added;
  std::vector<StepKey> updated_steps;

  bool all_applied() const;
};

nlohmann::json summary_to_json(const DecisionSummary& summary);

// Applies `decision` to `occurrences` (all of them for propagate, the first
// one otherwise) under the suite writer lock and appends a journal entry
// with the resolved edits. Failures (UnknownStep, UnknownElement) are
// recorded per occurrence and do not roll back the others. Throws
// SuiteLocked.
DecisionSummary apply_decision(Suite& suite, const Decision& decision,
                               const std::vector<Occurrence>& occurrences);

// Re-applies every journaled edit in order. Edits are not journaled again.
void replay_journal(Suite& suite, const std::filesystem::path& journal);

// Reports currently stored for the suite's steps, in step order.
std::vector<DiffReport> load_reports(const Suite& suite);

// Rechecks every step with a recorded actual state.
std::vector<DiffReport> recheck_all(Suite& suite);

// Accepts every reported change of one step, one group at a time, rechecking
// in between. Returns the final report.
DiffReport accept_all(Suite& suite, const StepKey& key, int max_rounds = 1000);

}  // namespace agsdiff
