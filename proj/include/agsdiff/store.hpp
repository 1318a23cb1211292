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

// Golden master suite on disk and the checkpoint protocol.
//
// Layout:
//   <suite>/config                      suite configuration (key = value)
//   <suite>/recheck.ignore              filter rules
//   <suite>/index.json                  (test id, step name) -> file
//   <suite>/<test>/<step>.ags.json      golden masters (filtered states)
//   <suite>/.results/<test>/<step>.report.json       last report
//   <suite>/.results/<test>/<step>.actual.ags.json   last differing actual
//   <suite>/decisions.jsonl             decision journal
//   <suite>/.lock                       writer lock

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "agsdiff/ags.hpp"
#include "agsdiff/executor.hpp"
#include "agsdiff/filter_rules.hpp"
#include "agsdiff/identification.hpp"

namespace agsdiff {

struct SuiteConfig {
  Strategy strategy = Strategy::kMatching;
  KeyConfig keys = KeyConfig::defaults();
  // Relative paths resolve against the suite root.
  std::string rules_path = "recheck.ignore";
  std::string defaults_path;  // empty: built-in defaults table

  std::string to_text() const;
};

// `key = value` lines; `#` comments and `[section]` headers are skipped.
// Keys: strategy, strong_keys, weak_keys, extra_keys (lists either bare
// comma-separated or ["a", "b"]), t, u, rules, defaults. Throws ConfigError.
SuiteConfig parse_suite_config(std::string_view text);

struct StepKey {
  std::string test_id;
  std::string step_name;

  friend bool operator==(const StepKey&, const StepKey&) = default;
  friend auto operator<=>(const StepKey&, const StepKey&) = default;
};

// Replaces every byte outside [A-Za-z0-9._-] with '_'. Throws NameCollision
// for names that sanitize to nothing usable.
std::string sanitize_name(std::string_view name);

class Suite;

// Advisory writer lock on <suite>/.lock. Re-entrant for the owning thread.
class SuiteWriteLock {
 public:
  SuiteWriteLock(SuiteWriteLock&& other) noexcept;
  SuiteWriteLock& operator=(SuiteWriteLock&&) = delete;
  SuiteWriteLock(const SuiteWriteLock&) = delete;
  ~SuiteWriteLock();

 private:
  friend class Suite;
  struct Shared;
  explicit SuiteWriteLock(std::shared_ptr<Shared> shared);
  std::shared_ptr<Shared> shared_;
};

class Suite {
 public:
  // Opens (creating directories as needed) the suite at `root`, loading its
  // config and rule file. Throws StoreIOError / ConfigError /
  // RuleParseError.
  static Suite open(const std::filesystem::path& root);

  const std::filesystem::path& root() const { return root_; }
  const SuiteConfig& config() const { return config_; }
  const FilterRuleSet& rules() const { return rules_; }
  void reload_rules();
  // In-memory overrides (command-line flags); nothing is written.
  void set_config(SuiteConfig config) { config_ = std::move(config); }
  void set_rules(FilterRuleSet rules) { rules_ = std::move(rules); }

  std::filesystem::path rules_file() const;
  std::filesystem::path journal_file() const { return root_ / "decisions.jsonl"; }
  std::filesystem::path report_file(const StepKey& key) const;
  std::filesystem::path actual_file(const StepKey& key) const;
  std::optional<std::filesystem::path> golden_master_file(const StepKey& key) const;

  std::vector<StepKey> steps() const;
  bool has_golden_master(const StepKey& key) const;

  // Throws UnknownStep, CorruptGoldenMaster.
  GuiState load_golden_master(const StepKey& key) const;
  // Stores `state` as is (callers filter). Registers new steps in the index;
  // throws NameCollision when the sanitized file name already belongs to a
  // different step.
  void save_golden_master(const StepKey& key, const GuiState& state);

  // Last differing actual state of a step, if recorded.
  std::optional<GuiState> load_actual(const StepKey& key) const;

  void append_rule(const FilterRule& rule);

  // Throws SuiteLocked when another thread or process holds the lock, unless
  // `wait` is set, in which case it blocks until the lock is free.
  SuiteWriteLock lock_for_writing(bool wait = false) const;

 private:
  Suite() = default;
  void load_index();
  void write_index() const;

  std::filesystem::path root_;
  SuiteConfig config_;
  FilterRuleSet rules_;
  std::vector<std::pair<StepKey, std::string>> index_;
  std::shared_ptr<SuiteWriteLock::Shared> lock_;
};

// First run of a step: stores the filtered actual state as golden master and
// reports golden-master-created. Later runs compare against it. The report is
// persisted under .results, as is the actual state when it differs.
DiffReport checkpoint(Suite& suite, const StepKey& key, const GuiState& actual,
                      std::optional<Strategy> strategy = std::nullopt);

// Re-runs the comparison of a step against its recorded actual state (after
// decisions changed the golden master or the rules). Returns nullopt when no
// actual state is recorded.
std::optional<DiffReport> recheck(Suite& suite, const StepKey& key);

// Element of `state` addressed by a report handle: "@<n>" is the n-th element
// in pre-order, anything else the first element whose path equals the handle.
const Element* find_element(const GuiState& state, std::string_view handle);

// Sets (or, with nullopt, removes) one attribute of one golden master
// element. Throws UnknownStep, UnknownElement.
GuiState update_golden_master(Suite& suite, const StepKey& key,
                              std::string_view handle, const std::string& attribute,
                              const std::optional<std::string>& value);

}  // namespace agsdiff
