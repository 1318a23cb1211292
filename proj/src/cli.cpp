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

#include "agsdiff/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "agsdiff/bench.hpp"
#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"
#include "agsdiff/maintenance.hpp"
#include "agsdiff/server.hpp"
#include "agsdiff/store.hpp"
#include "json.hpp"

namespace agsdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

int exit_code(ReportStatus status) {
  switch (status) {
    case ReportStatus::kOk:
      return kExitOk;
    case ReportStatus::kDifferences:
      return kExitDifferences;
    case ReportStatus::kGoldenMasterCreated:
      return kExitGoldenMasterCreated;
  }
  return kExitError;
}

int worst(const std::vector<DiffReport>& reports) {
  int code = kExitOk;
  for (const auto& r : reports) code = std::max(code, exit_code(r.status));
  return code;
}

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string suite;
  std::string strategy;
  std::optional<double> t;
  std::optional<double> u;
  std::string rules;

  void add_key_flags(CLI::App* app) {
    app->add_option("--strategy", strategy, "strong-weak, key-tests or matching");
    app->add_option("--t", t, "similarity threshold for key tests");
    app->add_option("--u", u, "match score threshold");
    app->add_option("--rules", rules, "filter rule file");
  }

  void add_suite_flag(CLI::App* app) {
    app->add_option("--suite", suite, "suite directory (default $AGSDIFF_SUITE)");
  }

  SuiteConfig apply(SuiteConfig cfg) const {
    if (!strategy.empty()) cfg.strategy = parse_strategy(strategy);
    if (t) cfg.keys.t = *t;
    if (u) cfg.keys.u = *u;
    cfg.keys.validate();
    return cfg;
  }

  FilterRuleSet rules_or(const FilterRuleSet& fallback) const {
    return rules.empty() ? fallback : load_rules(rules);
  }

  Suite open_suite() const {
    std::string root = suite;
    if (root.empty()) {
      const char* env = std::getenv("AGSDIFF_SUITE");
      if (env != nullptr) root = env;
    }
    if (root.empty()) throw UsageError("no suite given (use --suite or AGSDIFF_SUITE)");
    Suite s = Suite::open(root);
    s.set_config(apply(s.config()));
    if (!rules.empty()) s.set_rules(load_rules(rules));
    return s;
  }
};

DefaultsTable defaults_for(const SuiteConfig& cfg, const fs::path& root) {
  if (cfg.defaults_path.empty()) return DefaultsTable::builtin();
  fs::path p(cfg.defaults_path);
  return load_defaults((p.is_absolute() ? p : root / p).string());
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    if (comma > pos) out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

struct Selection {
  std::string report;
  std::string test;
  std::string step;
  std::optional<std::size_t> group;
  bool propagate = false;

  void add_flags(CLI::App* app) {
    app->add_option("--report", report, "report file to pick groups from");
    app->add_option("--test", test, "test id");
    app->add_option("--step", step, "step name");
    app->add_option("--group", group, "group index");
    app->add_flag("--propagate", propagate, "apply to every occurrence in the suite");
  }

  // Group list to pick from; occurrences are widened to the suite when
  // propagating.
  std::pair<ChangeSignature, std::vector<Occurrence>> resolve(const Suite& suite) const {
    if (!group) throw UsageError("--group is required");
    std::vector<DiffReport> source;
    const auto all = load_reports(suite);
    if (!report.empty()) {
      source.push_back(load_report(report));
    } else if (!test.empty() || !step.empty()) {
      for (const auto& r : all) {
        if ((test.empty() || r.test_id == test) && (step.empty() || r.step_name == step)) {
          source.push_back(r);
        }
      }
    } else {
      source = all;
    }
    const auto groups = group_changes(source);
    if (*group >= groups.size()) {
      throw UnknownElement("no group " + std::to_string(*group) + " (" +
                           std::to_string(groups.size()) + " groups)");
    }
    auto it = std::next(groups.begin(), static_cast<std::ptrdiff_t>(*group));
    auto occurrences = it->second;
    if (propagate) {
      const auto wide = group_changes(all);
      if (auto w = wide.find(it->first); w != wide.end()) {
        for (const auto& o : w->second) {
          if (std::find(occurrences.begin(), occurrences.end(), o) == occurrences.end()) {
            occurrences.push_back(o);
          }
        }
      }
    }
    return {it->first, occurrences};
  }
};

void print_summary(std::ostream& out, const DecisionSummary& s) {
  for (const auto& o : s.outcomes) {
    out << (o.applied ? "applied  " : "failed   ") << o.occurrence.test_id << " / "
        << o.occurrence.step_name;
    if (!o.error.empty()) out << ": " << o.error;
    out << "\n";
  }
  for (const auto& r : s.rules_added) out << "rule     " << r << "\n";
}

int decide(Suite& suite, const Selection& sel, Action action, std::ostream& out) {
  auto [signature, occurrences] = sel.resolve(suite);
  Decision d{signature, action, sel.propagate ? Scope::kPropagate : Scope::kSingle, ""};
  auto summary = apply_decision(suite, d, occurrences);
  print_summary(out, summary);
  recheck_all(suite);
  return summary.all_applied() ? kExitOk : kExitError;
}

}  // namespace

GuiState load_input_state(const std::string& path, const DefaultsTable& defaults,
                          std::vector<OrphanWarning>* orphans) {
  bool snapshot = ends_with(path, ".snap.json");
  if (!snapshot && !ends_with(path, ".ags.json")) {
    try {
      auto doc = json::parse(read_file(path));
      snapshot = doc.is_object() && doc.contains("nodes");
    } catch (const json::exception&) {
    }
  }
  if (!snapshot) return load_state(path);
  auto built = construct_ags_with_warnings(load_snapshot(path).nodes, defaults);
  if (orphans) *orphans = std::move(built.orphans);
  return std::move(built.state);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Golden master comparison of abstract GUI states", "agsdiff"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "agsdiff 0.1.0");

  Common common;
  int code = kExitOk;

  // check
  auto* check = app.add_subcommand("check", "compare a captured state against its golden master");
  std::string check_test, check_step, check_input, check_out;
  common.add_suite_flag(check);
  common.add_key_flags(check);
  check->add_option("--test", check_test, "test id")->required();
  check->add_option("--step", check_step, "step name")->required();
  check->add_option("--out", check_out, "also write the report here");
  check->add_option("snapshot", check_input, ".snap.json or .ags.json")->required();

  // diff
  auto* diff = app.add_subcommand("diff", "compare two states");
  std::string diff_a, diff_b, diff_out;
  bool diff_json = false;
  common.add_key_flags(diff);
  diff->add_option("expected", diff_a)->required();
  diff->add_option("actual", diff_b)->required();
  diff->add_option("--out", diff_out, "write the report here");
  diff->add_flag("--json", diff_json, "print the report as JSON");

  // accept
  auto* accept = app.add_subcommand("accept", "accept reported changes into golden masters");
  Selection accept_sel;
  bool accept_all_flag = false;
  common.add_suite_flag(accept);
  accept_sel.add_flags(accept);
  accept->add_flag("--all", accept_all_flag, "accept every change of the selected steps");

  // ignore
  auto* ignore = app.add_subcommand("ignore", "ignore reported changes via filter rules");
  Selection ignore_sel;
  std::string ignore_rule_line;
  common.add_suite_flag(ignore);
  ignore_sel.add_flags(ignore);
  ignore->add_option("--rule", ignore_rule_line, "append this rule line");

  // report
  auto* report = app.add_subcommand("report", "show stored reports");
  std::string report_file, report_test, report_step;
  bool report_json = false, report_groups = false;
  common.add_suite_flag(report);
  report->add_option("--report", report_file, "report file");
  report->add_option("--test", report_test, "test id");
  report->add_option("--step", report_step, "step name");
  report->add_flag("--json", report_json, "print JSON");
  report->add_flag("--groups", report_groups, "print change groups");

  // bench
  auto* bench = app.add_subcommand("bench", "run the mutation benchmark");
  BenchConfig bench_cfg;
  std::string bench_sizes, bench_strategies, bench_out, bench_json_out;
  bench->add_option("--pages", bench_cfg.pages, "number of pages")->check(CLI::PositiveNumber);
  bench->add_option("--sizes", bench_sizes, "comma-separated node counts");
  bench->add_option("--strategies", bench_strategies, "comma-separated strategies");
  bench->add_option("--reps", bench_cfg.repetitions, "repetitions")->check(CLI::PositiveNumber);
  bench->add_option("--seed", bench_cfg.seed, "base seed");
  bench->add_option("--t", common.t, "similarity threshold for key tests");
  bench->add_option("--u", common.u, "match score threshold");
  bench->add_option("--out", bench_out, "CSV output file (default stdout)");
  bench->add_option("--json", bench_json_out, "JSON aggregate output file");

  // serve
  auto* serve = app.add_subcommand("serve", "serve the review API");
  ServeOptions serve_opts;
  std::string serve_static;
  common.add_suite_flag(serve);
  serve->add_option("--port", serve_opts.port, "port (default 8123)");
  serve->add_option("--host", serve_opts.host, "bind address (default 127.0.0.1)");
  serve->add_option("--static", serve_static, "directory with the review UI");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "agsdiff 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "agsdiff: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (check->parsed()) {
      Suite suite = common.open_suite();
      std::vector<OrphanWarning> orphans;
      auto state = load_input_state(check_input, defaults_for(suite.config(), suite.root()),
                                    &orphans);
      for (const auto& o : orphans) {
        err << "warning: " << o.path << " has no parent in the snapshot; attached to "
            << (o.attached_to.empty() ? std::string("the root level") : o.attached_to) << "\n";
      }
      auto r = checkpoint(suite, {check_test, check_step}, state);
      if (!check_out.empty()) save_report(check_out, r);
      out << render_report_text(r);
      code = exit_code(r.status);
    } else if (diff->parsed()) {
      const SuiteConfig cfg = common.apply(SuiteConfig{});
      const FilterRuleSet rules = common.rules_or(FilterRuleSet{});
      const auto defaults = DefaultsTable::builtin();
      auto r = execute(load_input_state(diff_a, defaults), load_input_state(diff_b, defaults),
                       rules, cfg.strategy, cfg.keys);
      r.test_id = diff_a;
      r.step_name = diff_b;
      if (!diff_out.empty()) save_report(diff_out, r);
      out << (diff_json ? report_to_string(r) : render_report_text(r));
      code = exit_code(r.status);
    } else if (accept->parsed()) {
      Suite suite = common.open_suite();
      if (accept_all_flag) {
        std::vector<DiffReport> finals;
        for (const auto& r : load_reports(suite)) {
          if (!accept_sel.test.empty() && r.test_id != accept_sel.test) continue;
          if (!accept_sel.step.empty() && r.step_name != accept_sel.step) continue;
          if (r.status != ReportStatus::kDifferences) continue;
          finals.push_back(accept_all(suite, {r.test_id, r.step_name}));
          out << render_report_text(finals.back());
        }
        code = worst(finals);
      } else {
        code = decide(suite, accept_sel, Action::kAccept, out);
      }
    } else if (ignore->parsed()) {
      Suite suite = common.open_suite();
      if (!ignore_rule_line.empty()) {
        auto parsed = parse_rules(ignore_rule_line);
        if (parsed.rules().size() != 1) throw UsageError("--rule takes exactly one rule");
        auto lock = suite.lock_for_writing();
        suite.append_rule(parsed.rules().front());
        append_file(suite.journal_file().string(),
                    json{{"action", "ignore"},
                         {"edits", json::array({{{"op", "rule"},
                                                 {"line", parsed.rules().front().to_line()}}})}}
                            .dump() +
                        "\n");
        out << "rule     " << parsed.rules().front().to_line() << "\n";
        recheck_all(suite);
      } else {
        code = decide(suite, ignore_sel, Action::kIgnore, out);
      }
    } else if (report->parsed()) {
      std::vector<DiffReport> reports;
      if (!report_file.empty()) {
        reports.push_back(load_report(report_file));
      } else {
        Suite suite = common.open_suite();
        for (auto& r : load_reports(suite)) {
          if (!report_test.empty() && r.test_id != report_test) continue;
          if (!report_step.empty() && r.step_name != report_step) continue;
          reports.push_back(std::move(r));
        }
      }
      if (report_groups) {
        const auto groups = group_changes(reports);
        if (report_json) {
          out << groups_to_json(groups).dump(1) << "\n";
        } else {
          std::size_t id = 0;
          for (const auto& [sig, occ] : groups) {
            out << "[" << id++ << "] " << to_string(sig.kind);
            for (const auto& [k, v] : sig.identity) out << " " << k << "=" << v;
            if (!sig.key.empty()) {
              out << " " << sig.key << ": " << (sig.expected ? "'" + *sig.expected + "'" : "(absent)")
                  << " -> " << (sig.actual ? "'" + *sig.actual + "'" : "(absent)");
            }
            out << "  x" << occ.size() << "\n";
          }
        }
      } else if (report_json) {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        out << (arr.size() == 1 ? arr[0] : arr).dump(1) << "\n";
      } else {
        for (const auto& r : reports) out << render_report_text(r);
      }
      code = worst(reports);
    } else if (bench->parsed()) {
      if (!bench_sizes.empty()) {
        bench_cfg.sizes.clear();
        for (const auto& s : split_list(bench_sizes)) {
          try {
            bench_cfg.sizes.push_back(std::stoul(s));
          } catch (const std::exception&) {
            throw UsageError("bad page size '" + s + "'");
          }
        }
      }
      if (!bench_strategies.empty()) {
        bench_cfg.strategies.clear();
        for (const auto& s : split_list(bench_strategies)) {
          bench_cfg.strategies.push_back(parse_strategy(s));
        }
      }
      if (common.t) bench_cfg.keys.t = *common.t;
      if (common.u) bench_cfg.keys.u = *common.u;
      auto result = run_benchmark(bench_cfg);
      if (bench_out.empty()) {
        out << bench_csv(result);
      } else {
        write_file_atomic(bench_out, bench_csv(result));
      }
      if (!bench_json_out.empty()) write_file_atomic(bench_json_out, bench_json(result).dump(1) + "\n");
    } else if (serve->parsed()) {
      Suite suite = common.open_suite();
      serve_opts.static_dir = serve_static;
      ReviewServer server(std::move(suite), serve_opts);
      int port = server.bind();
      err << "serving on http://" << serve_opts.host << ":" << port << "/\n";
      server.listen();
    }
  } catch (const UsageError& e) {
    err << "agsdiff: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "agsdiff: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "agsdiff: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "agsdiff: " << e.what() << "\n";
    return kExitError;
  }
  return code;
}

}  // namespace agsdiff
