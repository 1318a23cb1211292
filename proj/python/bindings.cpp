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

// Python extension module agsdiff._core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "agsdiff/bench.hpp"
#include "agsdiff/cli.hpp"
#include "agsdiff/errors.hpp"
#include "agsdiff/executor.hpp"
#include "agsdiff/maintenance.hpp"
#include "agsdiff/similarity.hpp"
#include "agsdiff/snapshot.hpp"
#include "agsdiff/store.hpp"

namespace py = pybind11;
using namespace agsdiff;

namespace {

KeyConfig key_config(std::optional<std::vector<std::string>> strong, std::optional<std::vector<std::string>> weak,
                     std::optional<std::vector<std::string>> extra, std::optional<double> t,
                     std::optional<double> u) {
  auto cfg = KeyConfig::defaults();
  if (strong) cfg.strong_keys = {strong->begin(), strong->end()};
  if (weak) cfg.weak_keys = {weak->begin(), weak->end()};
  if (extra) cfg.matching_extra_keys = {extra->begin(), extra->end()};
  if (t) cfg.t = *t;
  if (u) cfg.u = *u;
  cfg.validate();
  return cfg;
}

GuiState state_of(const std::string& text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_object() && doc.contains("nodes")) {
    return construct_ags(parse_snapshot(text).nodes, DefaultsTable::builtin());
  }
  return deserialize(text);
}

std::vector<std::string> handles(const std::vector<ExtractedElement>& elements) {
  std::vector<std::string> out;
  for (const auto& e : elements) out.push_back(e.handle);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Golden master comparison of abstract GUI states";

  auto error = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<WellFormednessViolation>(m, "WellFormednessViolation", error.ptr());
  py::register_exception<RuleParseError>(m, "RuleParseError", error.ptr());
  py::register_exception<SnapshotParseError>(m, "SnapshotParseError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<SuiteLocked>(m, "SuiteLocked", error.ptr());

  m.def("jaro", [](const std::string& a, const std::string& b) { return jaro(a, b); });
  m.def("jaro_winkler", [](const std::string& a, const std::string& b) { return jaro_winkler(a, b); });

  m.def("canonical", [](const std::string& text) { return serialize(canonicalize(deserialize(text))); },
        "Parse an AGS document and return it in canonical form.");
  m.def(
      "construct_ags",
      [](const std::string& snapshot, std::optional<std::string> defaults) {
        const auto table = defaults ? parse_defaults(*defaults) : DefaultsTable::builtin();
        return serialize(construct_ags(parse_snapshot(snapshot).nodes, table));
      },
      py::arg("snapshot"), py::arg("defaults") = py::none());

  m.def(
      "execute",
      [](const std::string& expected, const std::string& actual, const std::string& rules,
         const std::string& strategy, std::optional<std::vector<std::string>> strong,
         std::optional<std::vector<std::string>> weak, std::optional<std::vector<std::string>> extra,
         std::optional<double> t, std::optional<double> u) {
        const auto cfg = key_config(strong, weak, extra, t, u);
        return report_to_string(
            execute(state_of(expected), state_of(actual), parse_rules(rules), parse_strategy(strategy), cfg));
      },
      py::arg("expected"), py::arg("actual"), py::arg("rules") = "", py::arg("strategy") = "matching",
      py::arg("strong_keys") = py::none(), py::arg("weak_keys") = py::none(), py::arg("extra_keys") = py::none(),
      py::arg("t") = py::none(), py::arg("u") = py::none(), "Compare two states; returns the report as JSON.");

  m.def(
      "identify",
      [](const std::string& expected, const std::string& actual, const std::string& strategy,
         std::optional<std::vector<std::string>> strong, std::optional<std::vector<std::string>> weak,
         std::optional<std::vector<std::string>> extra, std::optional<double> t, std::optional<double> u) {
        const auto cfg = key_config(strong, weak, extra, t, u);
        auto r = identify(state_of(expected), state_of(actual), parse_strategy(strategy), cfg);
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& [e, a] : r.maintained) pairs.emplace_back(e.handle, a.handle);
        py::dict out;
        out["deleted"] = handles(r.deleted);
        out["created"] = handles(r.created);
        out["maintained"] = pairs;
        return out;
      },
      py::arg("expected"), py::arg("actual"), py::arg("strategy") = "matching", py::arg("strong_keys") = py::none(),
      py::arg("weak_keys") = py::none(), py::arg("extra_keys") = py::none(), py::arg("t") = py::none(),
      py::arg("u") = py::none());

  m.def(
      "checkpoint",
      [](const std::string& suite_dir, const std::string& test, const std::string& step, const std::string& state) {
        auto suite = Suite::open(suite_dir);
        return report_to_string(checkpoint(suite, {test, step}, state_of(state)));
      },
      py::arg("suite"), py::arg("test"), py::arg("step"), py::arg("state"));

  m.def(
      "groups",
      [](const std::string& suite_dir) {
        return groups_to_json(group_changes(load_reports(Suite::open(suite_dir)))).dump();
      },
      py::arg("suite"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));

  m.def(
      "bench",
      [](std::size_t pages, std::vector<std::size_t> sizes, std::vector<std::string> strategies,
         std::size_t repetitions, std::uint64_t seed) {
        BenchConfig cfg;
        cfg.pages = pages;
        cfg.sizes = std::move(sizes);
        cfg.strategies.clear();
        for (const auto& s : strategies) cfg.strategies.push_back(parse_strategy(s));
        cfg.repetitions = repetitions;
        cfg.seed = seed;
        BenchResult result;
        {
          py::gil_scoped_release release;
          result = run_benchmark(cfg);
        }
        return bench_json(result).dump();
      },
      py::arg("pages") = 2, py::arg("sizes") = std::vector<std::size_t>{200},
      py::arg("strategies") = std::vector<std::string>{"strong-weak", "key-tests", "matching"},
      py::arg("repetitions") = 1, py::arg("seed") = 1);

  m.attr("__version__") = "0.1.0";
}
