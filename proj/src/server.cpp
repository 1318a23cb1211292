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

#include "agsdiff/server.hpp"

#include <atomic>

#include "agsdiff/errors.hpp"
#include "agsdiff/io.hpp"
#include "agsdiff/maintenance.hpp"
#include "httplib.h"

namespace agsdiff {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kStubPage =
    "<!doctype html>\n<html><head><meta charset=\"utf-8\"><title>agsdiff review</title></head>\n"
    "<body><h1>agsdiff review</h1>\n"
    "<p>No review UI is installed. The API is available under <code>/api/</code>:\n"
    "<a href=\"/api/groups\">groups</a>, <a href=\"/api/reports\">reports</a>.</p>\n"
    "</body></html>\n";

ApiResponse error(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

std::string query_value(const std::map<std::string, std::string>& q, const char* key) {
  auto it = q.find(key);
  return it == q.end() ? std::string{} : it->second;
}

json attributes_json(const AttributeSet& attrs) {
  json out = json::array();
  for (const auto& a : attrs) out.push_back({{"key", a.key}, {"value", a.value}});
  return out;
}

}  // namespace

ReviewApi::ReviewApi(Suite suite) : suite_(std::move(suite)) {}

ApiResponse ReviewApi::get_report(const std::map<std::string, std::string>& query) const {
  std::shared_lock lock(mutex_);
  const auto test = query_value(query, "test");
  const auto step = query_value(query, "step");
  auto reports = load_reports(suite_);
  if (!test.empty() || !step.empty()) {
    for (const auto& r : reports) {
      if ((test.empty() || r.test_id == test) && (step.empty() || r.step_name == step)) {
        return {200, report_to_json(r)};
      }
    }
    return error(404, "no report for test '" + test + "' step '" + step + "'");
  }
  for (const auto& r : reports) {
    if (r.status == ReportStatus::kDifferences) return {200, report_to_json(r)};
  }
  if (reports.empty()) return error(404, "the suite has no reports");
  return {200, report_to_json(reports.front())};
}

ApiResponse ReviewApi::get_reports() const {
  std::shared_lock lock(mutex_);
  json out = json::array();
  for (const auto& r : load_reports(suite_)) out.push_back(report_to_json(r));
  return {200, out};
}

ApiResponse ReviewApi::get_groups() const {
  std::shared_lock lock(mutex_);
  return {200, groups_to_json(group_changes(load_reports(suite_)))};
}

ApiResponse ReviewApi::get_element(const std::string& handle,
                                   const std::map<std::string, std::string>& query) const {
  std::shared_lock lock(mutex_);
  const auto test = query_value(query, "test");
  const auto step = query_value(query, "step");
  auto side = query_value(query, "side");
  if (side.empty()) side = "expected";
  if (side != "expected" && side != "actual") {
    return error(400, "side must be 'expected' or 'actual'");
  }
  for (const auto& key : suite_.steps()) {
    if ((!test.empty() && key.test_id != test) || (!step.empty() && key.step_name != step)) {
      continue;
    }
    std::optional<GuiState> state;
    if (side == "expected") {
      state = suite_.load_golden_master(key);
    } else {
      state = suite_.load_actual(key);
    }
    if (!state) continue;
    if (const Element* e = find_element(*state, handle)) {
      return {200,
              {{"test_id", key.test_id},
               {"step_name", key.step_name},
               {"side", side},
               {"handle", handle},
               {"attributes", attributes_json(e->attributes)},
               {"children", e->children.size()}}};
    }
  }
  return error(404, "no element '" + handle + "'");
}

ApiResponse ReviewApi::post_decision(const std::string& body) {
  std::unique_lock lock(mutex_);
  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error& e) {
    return error(400, std::string("malformed decision: ") + e.what());
  }
  if (!request.is_object()) return error(400, "malformed decision: expected an object");

  Decision decision;
  try {
    decision.action = parse_action(request.at("action").get<std::string>());
    decision.scope = parse_scope(request.value("scope", "propagate"));
  } catch (const json::exception& e) {
    return error(400, std::string("malformed decision: ") + e.what());
  } catch (const ParseError& e) {
    return error(400, std::string("malformed decision: ") + e.what());
  }

  const auto groups = group_changes(load_reports(suite_));
  const std::vector<Occurrence>* occurrences = nullptr;
  if (auto g = request.find("group"); g != request.end()) {
    if (!g->is_number_unsigned()) return error(400, "malformed decision: bad group");
    auto index = g->get<std::size_t>();
    if (index >= groups.size()) return error(404, "no group " + std::to_string(index));
    auto it = std::next(groups.begin(), static_cast<std::ptrdiff_t>(index));
    decision.signature = it->first;
    occurrences = &it->second;
  } else if (auto s = request.find("signature"); s != request.end()) {
    try {
      decision.signature = signature_from_json(*s);
    } catch (const ParseError& e) {
      return error(400, std::string("malformed decision: ") + e.what());
    }
    auto it = groups.find(decision.signature);
    if (it == groups.end()) return error(404, "unknown signature");
    occurrences = &it->second;
  } else {
    return error(400, "malformed decision: needs 'group' or 'signature'");
  }

  DecisionSummary summary;
  try {
    summary = apply_decision(suite_, decision, *occurrences);
  } catch (const SuiteLocked& e) {
    return error(409, e.what());
  }
  try {
    recheck_all(suite_);
  } catch (const SuiteLocked& e) {
    return error(409, e.what());
  }
  json statuses = json::array();
  for (const auto& r : load_reports(suite_)) {
    statuses.push_back({{"test_id", r.test_id},
                        {"step_name", r.step_name},
                        {"status", to_string(r.status)}});
  }
  const bool none_applied = std::none_of(summary.outcomes.begin(), summary.outcomes.end(),
                                         [](const OccurrenceOutcome& o) { return o.applied; });
  json out = {{"summary", summary_to_json(summary)},
              {"pending_groups", group_changes(load_reports(suite_)).size()},
              {"reports", std::move(statuses)}};
  if (none_applied && !summary.outcomes.empty()) {
    out["error"] = summary.outcomes.front().error;
    return {404, out};
  }
  return {200, out};
}

ApiResponse ReviewApi::handle(const std::string& method, const std::string& path,
                              const std::map<std::string, std::string>& query,
                              const std::string& body) {
  try {
    if (method == "GET") {
      if (path == "/api/report") return get_report(query);
      if (path == "/api/reports") return get_reports();
      if (path == "/api/groups") return get_groups();
      constexpr std::string_view prefix = "/api/element/";
      if (path.size() > prefix.size() && path.compare(0, prefix.size(), prefix) == 0) {
        return get_element(path.substr(prefix.size()), query);
      }
    } else if (method == "POST" && path == "/api/decision") {
      return post_decision(body);
    }
    return error(404, "no endpoint " + method + " " + path);
  } catch (const SuiteLocked& e) {
    return error(409, e.what());
  } catch (const Error& e) {
    return error(500, e.what());
  }
}

struct ReviewServer::Impl {
  ReviewApi api;
  ServeOptions options;
  httplib::Server server;
  int port = -1;

  Impl(Suite suite, ServeOptions o) : api(std::move(suite)), options(std::move(o)) {}
};

ReviewServer::ReviewServer(Suite suite, ServeOptions options)
    : impl_(std::make_unique<Impl>(std::move(suite), std::move(options))) {
  auto& server = impl_->server;
  auto* impl = impl_.get();
  auto dispatch = [impl](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    auto reply = impl->api.handle(req.method, req.path, query, req.body);
    res.status = reply.status;
    res.set_content(reply.body.dump(), "application/json; charset=utf-8");
  };
  server.Get(R"(/api/.*)", dispatch);
  server.Post(R"(/api/.*)", dispatch);
  if (!impl_->options.static_dir.empty()) {
    server.set_mount_point("/", impl_->options.static_dir.string());
  } else {
    server.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kStubPage, "text/html; charset=utf-8");
    });
  }
}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::bind() {
  if (impl_->port >= 0) return impl_->port;
  auto& o = impl_->options;
  if (o.port == 0) {
    impl_->port = impl_->server.bind_to_any_port(o.host);
  } else {
    impl_->port = impl_->server.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (impl_->port < 0) {
    throw StoreIOError("cannot bind " + o.host + ":" + std::to_string(o.port));
  }
  return impl_->port;
}

void ReviewServer::listen() {
  bind();
  impl_->server.listen_after_bind();
}

void ReviewServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace agsdiff
