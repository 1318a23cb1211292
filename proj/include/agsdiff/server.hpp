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

// Local HTTP API over a suite for interactive review.
//
//   GET  /api/report[?test=&step=]   one DiffReport
//   GET  /api/reports                all stored reports
//   GET  /api/groups                 pending changes grouped by signature
//   GET  /api/element/<handle>[?test=&step=&side=expected|actual]
//   POST /api/decision               {"group": n | "signature": {...},
//                                     "action": "accept"|"ignore",
//                                     "scope": "single"|"propagate"}
//   GET  /                           review UI (static directory) or a stub

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "agsdiff/store.hpp"
#include "json.hpp"

namespace agsdiff {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

// Request handling without sockets. Reports are read from disk per request;
// decisions are serialized and rechecks run after each one.
class ReviewApi {
 public:
  explicit ReviewApi(Suite suite);

  ApiResponse get_report(const std::map<std::string, std::string>& query) const;
  ApiResponse get_reports() const;
  ApiResponse get_groups() const;
  ApiResponse get_element(const std::string& handle,
                          const std::map<std::string, std::string>& query) const;
  ApiResponse post_decision(const std::string& body);

  // Dispatches on method and path ("/api/...").
  ApiResponse handle(const std::string& method, const std::string& path,
                     const std::map<std::string, std::string>& query,
                     const std::string& body);

 private:
  Suite suite_;
  mutable std::shared_mutex mutex_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8123;  // 0 picks a free port
  std::filesystem::path static_dir;  // empty: built-in stub page
};

class ReviewServer {
 public:
  ReviewServer(Suite suite, ServeOptions options);
  ~ReviewServer();
  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  // Binds the socket and returns the port. Throws StoreIOError.
  int bind();
  // Serves until stop(); binds first if needed.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace agsdiff
