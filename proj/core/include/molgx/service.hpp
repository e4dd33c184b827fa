// Copyright 2026 The MolGX Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace molgx::service {

inline constexpr const char *kApiPrefix = "/api/v1";
inline constexpr int kSchemaVersion = 1;

struct ServiceConfig {
  std::string host = "127.0.0.1";
  /// 0 picks a free port.
  int port = 8080;
  std::filesystem::path data_dir = "molgx-data";
  /// Task workers; 0 means hardware threads minus one (at least 1).
  std::size_t workers = 0;
  /// Required as `Authorization: Bearer <token>` on non-GET routes when set.
  std::string auth_token;

  /// MOLGX_BIND (host[:port]), MOLGX_DATA_DIR, MOLGX_WORKERS, MOLGX_TOKEN
  /// over the defaults. Throws ConfigError on malformed values.
  static ServiceConfig from_env();
  std::size_t effective_workers() const;
};

struct Request {
  std::string method;
  /// Path without query string.
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
  std::string authorization;
};

struct Response {
  int status = 200;
  /// JSON document.
  std::string body;
};

/// Routes, document store and task workers without the network layer.
/// Layout under data_dir: datasets/*.csv (inputs), projects/, tasks/,
/// results/ and models/ (one JSON document each).
class Api {
 public:
  explicit Api(ServiceConfig config);
  ~Api();
  Api(const Api &) = delete;
  Api &operator=(const Api &) = delete;

  Response handle(const Request &req);

  /// Cancels running tasks and joins the workers.
  void shutdown();

  const ServiceConfig &config() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// HTTP front end over Api.
class Server {
 public:
  explicit Server(ServiceConfig config);
  ~Server();

  /// Binds and serves on a background thread. Throws Error when binding
  /// fails.
  void start();
  /// Bound port, valid after start().
  int port() const;
  void stop();
  /// Blocks until stop() or a signal handler stops the server.
  void wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace molgx::service
