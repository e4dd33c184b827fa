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

#include <httplib.h>

#include <thread>

#include "molgx/error.hpp"
#include "molgx/service.hpp"

namespace molgx::service {

struct Server::Impl {
  Api api;
  httplib::Server http;
  std::thread thread;
  int port = 0;

  explicit Impl(ServiceConfig c) : api(std::move(c)) {
    auto forward = [this](const httplib::Request &in, httplib::Response &out) {
      Request req;
      req.method = in.method;
      req.path = in.path;
      for (const auto &[k, v] : in.params) req.query.emplace(k, v);
      req.body = in.body;
      req.authorization = in.get_header_value("Authorization");
      const Response r = api.handle(req);
      out.status = r.status;
      out.set_content(r.body, "application/json");
    };
    const std::string any = std::string(kApiPrefix) + "(/.*)?";
    http.Get(any, forward);
    http.Put(any, forward);
    http.Post(any, forward);
    http.Delete(any, forward);
  }
};

Server::Server(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {}

Server::~Server() { stop(); }

void Server::start() {
  const auto &c = impl_->api.config();
  if (c.port == 0) {
    impl_->port = impl_->http.bind_to_any_port(c.host);
  } else {
    impl_->port = impl_->http.bind_to_port(c.host, c.port) ? c.port : -1;
  }
  if (impl_->port <= 0)
    throw Error("cannot bind " + c.host + ":" + std::to_string(c.port));
  impl_->thread = std::thread([this] { impl_->http.listen_after_bind(); });
}

int Server::port() const { return impl_->port; }

void Server::stop() {
  impl_->http.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
  impl_->api.shutdown();
}

void Server::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace molgx::service
