/*
 * Copyright 2026 The IEMA Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "iema/interface/http_server.h"

#include "fmt/format.h"
#include "httplib.h"

namespace iema::interface {

HttpServer::HttpServer(Service& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto handler = [this](const httplib::Request& request,
                        httplib::Response& response) {
    const HttpResponse result =
        service_.Handle({request.method, request.path, request.body});
    response.status = result.status;
    response.set_content(result.body, result.content_type);
  };
  const char* kAny = R"(/.*)";
  server_->Get(kAny, handler);
  server_->Post(kAny, handler);
  server_->Delete(kAny, handler);
  server_->Put(kAny, handler);
  server_->Patch(kAny, handler);
}

HttpServer::~HttpServer() {
  Stop();
  Wait();
}

absl::Status HttpServer::Start(const std::string& host, int port) {
  if (port < 0 || port > 65535) {
    return absl::InvalidArgumentError(
        fmt::format("port {} is outside [1, 65535]", port));
  }
  if (port == 0) {
    port_ = server_->bind_to_any_port(host);
    if (port_ < 0) {
      return absl::UnavailableError(fmt::format("cannot bind to {}", host));
    }
  } else {
    if (!server_->bind_to_port(host, port)) {
      return absl::UnavailableError(
          fmt::format("cannot bind to {}:{}", host, port));
    }
    port_ = port;
  }
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
  return absl::OkStatus();
}

void HttpServer::Wait() {
  if (thread_.joinable()) thread_.join();
}

void HttpServer::Stop() {
  if (server_->is_running()) server_->stop();
}

}  // namespace iema::interface
