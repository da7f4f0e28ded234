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

#ifndef IEMA_INTERFACE_HTTP_SERVER_H_
#define IEMA_INTERFACE_HTTP_SERVER_H_

#include <memory>
#include <string>
#include <thread>

#include "absl/status/status.h"
#include "iema/interface/service.h"

namespace httplib {
class Server;
}

namespace iema::interface {

// Serves a Service over HTTP/1.1 on a background thread.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port; see port().
  absl::Status Start(const std::string& host, int port);
  // Blocks until the server stops.
  void Wait();
  // Asks the server to stop; Wait() or the destructor joins it.
  void Stop();
  int port() const { return port_; }

 private:
  Service& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace iema::interface

#endif  // IEMA_INTERFACE_HTTP_SERVER_H_
