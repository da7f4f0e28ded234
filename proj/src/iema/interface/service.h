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

// Transport-independent HTTP API over in-memory sessions.
//
//   GET    /grammar                      grammar export
//   GET    /dataset/summary              dataset overview
//   POST   /sessions                     create; body {"seed": n} optional
//   GET    /sessions/{id}                bundle
//   GET    /sessions/{id}/next-steps     {"terminals": [...], "can_end": b}
//   POST   /sessions/{id}/steps          step request -> payload
//   DELETE /sessions/{id}/steps/last     undo
//   GET    /sessions/{id}/export.html    self-contained HTML export
//   GET    /                             UI asset page, when configured
//
// Errors use {"code", "message", "permitted_steps"?}: 404 for unknown
// sessions and routes, 409 for grammar violations and undo on an empty
// history, 422 for bad parameters and unavailable methods.
#ifndef IEMA_INTERFACE_SERVICE_H_
#define IEMA_INTERFACE_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "iema/data/dataset.h"
#include "iema/model/model.h"
#include "iema/session/session.h"

namespace iema::interface {

struct HttpRequest {
  std::string method;
  std::string path;
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

class Service {
 public:
  // "ui_script" is served inside an HTML page at "/" and inlined into HTML
  // exports; the built-in viewer is used when it is empty.
  Service(std::shared_ptr<const data::Dataset> dataset,
          model::ModelHandle model, session::SessionOptions defaults,
          std::string ui_script = {});

  // Thread-safe. Requests on one session are serialized in arrival order;
  // requests on distinct sessions run in parallel.
  HttpResponse Handle(const HttpRequest& request);

 private:
  struct Entry {
    explicit Entry(session::Session s) : session(std::move(s)) {}
    std::mutex mutex;
    session::Session session;
  };

  HttpResponse CreateSession(const std::string& body);
  HttpResponse HandleSession(const std::string& id, const std::string& rest,
                             const HttpRequest& request);
  std::shared_ptr<Entry> Find(const std::string& id);

  std::shared_ptr<const data::Dataset> dataset_;
  model::ModelHandle model_;
  session::SessionOptions defaults_;
  std::string ui_script_;
  std::string grammar_json_;
  std::string summary_json_;

  std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  uint64_t next_id_ = 0;
};

}  // namespace iema::interface

#endif  // IEMA_INTERFACE_SERVICE_H_
