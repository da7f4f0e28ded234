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

#include "iema/interface/service.h"

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/grammar/iema_grammar.h"
#include "iema/interface/html_export.h"
#include "iema/session/bundle.h"
#include "iema/session/payload_json.h"
#include "json.hpp"

namespace iema::interface {
namespace {

using nlohmann::json;

HttpResponse Json(int status, const json& body) {
  return {status, session::SerializeBundle(body)};
}

HttpResponse Error(int status, std::string_view code, std::string_view message,
                   const std::vector<std::string>* permitted = nullptr) {
  json body = {{"code", code}, {"message", message}};
  if (permitted != nullptr) body["permitted_steps"] = *permitted;
  return Json(status, body);
}

HttpResponse FromStatus(const absl::Status& status) {
  const std::string message(status.message());
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return Error(404, "not_found", message);
    case absl::StatusCode::kFailedPrecondition:
      return Error(409, "conflict", message);
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kUnimplemented:
      return Error(422, "invalid_parameters", message);
    default:
      return Error(500, "internal", message);
  }
}

json NextStepsJson(const session::Session& session) {
  const session::StepSuggestions next = session.NextSteps();
  return {{"terminals", next.terminals}, {"can_end", next.can_end}};
}

}  // namespace

Service::Service(std::shared_ptr<const data::Dataset> dataset,
                 model::ModelHandle model, session::SessionOptions defaults,
                 std::string ui_script)
    : dataset_(std::move(dataset)),
      model_(std::move(model)),
      defaults_(defaults),
      ui_script_(std::move(ui_script)),
      grammar_json_(session::SerializeBundle(grammar::IemaGrammar().ToJson())),
      summary_json_(
          session::SerializeBundle(session::DatasetSummaryJson(*dataset_))) {}

HttpResponse Service::Handle(const HttpRequest& request) {
  const std::string& path = request.path;
  const std::string& method = request.method;
  if (path == "/grammar" || path == "/dataset/summary" || path == "/") {
    if (method != "GET") return Error(405, "method_not_allowed", method);
    if (path == "/grammar") return {200, grammar_json_};
    if (path == "/dataset/summary") return {200, summary_json_};
    return {200,
            fmt::format("<!DOCTYPE html>\n<html><head><meta charset=\"utf-8\">"
                        "<title>IEMA</title></head><body><div id=\"app\"></div>"
                        "<script>{}</script></body></html>\n",
                        ui_script_.empty() ? BuiltinViewerScript()
                                           : std::string_view(ui_script_)),
            "text/html; charset=utf-8"};
  }
  if (path == "/sessions") {
    if (method != "POST") return Error(405, "method_not_allowed", method);
    return CreateSession(request.body);
  }
  constexpr std::string_view kPrefix = "/sessions/";
  if (path.rfind(kPrefix, 0) == 0) {
    const size_t slash = path.find('/', kPrefix.size());
    const std::string id = path.substr(
        kPrefix.size(), slash == std::string::npos ? std::string::npos
                                                   : slash - kPrefix.size());
    const std::string rest =
        slash == std::string::npos ? "" : path.substr(slash);
    return HandleSession(id, rest, request);
  }
  return Error(404, "not_found", fmt::format("no route for {}", path));
}

HttpResponse Service::CreateSession(const std::string& body) {
  session::SessionOptions options = defaults_;
  if (!body.empty()) {
    const json parsed = json::parse(body, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_object()) {
      return Error(400, "bad_request", "body must be a JSON object");
    }
    if (const auto seed = parsed.find("seed"); seed != parsed.end()) {
      if (!seed->is_number_unsigned()) {
        return Error(422, "invalid_parameters",
                     "\"seed\" must be a non-negative integer");
      }
      options.seed = seed->get<uint64_t>();
    }
  }
  auto created = session::Session::Create(dataset_, model_, options);
  if (!created.ok()) return FromStatus(created.status());
  std::lock_guard<std::mutex> lock(registry_mutex_);
  const std::string id =
      fmt::format("{:016x}", DeriveSeed(0x1e3a5e55, next_id_++));
  sessions_[id] = std::make_shared<Entry>(*std::move(created));
  json response = {{"id", id}};
  return Json(201, response);
}

std::shared_ptr<Service::Entry> Service::Find(const std::string& id) {
  std::lock_guard<std::mutex> lock(registry_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

HttpResponse Service::HandleSession(const std::string& id,
                                    const std::string& rest,
                                    const HttpRequest& request) {
  const std::shared_ptr<Entry> entry = Find(id);
  if (entry == nullptr) {
    return Error(404, "not_found", fmt::format("unknown session \"{}\"", id));
  }
  const std::string& method = request.method;
  std::lock_guard<std::mutex> lock(entry->mutex);
  session::Session& session = entry->session;
  if (rest.empty()) {
    if (method != "GET") return Error(405, "method_not_allowed", method);
    return Json(200, session::ExportBundle(session));
  }
  if (rest == "/next-steps") {
    if (method != "GET") return Error(405, "method_not_allowed", method);
    return Json(200, NextStepsJson(session));
  }
  if (rest == "/export.html") {
    if (method != "GET") return Error(405, "method_not_allowed", method);
    auto html = ExportHtml(
        session::SerializeBundle(session::ExportBundle(session)), ui_script_);
    if (!html.ok()) return FromStatus(html.status());
    return {200, *std::move(html), "text/html; charset=utf-8"};
  }
  if (rest == "/steps") {
    if (method != "POST") return Error(405, "method_not_allowed", method);
    const json body = json::parse(request.body, nullptr, false);
    if (body.is_discarded()) {
      return Error(400, "bad_request", "body is not valid JSON");
    }
    auto step = session::StepRequestFromJson(body, session.dataset());
    if (!step.ok()) return FromStatus(step.status());
    auto applied = session.Apply(*step);
    if (!applied.ok()) {
      if (session::IsGrammarViolation(applied.status())) {
        const auto permitted = session.NextSteps().terminals;
        return Error(409, "grammar_violation",
                     std::string(applied.status().message()), &permitted);
      }
      const absl::Status& status = applied.status();
      // Capability errors (say, LOCO on a model that cannot be refit) are
      // parameter problems from the client's side.
      if (status.code() == absl::StatusCode::kFailedPrecondition) {
        return Error(422, "invalid_parameters", std::string(status.message()));
      }
      return FromStatus(status);
    }
    const session::BoundStep& bound = **applied;
    json response = {
        {"step", bound.timestamp},
        {"payload", session::PayloadToJson(bound.request.symbol, bound.result)},
        {"next_steps", NextStepsJson(session)}};
    return Json(200, response);
  }
  if (rest == "/steps/last") {
    if (method != "DELETE") return Error(405, "method_not_allowed", method);
    if (const absl::Status undone = session.Undo(); !undone.ok()) {
      return Error(409, "conflict", std::string(undone.message()));
    }
    json response = {{"history_length", session.history().size()},
                     {"next_steps", NextStepsJson(session)}};
    return Json(200, response);
  }
  return Error(404, "not_found", fmt::format("no route for {}", request.path));
}

}  // namespace iema::interface
