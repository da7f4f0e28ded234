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

#include "iema/interface/script.h"

#include <string>

#include "fmt/format.h"
#include "iema/common/status_macros.h"
#include "json.hpp"

namespace iema::interface {

absl::StatusOr<std::vector<session::StepRequest>> ParseScript(
    std::string_view text, const data::Dataset& dataset) {
  const nlohmann::json parsed = nlohmann::json::parse(text, nullptr, false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError("script is not valid JSON");
  }
  const nlohmann::json* steps = &parsed;
  if (parsed.is_object() && parsed.contains("steps")) steps = &parsed["steps"];
  if (!steps->is_array()) {
    return absl::InvalidArgumentError(
        "script must be a list of steps or {\"steps\": [...]}");
  }
  std::vector<session::StepRequest> out;
  for (size_t i = 0; i < steps->size(); ++i) {
    auto request = session::StepRequestFromJson((*steps)[i], dataset);
    if (!request.ok()) {
      return absl::InvalidArgumentError(
          fmt::format("script step {}: {}", i + 1,
                      std::string(request.status().message())));
    }
    out.push_back(*std::move(request));
  }
  return out;
}

absl::StatusOr<session::Session> RunScript(
    std::shared_ptr<const data::Dataset> dataset, model::ModelHandle model,
    const session::SessionOptions& options,
    const std::vector<session::StepRequest>& steps) {
  ASSIGN_OR_RETURN(
      session::Session session,
      session::Session::Create(std::move(dataset), std::move(model), options));
  for (size_t i = 0; i < steps.size(); ++i) {
    const auto applied = session.Apply(steps[i]);
    if (!applied.ok()) {
      return absl::Status(
          applied.status().code(),
          fmt::format("script step {} ({}): {}", i + 1, steps[i].symbol,
                      std::string(applied.status().message())));
    }
  }
  return session;
}

}  // namespace iema::interface
