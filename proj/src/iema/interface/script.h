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

// Step scripts: a JSON list of step requests, or {"steps": [...]}.
#ifndef IEMA_INTERFACE_SCRIPT_H_
#define IEMA_INTERFACE_SCRIPT_H_

#include <memory>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"
#include "iema/session/session.h"
#include "iema/session/step.h"

namespace iema::interface {

absl::StatusOr<std::vector<session::StepRequest>> ParseScript(
    std::string_view text, const data::Dataset& dataset);

// Applies every step in order; errors name the failing step.
absl::StatusOr<session::Session> RunScript(
    std::shared_ptr<const data::Dataset> dataset, model::ModelHandle model,
    const session::SessionOptions& options,
    const std::vector<session::StepRequest>& steps);

}  // namespace iema::interface

#endif  // IEMA_INTERFACE_SCRIPT_H_
