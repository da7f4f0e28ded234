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

// One dialogue step: a terminal symbol with its parameters, and the
// explanation it maps to.
#ifndef IEMA_SESSION_STEP_H_
#define IEMA_SESSION_STEP_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/data_explanations.h"
#include "iema/data/dataset.h"
#include "iema/global_explain/importance.h"
#include "iema/global_explain/model_profile.h"
#include "iema/local_explain/attribution.h"
#include "iema/local_explain/ceteris_paribus.h"
#include "iema/local_explain/instance.h"
#include "iema/model/model.h"
#include "json.hpp"

namespace iema::session {

// What a symbol needs from its parameters and the dialogue context.
struct SymbolTraits {
  std::string_view symbol;
  // Explains the current instance (attributions, Ceteris Paribus).
  bool instance_level = false;
  // Reads a variable: from the Select_Variable in scope, else the request.
  bool uses_variable = false;
  // Ends the scope of the current Select_Variable (parts symbols).
  bool ends_variable_scope = false;
  // Payload "kind" field.
  std::string_view payload_kind;
};

// nullptr for names that are not terminals of the built-in grammar.
const SymbolTraits* FindSymbolTraits(std::string_view symbol);

// A step as submitted. Options are method settings specific to the symbol,
// for example {"grid_size": 51} or {"mode": "sampling", "permutations": 200};
// unknown keys are rejected when the step is applied.
struct StepRequest {
  std::string symbol;
  std::optional<local::InstanceRef> instance;
  std::optional<std::string> variable;
  nlohmann::json options = nlohmann::json::object();

  bool operator==(const StepRequest&) const = default;
};

// {"symbol": ..., "instance": {...}?, "variable": ...?, "options": {...}?}
absl::StatusOr<StepRequest> StepRequestFromJson(const nlohmann::json& json,
                                                const data::Dataset& dataset);
nlohmann::json StepRequestToJson(const StepRequest& request,
                                 const data::Dataset& dataset);

struct VariableSelection {
  std::string variable;
  data::ColumnKind kind = data::ColumnKind::kNumeric;

  bool operator==(const VariableSelection&) const = default;
};

using ExplanationResult =
    std::variant<VariableSelection, local::Attribution, local::Profile,
                 global::ModelProfile, global::ImportanceResult,
                 data::DistributionSummary, data::CorrelationMatrix,
                 data::CorrelationNetwork, data::DataProfile,
                 data::MosaicTable>;

// Settings shared by every step of a session.
struct StepDefaults {
  uint64_t seed = 0;
  // Rows explained or averaged by global SHAP and PDP steps (0 = all).
  size_t instance_cap = 200;
  size_t grid_size = local::kDefaultGridSize;
};

// Everything a step computation reads besides the request.
struct StepInputs {
  const data::Dataset* dataset = nullptr;
  const model::Model* model = nullptr;
  StepDefaults defaults;
  // Position of the step in the history; seeds derive from it.
  size_t index = 0;
  // Resolved by the session from the request and the dialogue context.
  std::optional<local::InstanceRef> instance;
  std::optional<std::string> variable;
};

// Runs the explanation mapped to request.symbol. Grammar and context checks
// are the session's job; this validates options and variables.
absl::StatusOr<ExplanationResult> ComputeStep(const StepRequest& request,
                                              const StepInputs& inputs);

}  // namespace iema::session

#endif  // IEMA_SESSION_STEP_H_
