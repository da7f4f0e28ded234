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

#ifndef IEMA_GLOBAL_EXPLAIN_IMPORTANCE_H_
#define IEMA_GLOBAL_EXPLAIN_IMPORTANCE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/global_explain/model_profile.h"
#include "iema/local_explain/attribution.h"
#include "iema/model/loss.h"
#include "iema/model/model.h"

namespace iema::global {

enum class ImportanceMethod { kPermutation, kLoco, kShap };

std::string_view ImportanceMethodName(ImportanceMethod method);

struct VariableImportance {
  std::string variable;
  double importance = 0;
  // Sample sd over repeats; permutation importance and sampling SHAP only.
  std::optional<double> spread;
  // Permutation importance: loss increase of each repeat.
  std::vector<double> repeats;
};

struct ImportanceResult {
  ImportanceMethod method = ImportanceMethod::kPermutation;
  // Permutation and LOCO.
  std::optional<model::LossKind> loss;
  std::optional<double> baseline_loss;
  // SHAP importance: mean prediction v({}).
  std::optional<double> baseline_value;
  // Schema order.
  std::vector<VariableImportance> variables;

  const VariableImportance* Find(std::string_view variable) const;
};

inline constexpr size_t kDefaultPermutationRepeats = 10;

// Each variable draws its permutations from a stream keyed by its name, so
// the result does not depend on the column order.
absl::StatusOr<ImportanceResult> PermutationImportance(
    const model::Model& model, const data::Dataset& dataset,
    std::optional<model::LossKind> loss = std::nullopt,
    size_t b_repeats = kDefaultPermutationRepeats, uint64_t seed = 0);

absl::StatusOr<ImportanceResult> LocoImportance(
    const model::Model& model, const data::Dataset& dataset,
    std::optional<model::LossKind> loss = std::nullopt);

// H(X_j) = mean over rows of |phi_j|.
absl::StatusOr<ImportanceResult> ShapImportance(
    const model::Model& model, const data::Dataset& dataset,
    const local::ShapOptions& options = {}, const InstanceSubset& subset = {});

}  // namespace iema::global

#endif  // IEMA_GLOBAL_EXPLAIN_IMPORTANCE_H_
