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

#include "iema/global_explain/importance.h"

#include <cmath>
#include <numeric>

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/instance.h"

namespace iema::global {

std::string_view ImportanceMethodName(ImportanceMethod method) {
  switch (method) {
    case ImportanceMethod::kPermutation:
      return "permutation";
    case ImportanceMethod::kLoco:
      return "loco";
    case ImportanceMethod::kShap:
      return "shap_importance";
  }
  return "";
}

const VariableImportance* ImportanceResult::Find(
    std::string_view variable) const {
  for (const auto& entry : variables) {
    if (entry.variable == variable) return &entry;
  }
  return nullptr;
}

absl::StatusOr<ImportanceResult> PermutationImportance(
    const model::Model& model, const data::Dataset& dataset,
    std::optional<model::LossKind> loss, size_t b_repeats, uint64_t seed) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  if (b_repeats < 1) {
    return absl::InvalidArgumentError("b_repeats must be at least 1");
  }
  ASSIGN_OR_RETURN(const std::vector<double> targets, dataset.TargetValues());
  const model::LossKind kind = loss.value_or(model::DefaultLoss(model.task()));
  const data::FeatureMatrix& features = dataset.features();
  ASSIGN_OR_RETURN(const std::vector<double> original,
                   model.PredictBatch(features));
  ASSIGN_OR_RETURN(const double baseline,
                   model::ComputeLoss(kind, original, targets));

  ImportanceResult result;
  result.method = ImportanceMethod::kPermutation;
  result.loss = kind;
  result.baseline_loss = baseline;
  const size_t n = features.rows();
  for (size_t j = 0; j < features.cols(); ++j) {
    const std::string& id = dataset.feature_schema().variables[j].id;
    Rng rng(DeriveSeed(seed, HashName(id)));
    data::FeatureMatrix permuted = features;
    const std::vector<double> column = features.column(j);
    std::vector<size_t> order(n);
    VariableImportance entry;
    entry.variable = id;
    for (size_t r = 0; r < b_repeats; ++r) {
      std::iota(order.begin(), order.end(), 0);
      rng.Shuffle(order);
      for (size_t i = 0; i < n; ++i) permuted.at(i, j) = column[order[i]];
      ASSIGN_OR_RETURN(const std::vector<double> scores,
                       model.PredictBatch(permuted));
      ASSIGN_OR_RETURN(const double permuted_loss,
                       model::ComputeLoss(kind, scores, targets));
      entry.repeats.push_back(permuted_loss - baseline);
    }
    entry.importance = Mean(entry.repeats);
    entry.spread = SampleStdDev(entry.repeats);
    result.variables.push_back(std::move(entry));
  }
  return result;
}

absl::StatusOr<ImportanceResult> LocoImportance(
    const model::Model& model, const data::Dataset& dataset,
    std::optional<model::LossKind> loss) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  if (!model.refittable()) {
    return absl::FailedPreconditionError(fmt::format(
        "model \"{}\" ({}) is not refittable; LOCO importance is unavailable",
        model.id(), model.type()));
  }
  ASSIGN_OR_RETURN(const std::vector<double> targets, dataset.TargetValues());
  const model::LossKind kind = loss.value_or(model::DefaultLoss(model.task()));
  const data::FeatureMatrix& features = dataset.features();
  ASSIGN_OR_RETURN(const std::vector<double> original,
                   model.PredictBatch(features));
  ASSIGN_OR_RETURN(const double baseline,
                   model::ComputeLoss(kind, original, targets));
  ImportanceResult result;
  result.method = ImportanceMethod::kLoco;
  result.loss = kind;
  result.baseline_loss = baseline;
  for (const auto& variable : dataset.feature_schema().variables) {
    ASSIGN_OR_RETURN(const model::ModelHandle refit,
                     model.RefitWithout(dataset, variable.id));
    ASSIGN_OR_RETURN(const std::vector<double> scores,
                     refit->PredictBatch(features));
    ASSIGN_OR_RETURN(const double refit_loss,
                     model::ComputeLoss(kind, scores, targets));
    result.variables.push_back({variable.id, refit_loss - baseline});
  }
  return result;
}

absl::StatusOr<ImportanceResult> ShapImportance(
    const model::Model& model, const data::Dataset& dataset,
    const local::ShapOptions& options, const InstanceSubset& subset) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  ASSIGN_OR_RETURN(const ShapTable table,
                   ComputeShapTable(model, dataset, options, subset));
  ImportanceResult result;
  result.method = ImportanceMethod::kShap;
  result.baseline_value = table.baseline;
  const auto& schema = dataset.feature_schema();
  for (size_t j = 0; j < schema.size(); ++j) {
    double sum = 0.0;
    for (const auto& phi : table.phi) sum += std::fabs(phi[j]);
    result.variables.push_back(
        {schema.variables[j].id, sum / static_cast<double>(table.phi.size())});
  }
  return result;
}

}  // namespace iema::global
