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

#include "iema/local_explain/ceteris_paribus.h"

#include <algorithm>

#include "fmt/format.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/instance.h"

namespace iema::local {

absl::StatusOr<std::vector<double>> ProfileGrid(const data::Dataset& dataset,
                                                size_t feature,
                                                size_t grid_size) {
  if (grid_size < 2) {
    return absl::InvalidArgumentError(
        fmt::format("grid_size must be at least 2, got {}", grid_size));
  }
  const data::Variable& variable = dataset.feature_schema().variables[feature];
  std::vector<double> grid;
  if (variable.kind == data::ColumnKind::kCategorical) {
    for (size_t k = 0; k < variable.levels.size(); ++k) {
      grid.push_back(static_cast<double>(k));
    }
    return grid;
  }
  std::vector<double> sorted = dataset.features().column(feature);
  std::sort(sorted.begin(), sorted.end());
  for (size_t k = 0; k < grid_size; ++k) {
    grid.push_back(SortedQuantile(
        sorted, static_cast<double>(k) / static_cast<double>(grid_size - 1)));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> EvaluateAlongGrid(const model::Model& model,
                                      std::span<const double> instance,
                                      size_t feature,
                                      std::span<const double> grid) {
  std::vector<double> row(instance.begin(), instance.end());
  std::vector<double> values;
  values.reserve(grid.size());
  for (const double z : grid) {
    row[feature] = z;
    values.push_back(model.PredictRow(row));
  }
  return values;
}

absl::StatusOr<Profile> CeterisParibus(const model::Model& model,
                                       const data::Dataset& dataset,
                                       std::span<const double> instance,
                                       std::string_view variable,
                                       size_t grid_size) {
  RETURN_IF_ERROR(CheckExplainable(model, dataset));
  ASSIGN_OR_RETURN(const size_t feature, FeatureIndex(dataset, variable));
  if (instance.size() != dataset.num_features()) {
    return absl::InvalidArgumentError("instance does not match the schema");
  }
  ASSIGN_OR_RETURN(std::vector<double> grid,
                   ProfileGrid(dataset, feature, grid_size));
  const data::Variable& info = dataset.feature_schema().variables[feature];
  const double own = instance[feature];
  if (info.kind == data::ColumnKind::kNumeric) {
    const auto at = std::lower_bound(grid.begin(), grid.end(), own);
    if (at == grid.end() || *at != own) grid.insert(at, own);
  }
  Profile profile;
  profile.variable = info.id;
  profile.kind = info.kind;
  profile.levels = info.levels;
  profile.values = EvaluateAlongGrid(model, instance, feature, grid);
  profile.grid = std::move(grid);
  profile.anchor = ProfileAnchor{own, model.PredictRow(instance)};
  return profile;
}

}  // namespace iema::local
