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

#include "iema/global_explain/model_profile.h"

#include <algorithm>
#include <numeric>

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/instance.h"

namespace iema::global {

std::string_view ProfileMethodName(ProfileMethod method) {
  switch (method) {
    case ProfileMethod::kPdp:
      return "pdp";
    case ProfileMethod::kAle:
      return "ale";
    case ProfileMethod::kShapDependence:
      return "shap_dependence";
  }
  return "";
}

std::vector<size_t> SelectRows(size_t n_rows, const InstanceSubset& subset) {
  if (subset.instance_cap == 0 || subset.instance_cap >= n_rows) {
    std::vector<size_t> rows(n_rows);
    std::iota(rows.begin(), rows.end(), 0);
    return rows;
  }
  Rng rng(subset.seed);
  return rng.SampleIndices(n_rows, subset.instance_cap);
}

absl::StatusOr<ModelProfile> PartialDependence(const model::Model& model,
                                               const data::Dataset& dataset,
                                               std::string_view variable,
                                               size_t grid_size,
                                               const InstanceSubset& subset) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  ASSIGN_OR_RETURN(const size_t feature,
                   local::FeatureIndex(dataset, variable));
  ASSIGN_OR_RETURN(std::vector<double> grid,
                   local::ProfileGrid(dataset, feature, grid_size));
  const std::vector<size_t> rows = SelectRows(dataset.n_rows(), subset);
  const data::FeatureMatrix& features = dataset.features();
  std::vector<double> sums(grid.size(), 0.0);
  std::vector<double> row(features.cols());
  for (const size_t i : rows) {
    const auto source = features.row(i);
    std::copy(source.begin(), source.end(), row.begin());
    for (size_t k = 0; k < grid.size(); ++k) {
      row[feature] = grid[k];
      sums[k] += model.PredictRow(row);
    }
  }
  const auto& info = dataset.feature_schema().variables[feature];
  ModelProfile profile;
  profile.variable = info.id;
  profile.method = ProfileMethod::kPdp;
  profile.kind = info.kind;
  profile.levels = info.levels;
  for (double& sum : sums) sum /= static_cast<double>(rows.size());
  profile.values = std::move(sums);
  profile.grid = std::move(grid);
  profile.n_instances = rows.size();
  return profile;
}

absl::StatusOr<ModelProfile> AccumulatedLocalEffects(
    const model::Model& model, const data::Dataset& dataset,
    std::string_view variable, size_t k_bins) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  ASSIGN_OR_RETURN(const size_t feature,
                   local::FeatureIndex(dataset, variable));
  const auto& info = dataset.feature_schema().variables[feature];
  if (info.kind != data::ColumnKind::kNumeric) {
    return absl::InvalidArgumentError(fmt::format(
        "ALE supports numeric variables only; \"{}\" is categorical", info.id));
  }
  if (k_bins < 2) {
    return absl::InvalidArgumentError(
        fmt::format("k_bins must be at least 2, got {}", k_bins));
  }
  const data::FeatureMatrix& features = dataset.features();
  const std::vector<double> column = features.column(feature);
  std::vector<double> sorted = column;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> edges;
  for (size_t k = 0; k <= k_bins; ++k) {
    edges.push_back(SortedQuantile(
        sorted, static_cast<double>(k) / static_cast<double>(k_bins)));
  }
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (edges.size() < 2) {
    return absl::InvalidArgumentError(
        fmt::format("ALE needs at least 2 distinct values of \"{}\"", info.id));
  }

  // Bin b (1-based) holds (edges[b-1], edges[b]]; the first also holds
  // edges[0]. An empty bin loses its upper edge, joining the next bin. The
  // last bin contains the maximum, so it is never empty.
  auto bin_of = [&](double x) {
    const auto it = std::lower_bound(edges.begin() + 1, edges.end(), x);
    return static_cast<size_t>(it - edges.begin());
  };
  for (bool merged = true; merged;) {
    merged = false;
    std::vector<size_t> counts(edges.size(), 0);
    for (const double x : column) ++counts[bin_of(x)];
    for (size_t b = 1; b + 1 < edges.size(); ++b) {
      if (counts[b] == 0) {
        edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(b));
        merged = true;
        break;
      }
    }
  }

  const size_t bins = edges.size() - 1;
  std::vector<double> delta(bins + 1, 0.0);
  std::vector<size_t> counts(bins + 1, 0);
  std::vector<double> row(features.cols());
  for (size_t i = 0; i < features.rows(); ++i) {
    const size_t b = bin_of(column[i]);
    const auto source = features.row(i);
    std::copy(source.begin(), source.end(), row.begin());
    row[feature] = edges[b];
    const double upper = model.PredictRow(row);
    row[feature] = edges[b - 1];
    delta[b] += upper - model.PredictRow(row);
    ++counts[b];
  }
  std::vector<double> accumulated(bins + 1, 0.0);
  for (size_t b = 1; b <= bins; ++b) {
    accumulated[b] =
        accumulated[b - 1] + delta[b] / static_cast<double>(counts[b]);
  }
  double center = 0.0;
  for (size_t b = 1; b <= bins; ++b) {
    center += static_cast<double>(counts[b]) *
              (accumulated[b - 1] + accumulated[b]) / 2.0;
  }
  center /= static_cast<double>(features.rows());

  ModelProfile profile;
  profile.variable = info.id;
  profile.method = ProfileMethod::kAle;
  profile.kind = info.kind;
  for (const double a : accumulated) profile.values.push_back(a - center);
  profile.grid = std::move(edges);
  profile.bin_counts.assign(counts.begin() + 1, counts.end());
  profile.n_instances = features.rows();
  return profile;
}

local::ShapOptions RowShapOptions(const local::ShapOptions& options,
                                  size_t row) {
  local::ShapOptions row_options = options;
  row_options.seed = DeriveSeed(options.seed, row);
  return row_options;
}

absl::StatusOr<ShapTable> ComputeShapTable(const model::Model& model,
                                           const data::Dataset& dataset,
                                           const local::ShapOptions& options,
                                           const InstanceSubset& subset) {
  ShapTable table;
  table.rows = SelectRows(dataset.n_rows(), subset);
  for (const size_t i : table.rows) {
    const auto x = dataset.features().row(i);
    ASSIGN_OR_RETURN(
        const local::Attribution attribution,
        local::ShapAttribution(model, dataset, x, RowShapOptions(options, i)));
    std::vector<double> phi;
    for (const auto& contribution : attribution.contributions) {
      phi.push_back(contribution.value);
    }
    table.phi.push_back(std::move(phi));
    table.baseline = attribution.baseline;
  }
  return table;
}

absl::StatusOr<ModelProfile> ShapDependence(const model::Model& model,
                                            const data::Dataset& dataset,
                                            std::string_view variable,
                                            const local::ShapOptions& options,
                                            const InstanceSubset& subset) {
  RETURN_IF_ERROR(local::CheckExplainable(model, dataset));
  ASSIGN_OR_RETURN(const size_t feature,
                   local::FeatureIndex(dataset, variable));
  ASSIGN_OR_RETURN(const ShapTable table,
                   ComputeShapTable(model, dataset, options, subset));
  const auto& info = dataset.feature_schema().variables[feature];
  ModelProfile profile;
  profile.variable = info.id;
  profile.method = ProfileMethod::kShapDependence;
  profile.kind = info.kind;
  profile.levels = info.levels;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const size_t i = table.rows[r];
    profile.points.push_back(
        {i, dataset.features().at(i, feature), table.phi[r][feature]});
  }
  profile.n_instances = table.rows.size();
  return profile;
}

}  // namespace iema::global
