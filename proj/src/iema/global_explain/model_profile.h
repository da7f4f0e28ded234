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

#ifndef IEMA_GLOBAL_EXPLAIN_MODEL_PROFILE_H_
#define IEMA_GLOBAL_EXPLAIN_MODEL_PROFILE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/local_explain/attribution.h"
#include "iema/local_explain/ceteris_paribus.h"
#include "iema/model/model.h"

namespace iema::global {

enum class ProfileMethod { kPdp, kAle, kShapDependence };

std::string_view ProfileMethodName(ProfileMethod method);

struct DependencePoint {
  size_t row = 0;
  double x = 0;
  double phi = 0;
};

struct ModelProfile {
  std::string variable;
  ProfileMethod method = ProfileMethod::kPdp;
  data::ColumnKind kind = data::ColumnKind::kNumeric;
  std::vector<std::string> levels;
  // PDP: grid points. ALE: bin edges, bin k spans (grid[k], grid[k+1]].
  std::vector<double> grid;
  std::vector<double> values;
  // ALE: number of rows in each bin.
  std::vector<size_t> bin_counts;
  // SHAP dependence: one point per explained row.
  std::vector<DependencePoint> points;
  // Rows averaged or explained.
  size_t n_instances = 0;
};

// "instance_cap" == 0 uses every row; otherwise that many rows are sampled
// with "seed".
struct InstanceSubset {
  size_t instance_cap = 0;
  uint64_t seed = 0;
};

std::vector<size_t> SelectRows(size_t n_rows, const InstanceSubset& subset);

// G(z) = mean over rows of f(row with variable := z) on the grid of
// local::ProfileGrid.
absl::StatusOr<ModelProfile> PartialDependence(
    const model::Model& model, const data::Dataset& dataset,
    std::string_view variable, size_t grid_size = local::kDefaultGridSize,
    const InstanceSubset& subset = {});

inline constexpr size_t kDefaultAleBins = 10;

// First-order ALE on data-quantile bins. Values are given at the bin edges
// and centered so that the row-weighted mean of the bin midpoints
// (A_{k-1} + A_k) / 2 is zero. Bins left empty by the quantile edges are
// merged into their upper neighbor.
absl::StatusOr<ModelProfile> AccumulatedLocalEffects(
    const model::Model& model, const data::Dataset& dataset,
    std::string_view variable, size_t k_bins = kDefaultAleBins);

// Per-row SHAP values of every variable, rows from "subset". In sampling
// mode row i uses seed DeriveSeed(options.seed, i).
struct ShapTable {
  std::vector<size_t> rows;
  // phi[r][j] for rows[r] and feature j.
  std::vector<std::vector<double>> phi;
  double baseline = 0;
};

local::ShapOptions RowShapOptions(const local::ShapOptions& options,
                                  size_t row);

absl::StatusOr<ShapTable> ComputeShapTable(const model::Model& model,
                                           const data::Dataset& dataset,
                                           const local::ShapOptions& options,
                                           const InstanceSubset& subset = {});

absl::StatusOr<ModelProfile> ShapDependence(
    const model::Model& model, const data::Dataset& dataset,
    std::string_view variable, const local::ShapOptions& options = {},
    const InstanceSubset& subset = {});

}  // namespace iema::global

#endif  // IEMA_GLOBAL_EXPLAIN_MODEL_PROFILE_H_
