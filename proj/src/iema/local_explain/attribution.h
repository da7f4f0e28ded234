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

#ifndef IEMA_LOCAL_EXPLAIN_ATTRIBUTION_H_
#define IEMA_LOCAL_EXPLAIN_ATTRIBUTION_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"

namespace iema::local {

enum class AttributionMethod { kShap, kBreakdown, kLime };

std::string_view AttributionMethodName(AttributionMethod method);

struct Contribution {
  std::string variable;
  double value = 0;
  // Sampling SHAP: standard deviation of the per-permutation marginals.
  std::optional<double> sd;
  // LIME: surrogate slope in original units (per unit for numerics, for
  // matching the instance level for categoricals).
  std::optional<double> coefficient;
};

// baseline + sum of contributions == prediction for SHAP and Break-down.
struct Attribution {
  AttributionMethod method = AttributionMethod::kShap;
  double baseline = 0;
  std::vector<Contribution> contributions;
  double prediction = 0;
  // LIME: weighted R^2 of the surrogate.
  std::optional<double> fidelity;
  // SHAP: number of permutations in sampling mode.
  std::optional<size_t> permutations;

  double Total() const;
  const Contribution* Find(std::string_view variable) const;
};

inline constexpr size_t kMaxExactShapVariables = 12;

struct ShapOptions {
  enum class Mode { kExact, kSampling };
  Mode mode = Mode::kExact;
  // Sampling mode only.
  size_t permutations = 0;
  uint64_t seed = 0;
  // 0 averages over every dataset row.
  size_t background_rows = 0;

  static ShapOptions Exact() { return {}; }
  static ShapOptions Sampling(size_t permutations, uint64_t seed) {
    return {Mode::kSampling, permutations, seed, 0};
  }
};

// Contributions are listed in schema order.
absl::StatusOr<Attribution> ShapAttribution(const model::Model& model,
                                            const data::Dataset& dataset,
                                            std::span<const double> instance,
                                            const ShapOptions& options = {});

struct BreakdownOptions {
  // Permutation of the feature ids. Unset: descending |v({j}) - v({})|, ties
  // in schema order.
  std::optional<std::vector<std::string>> order;
  size_t background_rows = 0;
  uint64_t seed = 0;
};

// Contributions are listed in the order variables were added.
absl::StatusOr<Attribution> BreakdownAttribution(
    const model::Model& model, const data::Dataset& dataset,
    std::span<const double> instance, const BreakdownOptions& options = {});

}  // namespace iema::local

#endif  // IEMA_LOCAL_EXPLAIN_ATTRIBUTION_H_
