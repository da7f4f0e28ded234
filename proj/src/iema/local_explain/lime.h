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

#ifndef IEMA_LOCAL_EXPLAIN_LIME_H_
#define IEMA_LOCAL_EXPLAIN_LIME_H_

#include <optional>
#include <span>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/local_explain/attribution.h"
#include "iema/model/model.h"

namespace iema::local {

struct LimeOptions {
  size_t n_samples = 1000;
  // Unset: 0.75 * sqrt(p).
  std::optional<double> kernel_width;
  // Unset: every variable.
  std::optional<size_t> top_k;
  uint64_t seed = 0;
};

// Local weighted linear surrogate around the instance.
//
// Perturbations resample each variable independently from its column. A
// numeric variable enters the design as (z - mean) / sd, a categorical one as
// 1[z == instance level] - (share of the instance level). The proximity
// kernel is exp(-d^2 / width^2) with d combining standardized numeric
// distance and categorical mismatches.
//
// The surrogate intercept is the baseline. Contributions are the surrogate
// terms evaluated at the instance, coefficients are reported in original
// units. "fidelity" is the weighted R^2 in [0, 1], and 1 when the model is
// constant over the perturbations.
absl::StatusOr<Attribution> LimeAttribution(const model::Model& model,
                                            const data::Dataset& dataset,
                                            std::span<const double> instance,
                                            const LimeOptions& options = {});

}  // namespace iema::local

#endif  // IEMA_LOCAL_EXPLAIN_LIME_H_
