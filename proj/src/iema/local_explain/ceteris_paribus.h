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

#ifndef IEMA_LOCAL_EXPLAIN_CETERIS_PARIBUS_H_
#define IEMA_LOCAL_EXPLAIN_CETERIS_PARIBUS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"

namespace iema::local {

inline constexpr size_t kDefaultGridSize = 101;

struct ProfileAnchor {
  double x = 0;
  double prediction = 0;
};

// Model response along one variable. Categorical grids hold level codes and
// "levels" carries their labels.
struct Profile {
  std::string variable;
  data::ColumnKind kind = data::ColumnKind::kNumeric;
  std::vector<double> grid;
  std::vector<std::string> levels;
  std::vector<double> values;
  std::optional<ProfileAnchor> anchor;
};

// Numeric: the k/(grid_size-1) quantiles of the variable, duplicates removed.
// Categorical: every level code.
absl::StatusOr<std::vector<double>> ProfileGrid(const data::Dataset& dataset,
                                                size_t feature,
                                                size_t grid_size);

// f(instance with feature := z) for every z of "grid".
std::vector<double> EvaluateAlongGrid(const model::Model& model,
                                      std::span<const double> instance,
                                      size_t feature,
                                      std::span<const double> grid);

// The numeric grid also contains the instance's own value, so that the
// profile passes through its anchor.
absl::StatusOr<Profile> CeterisParibus(const model::Model& model,
                                       const data::Dataset& dataset,
                                       std::span<const double> instance,
                                       std::string_view variable,
                                       size_t grid_size = kDefaultGridSize);

}  // namespace iema::local

#endif  // IEMA_LOCAL_EXPLAIN_CETERIS_PARIBUS_H_
