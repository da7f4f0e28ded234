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

#ifndef IEMA_LOCAL_EXPLAIN_INSTANCE_H_
#define IEMA_LOCAL_EXPLAIN_INSTANCE_H_

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"
#include "json.hpp"

namespace iema::local {

// The instance of interest: a dataset row, or ad-hoc feature values in
// feature-schema order (categoricals as level codes).
struct InstanceRef {
  std::optional<size_t> row;
  std::vector<double> values;

  static InstanceRef Row(size_t row) { return {row, {}}; }
  static InstanceRef Values(std::vector<double> values) {
    return {std::nullopt, std::move(values)};
  }
  bool operator==(const InstanceRef&) const = default;
};

absl::StatusOr<std::vector<double>> ResolveInstance(
    const data::Dataset& dataset, const InstanceRef& instance);

// {"row": 3} or {"values": {"age": 27, "foot": "left"}}. Every feature must
// be given in the second form.
absl::StatusOr<InstanceRef> InstanceFromJson(const nlohmann::json& json,
                                             const data::Dataset& dataset);
nlohmann::json InstanceToJson(const InstanceRef& instance,
                              const data::Dataset& dataset);

// The model must accept exactly the dataset's feature columns.
absl::Status CheckExplainable(const model::Model& model,
                              const data::Dataset& dataset);

// Feature index of "variable", or InvalidArgument naming it.
absl::StatusOr<size_t> FeatureIndex(const data::Dataset& dataset,
                                    std::string_view variable);

}  // namespace iema::local

#endif  // IEMA_LOCAL_EXPLAIN_INSTANCE_H_
