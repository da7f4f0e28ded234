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

#include "iema/local_explain/instance.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"
#include "iema/common/status_macros.h"

namespace iema::local {

using nlohmann::json;

absl::StatusOr<std::vector<double>> ResolveInstance(
    const data::Dataset& dataset, const InstanceRef& instance) {
  const data::Schema& schema = dataset.feature_schema();
  if (instance.row.has_value()) {
    if (*instance.row >= dataset.n_rows()) {
      return absl::InvalidArgumentError(
          fmt::format("instance row {} is out of range (dataset has {} rows)",
                      *instance.row, dataset.n_rows()));
    }
    const auto row = dataset.features().row(*instance.row);
    return std::vector<double>(row.begin(), row.end());
  }
  if (instance.values.size() != schema.size()) {
    return absl::InvalidArgumentError(
        fmt::format("instance has {} values, expected {}",
                    instance.values.size(), schema.size()));
  }
  for (size_t j = 0; j < schema.size(); ++j) {
    const double v = instance.values[j];
    const auto& variable = schema.variables[j];
    if (!std::isfinite(v)) {
      return absl::InvalidArgumentError(
          fmt::format("instance value for \"{}\" is not finite", variable.id));
    }
    if (variable.kind == data::ColumnKind::kCategorical &&
        (v != std::floor(v) || v < 0 ||
         v >= static_cast<double>(variable.levels.size()))) {
      return absl::InvalidArgumentError(fmt::format(
          "instance value for \"{}\" is not a level code", variable.id));
    }
  }
  return instance.values;
}

absl::StatusOr<InstanceRef> InstanceFromJson(const json& value,
                                             const data::Dataset& dataset) {
  if (!value.is_object()) {
    return absl::InvalidArgumentError("instance must be a JSON object");
  }
  if (value.contains("row")) {
    if (!value["row"].is_number_integer() || value["row"].get<int64_t>() < 0) {
      return absl::InvalidArgumentError(
          "instance \"row\" must be a non-negative integer");
    }
    InstanceRef instance = InstanceRef::Row(value["row"].get<size_t>());
    RETURN_IF_ERROR(ResolveInstance(dataset, instance).status());
    return instance;
  }
  const auto values = value.find("values");
  if (values == value.end() || !values->is_object()) {
    return absl::InvalidArgumentError(
        "instance needs \"row\" or a \"values\" object");
  }
  const data::Schema& schema = dataset.feature_schema();
  std::vector<double> resolved(schema.size(), 0.0);
  std::vector<std::string> missing;
  for (size_t j = 0; j < schema.size(); ++j) {
    const auto& variable = schema.variables[j];
    const auto it = values->find(variable.id);
    if (it == values->end()) {
      missing.push_back(variable.id);
      continue;
    }
    if (variable.kind == data::ColumnKind::kNumeric) {
      if (!it->is_number()) {
        return absl::InvalidArgumentError(fmt::format(
            "instance value for \"{}\" must be a number", variable.id));
      }
      resolved[j] = it->get<double>();
      continue;
    }
    const auto level = it->is_string() ? std::find(variable.levels.begin(),
                                                   variable.levels.end(),
                                                   it->get<std::string>())
                                       : variable.levels.end();
    if (level == variable.levels.end()) {
      return absl::InvalidArgumentError(
          fmt::format("instance value {} is not a level of \"{}\"", it->dump(),
                      variable.id));
    }
    resolved[j] = static_cast<double>(level - variable.levels.begin());
  }
  if (!missing.empty()) {
    return absl::InvalidArgumentError(fmt::format(
        "instance is missing value(s) for {}", fmt::join(missing, ", ")));
  }
  for (const auto& [key, unused] : values->items()) {
    if (!schema.IndexOf(key).has_value()) {
      return absl::InvalidArgumentError(
          fmt::format("instance names unknown variable \"{}\"", key));
    }
  }
  InstanceRef instance = InstanceRef::Values(std::move(resolved));
  RETURN_IF_ERROR(ResolveInstance(dataset, instance).status());
  return instance;
}

json InstanceToJson(const InstanceRef& instance, const data::Dataset& dataset) {
  if (instance.row.has_value()) return json{{"row", *instance.row}};
  const data::Schema& schema = dataset.feature_schema();
  json values = json::object();
  for (size_t j = 0; j < schema.size() && j < instance.values.size(); ++j) {
    const auto& variable = schema.variables[j];
    if (variable.kind == data::ColumnKind::kNumeric) {
      values[variable.id] = instance.values[j];
    } else {
      values[variable.id] =
          variable.levels[static_cast<size_t>(instance.values[j])];
    }
  }
  return json{{"values", values}};
}

absl::Status CheckExplainable(const model::Model& model,
                              const data::Dataset& dataset) {
  return model::CheckSchemaCompatible(model, dataset.feature_schema());
}

absl::StatusOr<size_t> FeatureIndex(const data::Dataset& dataset,
                                    std::string_view variable) {
  const auto index = dataset.feature_schema().IndexOf(variable);
  if (!index.has_value()) {
    if (dataset.target().id() == variable) {
      return absl::InvalidArgumentError(
          fmt::format("\"{}\" is the target, not a model variable", variable));
    }
    return absl::InvalidArgumentError(
        fmt::format("unknown variable \"{}\"", variable));
  }
  return *index;
}

}  // namespace iema::local
