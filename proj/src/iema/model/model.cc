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

#include "iema/model/model.h"

#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "fmt/format.h"

namespace iema::model {
namespace {

class FunctionModel : public Model {
 public:
  FunctionModel(std::string id, Task task, data::Schema schema,
                std::function<double(std::span<const double>)> predict)
      : Model(std::move(id), task, std::move(schema)),
        predict_(std::move(predict)) {}

  std::string_view type() const override { return "function"; }
  double PredictRow(std::span<const double> row) const override {
    return predict_(row);
  }

 private:
  std::function<double(std::span<const double>)> predict_;
};

}  // namespace

std::string_view TaskName(Task task) {
  return task == Task::kRegression ? "regression" : "binary_classification";
}

absl::StatusOr<Task> ParseTask(std::string_view name) {
  if (name == "regression") return Task::kRegression;
  if (name == "binary_classification") return Task::kBinaryClassification;
  return absl::InvalidArgumentError(fmt::format("unknown task \"{}\"", name));
}

absl::StatusOr<std::vector<double>> Model::PredictBatch(
    const data::FeatureMatrix& rows) const {
  if (rows.rows() > 0 && rows.cols() != schema_.size()) {
    return absl::InvalidArgumentError(
        fmt::format("rows have {} columns, model \"{}\" expects {}",
                    rows.cols(), id_, schema_.size()));
  }
  for (size_t j = 0; j < schema_.size(); ++j) {
    const data::Variable& variable = schema_.variables[j];
    for (size_t i = 0; i < rows.rows(); ++i) {
      const double v = rows.at(i, j);
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(fmt::format(
            "non-finite value for \"{}\" in row {}", variable.id, i));
      }
      if (variable.kind == data::ColumnKind::kCategorical &&
          (v != std::floor(v) || v < 0 ||
           v >= static_cast<double>(variable.levels.size()))) {
        return absl::InvalidArgumentError(fmt::format(
            "invalid level code {} for \"{}\" in row {}", v, variable.id, i));
      }
    }
  }
  std::vector<double> scores(rows.rows());
  for (size_t i = 0; i < rows.rows(); ++i) scores[i] = PredictRow(rows.row(i));
  return scores;
}

absl::StatusOr<ModelHandle> Model::RefitWithout(const data::Dataset&,
                                                std::string_view) const {
  return absl::FailedPreconditionError(fmt::format(
      "model \"{}\" ({}) is not refittable; LOCO importance is unavailable",
      id_, type()));
}

ModelHandle MakeFunctionModel(
    std::string id, Task task, data::Schema schema,
    std::function<double(std::span<const double>)> predict) {
  return std::make_shared<FunctionModel>(std::move(id), task, std::move(schema),
                                         std::move(predict));
}

absl::Status CheckSchemaCompatible(const Model& model,
                                   const data::Schema& schema) {
  std::vector<std::string> missing;
  for (const auto& variable : model.schema().variables) {
    if (!schema.IndexOf(variable.id).has_value())
      missing.push_back(variable.id);
  }
  if (!missing.empty()) {
    return absl::InvalidArgumentError(fmt::format(
        "dataset is missing model variable(s): {}", fmt::join(missing, ", ")));
  }
  if (!(schema == model.schema())) {
    return absl::InvalidArgumentError(fmt::format(
        "dataset columns do not match the schema of model \"{}\" (order, kinds "
        "or levels differ, or extra columns are present)",
        model.id()));
  }
  return absl::OkStatus();
}

}  // namespace iema::model
