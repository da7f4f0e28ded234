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

// Black-box prediction contract shared by every explainer.

#ifndef IEMA_MODEL_MODEL_H_
#define IEMA_MODEL_MODEL_H_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "json.hpp"

namespace iema::model {

enum class Task { kRegression, kBinaryClassification };

std::string_view TaskName(Task task);
absl::StatusOr<Task> ParseTask(std::string_view name);

class Model;
using ModelHandle = std::shared_ptr<const Model>;

// A deterministic function of a schema-typed row. Implementations are
// immutable, so one handle may serve concurrent callers.
class Model {
 public:
  virtual ~Model() = default;

  const std::string& id() const { return id_; }
  Task task() const { return task_; }
  const data::Schema& schema() const { return schema_; }

  virtual std::string_view type() const = 0;
  virtual bool refittable() const { return false; }

  // Score of one row laid out in schema order (categoricals as level codes).
  // The row is assumed to conform to the schema.
  virtual double PredictRow(std::span<const double> row) const = 0;

  // Checks "rows" against the schema, then scores each row.
  absl::StatusOr<std::vector<double>> PredictBatch(
      const data::FeatureMatrix& rows) const;

  // Same family retrained on "dataset" without "dropped". The returned model
  // keeps the full schema and ignores the dropped variable.
  virtual absl::StatusOr<ModelHandle> RefitWithout(
      const data::Dataset& dataset, std::string_view dropped) const;

  // The model-spec document, for models backed by one.
  virtual std::optional<nlohmann::json> ToSpec() const { return std::nullopt; }

 protected:
  Model(std::string id, Task task, data::Schema schema)
      : id_(std::move(id)), task_(task), schema_(std::move(schema)) {}

 private:
  std::string id_;
  Task task_;
  data::Schema schema_;
};

// Wraps any callable as a model. Classification outputs must lie in [0, 1].
ModelHandle MakeFunctionModel(
    std::string id, Task task, data::Schema schema,
    std::function<double(std::span<const double>)> predict);

// Verifies that "schema" (typically a dataset's feature schema) provides every
// variable of the model with the same kind and levels, in the same order.
absl::Status CheckSchemaCompatible(const Model& model,
                                   const data::Schema& schema);

}  // namespace iema::model

#endif  // IEMA_MODEL_MODEL_H_
