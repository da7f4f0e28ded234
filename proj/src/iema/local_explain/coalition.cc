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

#include "iema/local_explain/coalition.h"

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/instance.h"

namespace iema::local {

absl::StatusOr<CoalitionGame> CoalitionGame::Create(
    const model::Model& model, const data::Dataset& dataset,
    std::span<const double> instance, size_t background_rows, uint64_t seed) {
  RETURN_IF_ERROR(CheckExplainable(model, dataset));
  if (instance.size() != dataset.num_features()) {
    return absl::InvalidArgumentError(
        fmt::format("instance has {} values, expected {}", instance.size(),
                    dataset.num_features()));
  }
  const data::FeatureMatrix& features = dataset.features();
  if (background_rows == 0 || background_rows >= features.rows()) {
    return CoalitionGame(model, features,
                         std::vector<double>(instance.begin(), instance.end()));
  }
  Rng rng(seed);
  data::FeatureMatrix background(0, features.cols());
  for (const size_t i : rng.SampleIndices(features.rows(), background_rows)) {
    background.AppendRow(features.row(i));
  }
  return CoalitionGame(model, std::move(background),
                       std::vector<double>(instance.begin(), instance.end()));
}

CoalitionGame::CoalitionGame(const model::Model& model,
                             data::FeatureMatrix background,
                             std::vector<double> instance)
    : model_(&model),
      background_(std::move(background)),
      instance_(std::move(instance)) {
  prediction_ = model_->PredictRow(instance_);
  empty_value_ = MeanPrediction(background_);
}

double CoalitionGame::MeanPrediction(const data::FeatureMatrix& rows) const {
  double sum = 0.0;
  for (size_t i = 0; i < rows.rows(); ++i)
    sum += model_->PredictRow(rows.row(i));
  return sum / static_cast<double>(rows.rows());
}

double CoalitionGame::Value(uint64_t mask) const {
  data::FeatureMatrix rows = background_;
  for (size_t j = 0; j < instance_.size(); ++j) {
    if (((mask >> j) & 1) == 0) continue;
    for (size_t i = 0; i < rows.rows(); ++i) rows.at(i, j) = instance_[j];
  }
  return MeanPrediction(rows);
}

std::vector<double> CoalitionGame::Marginals(
    std::span<const size_t> order) const {
  data::FeatureMatrix rows = background_;
  std::vector<double> marginals;
  marginals.reserve(order.size());
  double previous = empty_value_;
  for (const size_t j : order) {
    for (size_t i = 0; i < rows.rows(); ++i) rows.at(i, j) = instance_[j];
    const double current = MeanPrediction(rows);
    marginals.push_back(current - previous);
    previous = current;
  }
  return marginals;
}

}  // namespace iema::local
