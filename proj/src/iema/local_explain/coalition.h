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

#ifndef IEMA_LOCAL_EXPLAIN_COALITION_H_
#define IEMA_LOCAL_EXPLAIN_COALITION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"
#include "iema/model/model.h"

namespace iema::local {

// v(S) = mean over background rows of f(row with the variables of S set to
// the instance values). Players are feature indices.
class CoalitionGame {
 public:
  // "background_rows" == 0 uses every dataset row; otherwise that many rows
  // are sampled with "seed".
  static absl::StatusOr<CoalitionGame> Create(const model::Model& model,
                                              const data::Dataset& dataset,
                                              std::span<const double> instance,
                                              size_t background_rows = 0,
                                              uint64_t seed = 0);

  size_t num_players() const { return instance_.size(); }
  const std::vector<double>& instance() const { return instance_; }
  double prediction() const { return prediction_; }
  double empty_value() const { return empty_value_; }

  // Bit j of "mask" selects player j. Requires num_players() < 64.
  double Value(uint64_t mask) const;

  // Marginal contributions of the players in "order", each joining the
  // players before it. They telescope to prediction() - empty_value().
  std::vector<double> Marginals(std::span<const size_t> order) const;

 private:
  CoalitionGame(const model::Model& model, data::FeatureMatrix background,
                std::vector<double> instance);

  double MeanPrediction(const data::FeatureMatrix& rows) const;

  const model::Model* model_;
  data::FeatureMatrix background_;
  std::vector<double> instance_;
  double prediction_ = 0;
  double empty_value_ = 0;
};

}  // namespace iema::local

#endif  // IEMA_LOCAL_EXPLAIN_COALITION_H_
