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

#ifndef IEMA_MODEL_LINEAR_MODEL_H_
#define IEMA_MODEL_LINEAR_MODEL_H_

#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/model/model.h"

namespace iema::model {

enum class Link { kIdentity, kLogistic };

std::string_view LinkName(Link link);
absl::StatusOr<Link> ParseLink(std::string_view name);

// score = intercept + sum of per-variable terms; the logistic link maps the
// score through the sigmoid. A numeric variable contributes weight * value,
// a categorical one the weight of its level (one-hot coding).
class LinearModel : public Model {
 public:
  struct Term {
    // One entry for numeric variables, one per level for categoricals.
    std::vector<double> weights;
  };

  static absl::StatusOr<std::shared_ptr<const LinearModel>> Create(
      std::string id, data::Schema schema, Link link, double intercept,
      std::vector<Term> terms);

  std::string_view type() const override { return "linear"; }
  bool refittable() const override { return true; }
  double PredictRow(std::span<const double> row) const override;

  // Ordinary least squares for the identity link, iteratively reweighted
  // least squares for the logistic link.
  absl::StatusOr<ModelHandle> RefitWithout(
      const data::Dataset& dataset, std::string_view dropped) const override;

  // Refits on every variable of "dataset" except those in "excluded".
  absl::StatusOr<std::shared_ptr<const LinearModel>> Refit(
      const data::Dataset& dataset,
      const std::vector<std::string>& excluded) const;

  std::optional<nlohmann::json> ToSpec() const override;

  Link link() const { return link_; }
  double intercept() const { return intercept_; }
  const std::vector<Term>& terms() const { return terms_; }

  LinearModel(std::string id, data::Schema schema, Link link, double intercept,
              std::vector<Term> terms);

 private:
  Link link_;
  double intercept_;
  std::vector<Term> terms_;
};

inline constexpr int kIrlsMaxIterations = 100;
inline constexpr double kIrlsTolerance = 1e-8;

}  // namespace iema::model

#endif  // IEMA_MODEL_LINEAR_MODEL_H_
