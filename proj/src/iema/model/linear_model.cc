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

#include "iema/model/linear_model.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Dense"
#include "absl/status/status.h"
#include "fmt/format.h"
#include "iema/common/status_macros.h"

namespace iema::model {
namespace {

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Design column: the variable and, for categoricals, the coded level.
struct DesignColumn {
  size_t variable;
  int level;
};

absl::StatusOr<Eigen::VectorXd> SolveLeastSquares(const Eigen::MatrixXd& x,
                                                  const Eigen::VectorXd& y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  const Eigen::VectorXd beta = qr.solve(y);
  if (!beta.allFinite()) {
    return absl::InternalError(
        "least-squares solve produced non-finite values");
  }
  return beta;
}

}  // namespace

std::string_view LinkName(Link link) {
  return link == Link::kIdentity ? "identity" : "logistic";
}

absl::StatusOr<Link> ParseLink(std::string_view name) {
  if (name == "identity") return Link::kIdentity;
  if (name == "logistic") return Link::kLogistic;
  return absl::InvalidArgumentError(fmt::format("unknown link \"{}\"", name));
}

LinearModel::LinearModel(std::string id, data::Schema schema, Link link,
                         double intercept, std::vector<Term> terms)
    : Model(std::move(id),
            link == Link::kIdentity ? Task::kRegression
                                    : Task::kBinaryClassification,
            std::move(schema)),
      link_(link),
      intercept_(intercept),
      terms_(std::move(terms)) {}

absl::StatusOr<std::shared_ptr<const LinearModel>> LinearModel::Create(
    std::string id, data::Schema schema, Link link, double intercept,
    std::vector<Term> terms) {
  if (terms.size() != schema.size()) {
    return absl::InvalidArgumentError(
        fmt::format("linear model has {} terms for {} variables", terms.size(),
                    schema.size()));
  }
  if (!std::isfinite(intercept)) {
    return absl::InvalidArgumentError("intercept must be finite");
  }
  for (size_t j = 0; j < terms.size(); ++j) {
    const auto& variable = schema.variables[j];
    const size_t expected = variable.kind == data::ColumnKind::kNumeric
                                ? 1
                                : variable.levels.size();
    if (terms[j].weights.size() != expected) {
      return absl::InvalidArgumentError(
          fmt::format("variable \"{}\" needs {} weight(s), got {}", variable.id,
                      expected, terms[j].weights.size()));
    }
    for (const double w : terms[j].weights) {
      if (!std::isfinite(w)) {
        return absl::InvalidArgumentError(
            fmt::format("non-finite weight for variable \"{}\"", variable.id));
      }
    }
  }
  return std::make_shared<const LinearModel>(std::move(id), std::move(schema),
                                             link, intercept, std::move(terms));
}

double LinearModel::PredictRow(std::span<const double> row) const {
  double score = intercept_;
  for (size_t j = 0; j < terms_.size(); ++j) {
    const auto& weights = terms_[j].weights;
    if (schema().variables[j].kind == data::ColumnKind::kNumeric) {
      score += weights[0] * row[j];
    } else {
      score += weights[static_cast<size_t>(row[j])];
    }
  }
  return link_ == Link::kIdentity ? score : Sigmoid(score);
}

absl::StatusOr<ModelHandle> LinearModel::RefitWithout(
    const data::Dataset& dataset, std::string_view dropped) const {
  if (!schema().IndexOf(dropped).has_value()) {
    return absl::InvalidArgumentError(
        fmt::format("unknown variable \"{}\"", dropped));
  }
  ASSIGN_OR_RETURN(auto refit, Refit(dataset, {std::string(dropped)}));
  return refit;
}

absl::StatusOr<std::shared_ptr<const LinearModel>> LinearModel::Refit(
    const data::Dataset& dataset,
    const std::vector<std::string>& excluded) const {
  RETURN_IF_ERROR(CheckSchemaCompatible(*this, dataset.feature_schema()));
  ASSIGN_OR_RETURN(const std::vector<double> target, dataset.TargetValues());
  if (link_ == Link::kLogistic) {
    for (const double y : target) {
      if (y != 0.0 && y != 1.0) {
        return absl::InvalidArgumentError(
            "logistic refit requires a 0/1 target");
      }
    }
  }

  // Intercept first; categorical variables drop their first level.
  std::vector<DesignColumn> design;
  for (size_t j = 0; j < schema().size(); ++j) {
    const auto& variable = schema().variables[j];
    if (std::find(excluded.begin(), excluded.end(), variable.id) !=
        excluded.end()) {
      continue;
    }
    if (variable.kind == data::ColumnKind::kNumeric) {
      design.push_back({j, -1});
    } else {
      for (size_t l = 1; l < variable.levels.size(); ++l) {
        design.push_back({j, static_cast<int>(l)});
      }
    }
  }
  const data::FeatureMatrix& features = dataset.features();
  const Eigen::Index n = static_cast<Eigen::Index>(dataset.n_rows());
  const Eigen::Index k = static_cast<Eigen::Index>(design.size()) + 1;
  Eigen::MatrixXd x(n, k);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, 0) = 1.0;
    for (size_t c = 0; c < design.size(); ++c) {
      const double v = features.at(i, design[c].variable);
      x(i, c + 1) =
          design[c].level < 0 ? v : (v == design[c].level ? 1.0 : 0.0);
    }
  }
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(target.data(), n);

  Eigen::VectorXd beta;
  if (link_ == Link::kIdentity) {
    ASSIGN_OR_RETURN(beta, SolveLeastSquares(x, y));
  } else {
    beta = Eigen::VectorXd::Zero(k);
    for (int iteration = 0; iteration < kIrlsMaxIterations; ++iteration) {
      const Eigen::VectorXd eta = x * beta;
      Eigen::VectorXd sqrt_w(n), z(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double mu = std::clamp(Sigmoid(eta(i)), 1e-10, 1.0 - 1e-10);
        const double w = mu * (1.0 - mu);
        sqrt_w(i) = std::sqrt(w);
        z(i) = eta(i) + (y(i) - mu) / w;
      }
      ASSIGN_OR_RETURN(
          const Eigen::VectorXd next,
          SolveLeastSquares(sqrt_w.asDiagonal() * x, sqrt_w.cwiseProduct(z)));
      const double change = (next - beta).cwiseAbs().maxCoeff();
      beta = next;
      if (change < kIrlsTolerance) break;
    }
  }

  std::vector<Term> terms(schema().size());
  for (size_t j = 0; j < schema().size(); ++j) {
    const auto& variable = schema().variables[j];
    terms[j].weights.assign(variable.kind == data::ColumnKind::kNumeric
                                ? 1
                                : variable.levels.size(),
                            0.0);
  }
  for (size_t c = 0; c < design.size(); ++c) {
    auto& weights = terms[design[c].variable].weights;
    weights[design[c].level < 0 ? 0 : design[c].level] = beta(c + 1);
  }
  std::string refit_id = id();
  for (const auto& name : excluded) refit_id += "-without-" + name;
  return Create(std::move(refit_id), schema(), link_, beta(0),
                std::move(terms));
}

std::optional<nlohmann::json> LinearModel::ToSpec() const {
  nlohmann::json weights = nlohmann::json::object();
  for (size_t j = 0; j < schema().size(); ++j) {
    const auto& variable = schema().variables[j];
    if (variable.kind == data::ColumnKind::kNumeric) {
      weights[variable.id] = terms_[j].weights[0];
    } else {
      nlohmann::json levels = nlohmann::json::object();
      for (size_t l = 0; l < variable.levels.size(); ++l) {
        levels[variable.levels[l]] = terms_[j].weights[l];
      }
      weights[variable.id] = std::move(levels);
    }
  }
  return nlohmann::json{
      {"model-spec", 1},         {"id", id()},
      {"type", "linear"},        {"link", LinkName(link_)},
      {"intercept", intercept_}, {"weights", std::move(weights)}};
}

}  // namespace iema::model
