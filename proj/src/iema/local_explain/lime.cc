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

#include "iema/local_explain/lime.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "Eigen/Dense"
#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/instance.h"

namespace iema::local {
namespace {

struct WeightedFit {
  double intercept = 0;
  std::vector<double> beta;
};

// Weighted least squares of y on the selected design columns plus an
// intercept.
WeightedFit FitWeighted(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& weights,
                        const std::vector<size_t>& selected) {
  const Eigen::Index n = design.rows();
  Eigen::MatrixXd x(n, static_cast<Eigen::Index>(selected.size()) + 1);
  const Eigen::VectorXd root = weights.array().sqrt();
  x.col(0) = root;
  for (size_t k = 0; k < selected.size(); ++k) {
    x.col(static_cast<Eigen::Index>(k) + 1) =
        design.col(static_cast<Eigen::Index>(selected[k])).cwiseProduct(root);
  }
  const Eigen::VectorXd solution =
      x.colPivHouseholderQr().solve(y.cwiseProduct(root));
  WeightedFit fit;
  fit.intercept = solution(0);
  fit.beta.assign(design.cols(), 0.0);
  for (size_t k = 0; k < selected.size(); ++k) {
    fit.beta[selected[k]] = solution(static_cast<Eigen::Index>(k) + 1);
  }
  return fit;
}

double WeightedMean(const Eigen::VectorXd& v, const Eigen::VectorXd& w) {
  return v.dot(w) / w.sum();
}

}  // namespace

absl::StatusOr<Attribution> LimeAttribution(const model::Model& model,
                                            const data::Dataset& dataset,
                                            std::span<const double> instance,
                                            const LimeOptions& options) {
  RETURN_IF_ERROR(CheckExplainable(model, dataset));
  const auto& schema = dataset.feature_schema();
  const size_t p = schema.size();
  if (instance.size() != p) {
    return absl::InvalidArgumentError("instance does not match the schema");
  }
  if (p == 0) return absl::InvalidArgumentError("model has no variables");
  if (options.n_samples < 10 * p) {
    return absl::InvalidArgumentError(
        fmt::format("LIME needs n_samples >= 10 * p = {}, got {}", 10 * p,
                    options.n_samples));
  }
  const double width =
      options.kernel_width.value_or(0.75 * std::sqrt(static_cast<double>(p)));
  if (!(width > 0) || !std::isfinite(width)) {
    return absl::InvalidArgumentError("kernel_width must be positive");
  }
  const size_t top_k = options.top_k.value_or(p);
  if (top_k < 1 || top_k > p) {
    return absl::InvalidArgumentError(
        fmt::format("top_k must be between 1 and {}, got {}", p, top_k));
  }

  // Per-variable centering and scale.
  const data::FeatureMatrix& features = dataset.features();
  std::vector<double> center(p), scale(p, 1.0);
  for (size_t j = 0; j < p; ++j) {
    const std::vector<double> column = features.column(j);
    if (schema.variables[j].kind == data::ColumnKind::kNumeric) {
      center[j] = Mean(column);
      const double sd = SampleStdDev(column);
      if (sd > 0) scale[j] = sd;
    } else {
      center[j] = static_cast<double>(
                      std::count(column.begin(), column.end(), instance[j])) /
                  static_cast<double>(column.size());
    }
  }
  auto design_value = [&](size_t j, double z) {
    return schema.variables[j].kind == data::ColumnKind::kNumeric
               ? (z - center[j]) / scale[j]
               : (z == instance[j] ? 1.0 : 0.0) - center[j];
  };

  const Eigen::Index n = static_cast<Eigen::Index>(options.n_samples);
  Eigen::MatrixXd design(n, static_cast<Eigen::Index>(p));
  Eigen::VectorXd response(n), weights(n);
  Rng rng(options.seed);
  std::vector<double> row(p);
  bool varied = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    double distance2 = 0.0;
    for (size_t j = 0; j < p; ++j) {
      row[j] = features.at(rng.UniformInt(features.rows()), j);
      design(i, static_cast<Eigen::Index>(j)) = design_value(j, row[j]);
      if (schema.variables[j].kind == data::ColumnKind::kNumeric) {
        const double d = (row[j] - instance[j]) / scale[j];
        distance2 += d * d;
      } else if (row[j] != instance[j]) {
        distance2 += 1.0;
      }
    }
    if (i > 0 && design.row(i) != design.row(0)) varied = true;
    response(i) = model.PredictRow(row);
    weights(i) = std::exp(-distance2 / (width * width));
  }
  if (!varied) {
    return absl::FailedPreconditionError(
        "LIME design is degenerate: every perturbation is identical");
  }
  if (!(weights.sum() > 0)) {
    return absl::FailedPreconditionError(
        "LIME kernel weights vanish; increase kernel_width");
  }

  const double y_mean = WeightedMean(response, weights);
  const double y_ss =
      (response.array() - y_mean).square().matrix().dot(weights);
  Attribution attribution;
  attribution.method = AttributionMethod::kLime;
  attribution.prediction = model.PredictRow(instance);

  std::vector<double> beta(p, 0.0);
  if (y_ss == 0.0) {
    attribution.baseline = y_mean;
    attribution.fidelity = 1.0;
  } else {
    // Rank columns by |weighted correlation| with the response; constant
    // columns carry no signal and are never selected.
    std::vector<double> strength(p, -1.0);
    for (size_t j = 0; j < p; ++j) {
      const Eigen::VectorXd column = design.col(static_cast<Eigen::Index>(j));
      const double x_mean = WeightedMean(column, weights);
      const Eigen::ArrayXd dx = column.array() - x_mean;
      const double x_ss = (dx.square().matrix()).dot(weights);
      if (x_ss <= 0) continue;
      const double cov =
          (dx * (response.array() - y_mean)).matrix().dot(weights);
      strength[j] = std::fabs(cov) / std::sqrt(x_ss * y_ss);
    }
    std::vector<size_t> ranked(p);
    std::iota(ranked.begin(), ranked.end(), 0);
    std::stable_sort(ranked.begin(), ranked.end(), [&](size_t a, size_t b) {
      return strength[a] > strength[b];
    });
    std::vector<size_t> selected;
    for (size_t k = 0; k < top_k; ++k) {
      if (strength[ranked[k]] >= 0) selected.push_back(ranked[k]);
    }
    std::sort(selected.begin(), selected.end());
    const WeightedFit fit = FitWeighted(design, response, weights, selected);
    beta = fit.beta;
    attribution.baseline = fit.intercept;
    Eigen::VectorXd fitted = Eigen::VectorXd::Constant(n, fit.intercept);
    for (size_t j : selected) {
      fitted += beta[j] * design.col(static_cast<Eigen::Index>(j));
    }
    const double residual =
        (response - fitted).array().square().matrix().dot(weights);
    attribution.fidelity = std::clamp(1.0 - residual / y_ss, 0.0, 1.0);
  }
  for (size_t j = 0; j < p; ++j) {
    Contribution contribution;
    contribution.variable = schema.variables[j].id;
    contribution.value = beta[j] * design_value(j, instance[j]);
    contribution.coefficient =
        schema.variables[j].kind == data::ColumnKind::kNumeric
            ? beta[j] / scale[j]
            : beta[j];
    attribution.contributions.push_back(std::move(contribution));
  }
  return attribution;
}

}  // namespace iema::local
