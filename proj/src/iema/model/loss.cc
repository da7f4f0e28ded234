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

#include "iema/model/loss.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "iema/common/stats.h"

namespace iema::model {

std::string_view LossName(LossKind kind) {
  switch (kind) {
    case LossKind::kRmse:
      return "rmse";
    case LossKind::kCrossEntropy:
      return "cross_entropy";
    case LossKind::kOneMinusAuc:
      return "one_minus_auc";
  }
  return "";
}

absl::StatusOr<LossKind> ParseLoss(std::string_view name) {
  if (name == "rmse") return LossKind::kRmse;
  if (name == "cross_entropy") return LossKind::kCrossEntropy;
  if (name == "one_minus_auc") return LossKind::kOneMinusAuc;
  return absl::InvalidArgumentError(fmt::format(
      "unknown loss \"{}\" (expected rmse, cross_entropy or one_minus_auc)",
      name));
}

LossKind DefaultLoss(Task task) {
  return task == Task::kRegression ? LossKind::kRmse : LossKind::kOneMinusAuc;
}

absl::StatusOr<double> ComputeLoss(LossKind kind,
                                   std::span<const double> predictions,
                                   std::span<const double> targets) {
  if (predictions.size() != targets.size()) {
    return absl::InvalidArgumentError(fmt::format(
        "{} predictions for {} targets", predictions.size(), targets.size()));
  }
  if (predictions.empty()) {
    return absl::InvalidArgumentError("loss needs at least one prediction");
  }
  const double n = static_cast<double>(predictions.size());
  switch (kind) {
    case LossKind::kRmse: {
      double sum = 0.0;
      for (size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - targets[i];
        sum += d * d;
      }
      return std::sqrt(sum / n);
    }
    case LossKind::kCrossEntropy: {
      double sum = 0.0;
      for (size_t i = 0; i < predictions.size(); ++i) {
        const double p = std::clamp(predictions[i], 1e-12, 1.0 - 1e-12);
        sum -=
            targets[i] * std::log(p) + (1.0 - targets[i]) * std::log(1.0 - p);
      }
      return sum / n;
    }
    case LossKind::kOneMinusAuc: {
      double positives = 0.0;
      for (const double y : targets) {
        if (y != 0.0 && y != 1.0) {
          return absl::InvalidArgumentError("AUC requires 0/1 targets");
        }
        positives += y;
      }
      const double negatives = n - positives;
      if (positives == 0.0 || negatives == 0.0) {
        return absl::InvalidArgumentError(
            "AUC is undefined when only one class is present");
      }
      // Mann-Whitney U from average ranks; ties contribute one half.
      const std::vector<double> ranks = AverageRanks(predictions);
      double positive_rank_sum = 0.0;
      for (size_t i = 0; i < ranks.size(); ++i) {
        if (targets[i] == 1.0) positive_rank_sum += ranks[i];
      }
      const double u = positive_rank_sum - positives * (positives + 1.0) / 2.0;
      return std::clamp(1.0 - u / (positives * negatives), 0.0, 1.0);
    }
  }
  return absl::InternalError("unknown loss");
}

}  // namespace iema::model
