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

#ifndef IEMA_MODEL_LOSS_H_
#define IEMA_MODEL_LOSS_H_

#include <span>
#include <string_view>

#include "absl/status/statusor.h"
#include "iema/model/model.h"

namespace iema::model {

enum class LossKind { kRmse, kCrossEntropy, kOneMinusAuc };

std::string_view LossName(LossKind kind);
absl::StatusOr<LossKind> ParseLoss(std::string_view name);

// rmse for regression, 1 - AUC for classification.
LossKind DefaultLoss(Task task);

// Cross entropy clamps probabilities to [1e-12, 1 - 1e-12]. AUC counts tied
// scores as half concordant and needs both classes among the 0/1 targets.
absl::StatusOr<double> ComputeLoss(LossKind kind,
                                   std::span<const double> predictions,
                                   std::span<const double> targets);

}  // namespace iema::model

#endif  // IEMA_MODEL_LOSS_H_
