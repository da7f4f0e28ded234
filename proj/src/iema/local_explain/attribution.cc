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

#include "iema/local_explain/attribution.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"
#include "iema/local_explain/coalition.h"
#include "iema/local_explain/instance.h"

namespace iema::local {

std::string_view AttributionMethodName(AttributionMethod method) {
  switch (method) {
    case AttributionMethod::kShap:
      return "shap";
    case AttributionMethod::kBreakdown:
      return "breakdown";
    case AttributionMethod::kLime:
      return "lime";
  }
  return "";
}

double Attribution::Total() const {
  double total = baseline;
  for (const auto& contribution : contributions) total += contribution.value;
  return total;
}

const Contribution* Attribution::Find(std::string_view variable) const {
  for (const auto& contribution : contributions) {
    if (contribution.variable == variable) return &contribution;
  }
  return nullptr;
}

namespace {

// Shapley weight s! (p - s - 1)! / p! for a coalition of size s.
std::vector<double> ShapleyWeights(size_t p) {
  std::vector<double> weights(p);
  for (size_t s = 0; s < p; ++s) {
    weights[s] = std::exp(std::lgamma(s + 1.0) + std::lgamma(p - s + 0.0) -
                          std::lgamma(p + 1.0));
  }
  return weights;
}

std::vector<double> ExactShapley(const CoalitionGame& game) {
  const size_t p = game.num_players();
  const uint64_t count = uint64_t{1} << p;
  std::vector<double> values(count);
  for (uint64_t mask = 0; mask < count; ++mask) {
    values[mask] = mask == 0           ? game.empty_value()
                   : mask == count - 1 ? game.prediction()
                                       : game.Value(mask);
  }
  const std::vector<double> weights = ShapleyWeights(p);
  std::vector<double> phi(p, 0.0);
  for (size_t j = 0; j < p; ++j) {
    const uint64_t bit = uint64_t{1} << j;
    for (uint64_t mask = 0; mask < count; ++mask) {
      if (mask & bit) continue;
      phi[j] +=
          weights[std::popcount(mask)] * (values[mask | bit] - values[mask]);
    }
  }
  return phi;
}

}  // namespace

absl::StatusOr<Attribution> ShapAttribution(const model::Model& model,
                                            const data::Dataset& dataset,
                                            std::span<const double> instance,
                                            const ShapOptions& options) {
  const size_t p = dataset.num_features();
  if (options.mode == ShapOptions::Mode::kExact && p > kMaxExactShapVariables) {
    return absl::InvalidArgumentError(fmt::format(
        "exact SHAP supports at most {} variables, the model has {}; use "
        "sampling mode",
        kMaxExactShapVariables, p));
  }
  if (options.mode == ShapOptions::Mode::kSampling &&
      options.permutations < 2) {
    return absl::InvalidArgumentError(
        fmt::format("sampling SHAP needs at least 2 permutations, got {}",
                    options.permutations));
  }
  ASSIGN_OR_RETURN(
      const CoalitionGame game,
      CoalitionGame::Create(model, dataset, instance, options.background_rows,
                            DeriveSeed(options.seed, 1)));
  Attribution attribution;
  attribution.method = AttributionMethod::kShap;
  attribution.baseline = game.empty_value();
  attribution.prediction = game.prediction();
  const auto& schema = dataset.feature_schema();
  if (options.mode == ShapOptions::Mode::kExact) {
    const std::vector<double> phi = ExactShapley(game);
    for (size_t j = 0; j < p; ++j) {
      attribution.contributions.push_back({schema.variables[j].id, phi[j]});
    }
    return attribution;
  }

  // Per-variable marginals are stored and reduced in permutation order, so
  // the result only depends on the seed.
  Rng rng(DeriveSeed(options.seed, 2));
  std::vector<std::vector<double>> marginals(
      p, std::vector<double>(options.permutations));
  std::vector<size_t> order(p);
  for (size_t b = 0; b < options.permutations; ++b) {
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    const std::vector<double> step = game.Marginals(order);
    for (size_t k = 0; k < p; ++k) marginals[order[k]][b] = step[k];
  }
  for (size_t j = 0; j < p; ++j) {
    attribution.contributions.push_back({schema.variables[j].id,
                                         Mean(marginals[j]),
                                         SampleStdDev(marginals[j])});
  }
  attribution.permutations = options.permutations;
  return attribution;
}

absl::StatusOr<Attribution> BreakdownAttribution(
    const model::Model& model, const data::Dataset& dataset,
    std::span<const double> instance, const BreakdownOptions& options) {
  const auto& schema = dataset.feature_schema();
  const size_t p = schema.size();
  std::vector<size_t> order;
  if (options.order.has_value()) {
    std::vector<bool> seen(p, false);
    for (const std::string& name : *options.order) {
      ASSIGN_OR_RETURN(const size_t j, FeatureIndex(dataset, name));
      if (seen[j]) {
        return absl::InvalidArgumentError(
            fmt::format("breakdown order lists \"{}\" twice", name));
      }
      seen[j] = true;
      order.push_back(j);
    }
    if (order.size() != p) {
      return absl::InvalidArgumentError(
          fmt::format("breakdown order has {} variables, expected all {}",
                      order.size(), p));
    }
  }
  ASSIGN_OR_RETURN(
      const CoalitionGame game,
      CoalitionGame::Create(model, dataset, instance, options.background_rows,
                            DeriveSeed(options.seed, 1)));
  if (order.empty() && p > 0) {
    std::vector<double> effect(p);
    for (size_t j = 0; j < p; ++j) {
      const size_t alone[] = {j};
      effect[j] = std::fabs(game.Marginals(alone)[0]);
    }
    order.resize(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return effect[a] > effect[b]; });
  }
  Attribution attribution;
  attribution.method = AttributionMethod::kBreakdown;
  attribution.baseline = game.empty_value();
  attribution.prediction = game.prediction();
  const std::vector<double> steps = game.Marginals(order);
  for (size_t k = 0; k < order.size(); ++k) {
    attribution.contributions.push_back(
        {schema.variables[order[k]].id, steps[k]});
  }
  return attribution;
}

}  // namespace iema::local
