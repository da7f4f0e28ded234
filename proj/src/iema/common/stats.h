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

#ifndef IEMA_COMMON_STATS_H_
#define IEMA_COMMON_STATS_H_

#include <optional>
#include <span>
#include <vector>

namespace iema {

// Quantile of already sorted values, linear interpolation between order
// statistics (h = (n - 1) * prob). This is the only quantile rule used in the
// project.
double SortedQuantile(std::span<const double> sorted, double prob);

// Same as SortedQuantile, sorting a copy first.
double Quantile(std::span<const double> values, double prob);

double Mean(std::span<const double> values);

// Population variance (divides by n).
double PopulationVariance(std::span<const double> values);

// Sample standard deviation (divides by n - 1); 0 for fewer than 2 values.
double SampleStdDev(std::span<const double> values);

// Ranks starting at 1, ties receive the average of their ranks.
std::vector<double> AverageRanks(std::span<const double> values);

// Pearson correlation; nullopt when either side has zero variance.
std::optional<double> PearsonCorrelation(std::span<const double> a,
                                         std::span<const double> b);

}  // namespace iema

#endif  // IEMA_COMMON_STATS_H_
