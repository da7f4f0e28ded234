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

// Data-level explanations: distributions, pairwise relationships, and
// target-vs-variable profiles.

#ifndef IEMA_DATA_DATA_EXPLANATIONS_H_
#define IEMA_DATA_DATA_EXPLANATIONS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "iema/data/dataset.h"

namespace iema::data {

enum class DistributionKind { kHistogram, kBoxplot, kBarplot };

std::string_view DistributionKindName(DistributionKind kind);

struct DistributionBin {
  // Level name for barplots, empty for histograms.
  std::string label;
  // [lower, upper) for histograms; the last bin is closed.
  std::optional<std::pair<double, double>> interval;
  size_t count = 0;
};

struct BoxplotStats {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
  // Most extreme values within 1.5 IQR of the quartiles.
  double lower_whisker = 0, upper_whisker = 0;
  std::vector<double> outliers;
};

struct DistributionSummary {
  std::string column;
  DistributionKind kind = DistributionKind::kHistogram;
  std::vector<DistributionBin> bins;
  std::optional<BoxplotStats> stats;
  size_t n_included = 0;
};

// Histogram bins follow the Freedman-Diaconis rule clamped to [1, 50] (10
// bins when the IQR is zero, one bin for a constant column).
absl::StatusOr<DistributionSummary> SummarizeDistribution(
    const Dataset& dataset, std::string_view column, DistributionKind kind);

enum class CorrelationMethod { kPearson, kSpearman, kCramersV, kEtaSquared };

std::string_view CorrelationMethodName(CorrelationMethod method);
absl::StatusOr<CorrelationMethod> ParseCorrelationMethod(std::string_view name);

// Symmetric matrix over every dataset column (target included).
struct CorrelationMatrix {
  std::vector<std::string> variables;
  std::vector<CorrelationMethod> methods;
  // nullopt marks an undefined entry (zero variance, single level).
  std::vector<std::optional<double>> values;

  size_t size() const { return variables.size(); }
  const std::optional<double>& value(size_t i, size_t j) const {
    return values[i * variables.size() + j];
  }
  CorrelationMethod method(size_t i, size_t j) const {
    return methods[i * variables.size() + j];
  }
};

// Numeric pairs use "numeric_method" (Pearson or Spearman), categorical pairs
// Cramer's V, mixed pairs the correlation ratio (eta squared).
absl::StatusOr<CorrelationMatrix> PairwiseCorrelation(
    const Dataset& dataset,
    CorrelationMethod numeric_method = CorrelationMethod::kPearson);

struct CorrelationEdge {
  size_t a = 0;
  size_t b = 0;
  double weight = 0;
};

struct CorrelationNetwork {
  std::vector<std::string> nodes;
  std::vector<CorrelationEdge> edges;
  double threshold = 0.3;
};

inline constexpr double kDefaultNetworkThreshold = 0.3;

// Keeps the defined off-diagonal pairs with |corr| >= threshold.
absl::StatusOr<CorrelationNetwork> BuildCorrelationNetwork(
    const Dataset& dataset, double threshold = kDefaultNetworkThreshold,
    CorrelationMethod numeric_method = CorrelationMethod::kPearson);

struct DataProfilePoint {
  // Level for categorical variables.
  std::string label;
  // Mean of the member values for numeric bins, level code otherwise.
  double x = 0;
  double lower = 0;
  double upper = 0;
  double mean_target = 0;
  size_t count = 0;
};

struct ScatterPoint {
  size_t row = 0;
  double x = 0;
  double y = 0;
};

struct DataProfile {
  std::string variable;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<std::string> levels;
  std::vector<DataProfilePoint> curve;
  std::vector<ScatterPoint> scatter;
};

inline constexpr size_t kMaxScatterPoints = 500;

// Binned mean of the target against "variable": quantile bins for numeric
// variables, one point per level for categorical ones. The scatter sample
// holds every row up to 500, else a seeded sample of 500.
absl::StatusOr<DataProfile> ComputeDataProfile(const Dataset& dataset,
                                               std::string_view variable,
                                               size_t bins = 10,
                                               uint64_t seed = 0);

struct MosaicTable {
  std::string var_a;
  std::string var_b;
  std::vector<std::string> levels_a;
  std::vector<std::string> levels_b;
  // levels_a.size() x levels_b.size(), row-major.
  std::vector<size_t> counts;
  std::vector<size_t> row_totals;
  std::vector<size_t> column_totals;
  size_t total = 0;

  size_t count(size_t a, size_t b) const {
    return counts[a * levels_b.size() + b];
  }
};

absl::StatusOr<MosaicTable> ComputeMosaicTable(const Dataset& dataset,
                                               std::string_view var_a,
                                               std::string_view var_b);

}  // namespace iema::data

#endif  // IEMA_DATA_DATA_EXPLANATIONS_H_
