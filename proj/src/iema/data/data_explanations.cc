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

#include "iema/data/data_explanations.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/common/status_macros.h"

namespace iema::data {
namespace {

absl::StatusOr<const Column*> GetColumn(const Dataset& dataset,
                                        std::string_view id) {
  const Column* column = dataset.FindColumn(id);
  if (column == nullptr) {
    return absl::InvalidArgumentError(
        fmt::format("unknown variable \"{}\"", id));
  }
  return column;
}

std::vector<DistributionBin> HistogramBins(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double min = sorted.front();
  const double max = sorted.back();
  if (min == max) {
    return {DistributionBin{"", std::make_pair(min, max), sorted.size()}};
  }
  const double iqr =
      SortedQuantile(sorted, 0.75) - SortedQuantile(sorted, 0.25);
  size_t num_bins = 10;
  if (iqr > 0) {
    const double width =
        2.0 * iqr / std::cbrt(static_cast<double>(sorted.size()));
    num_bins = static_cast<size_t>(
        std::clamp(std::ceil((max - min) / width), 1.0, 50.0));
  }
  std::vector<double> edges(num_bins + 1);
  for (size_t i = 0; i <= num_bins; ++i) {
    edges[i] = min + (max - min) * static_cast<double>(i) /
                         static_cast<double>(num_bins);
  }
  edges.back() = max;
  std::vector<DistributionBin> bins(num_bins);
  for (size_t i = 0; i < num_bins; ++i) {
    bins[i].interval = std::make_pair(edges[i], edges[i + 1]);
  }
  for (const double v : sorted) {
    // Index of the first inner edge strictly greater than v.
    const size_t bin = static_cast<size_t>(
        std::upper_bound(edges.begin() + 1, edges.end() - 1, v) -
        (edges.begin() + 1));
    ++bins[bin].count;
  }
  return bins;
}

BoxplotStats Boxplot(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxplotStats stats;
  stats.min = sorted.front();
  stats.max = sorted.back();
  stats.q1 = SortedQuantile(sorted, 0.25);
  stats.median = SortedQuantile(sorted, 0.5);
  stats.q3 = SortedQuantile(sorted, 0.75);
  stats.mean = Mean(sorted);
  const double iqr = stats.q3 - stats.q1;
  const double low_fence = stats.q1 - 1.5 * iqr;
  const double high_fence = stats.q3 + 1.5 * iqr;
  stats.lower_whisker = stats.max;
  stats.upper_whisker = stats.min;
  for (const double v : sorted) {
    if (v < low_fence || v > high_fence) {
      stats.outliers.push_back(v);
    } else {
      stats.lower_whisker = std::min(stats.lower_whisker, v);
      stats.upper_whisker = std::max(stats.upper_whisker, v);
    }
  }
  return stats;
}

bool IsConstant(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [&](double v) { return v == values.front(); });
}

std::optional<double> CramersV(const Column& a, const Column& b) {
  const size_t la = a.levels().size();
  const size_t lb = b.levels().size();
  std::vector<double> table(la * lb, 0.0);
  std::vector<double> rows(la, 0.0), cols(lb, 0.0);
  for (size_t r = 0; r < a.size(); ++r) {
    table[a.code(r) * lb + b.code(r)] += 1;
    rows[a.code(r)] += 1;
    cols[b.code(r)] += 1;
  }
  const double n = static_cast<double>(a.size());
  const auto nonempty = [](const std::vector<double>& v) {
    return static_cast<size_t>(
        std::count_if(v.begin(), v.end(), [](double x) { return x > 0; }));
  };
  const size_t min_dim = std::min(nonempty(rows), nonempty(cols));
  if (min_dim < 2) return std::nullopt;
  double chi2 = 0.0;
  for (size_t i = 0; i < la; ++i) {
    for (size_t j = 0; j < lb; ++j) {
      const double expected = rows[i] * cols[j] / n;
      if (expected <= 0) continue;
      const double diff = table[i * lb + j] - expected;
      chi2 += diff * diff / expected;
    }
  }
  return std::clamp(std::sqrt(chi2 / (n * static_cast<double>(min_dim - 1))),
                    0.0, 1.0);
}

std::optional<double> EtaSquared(const Column& numeric,
                                 const Column& categorical) {
  const auto& x = numeric.values();
  if (IsConstant(x)) return std::nullopt;
  const double mean = Mean(x);
  const size_t levels = categorical.levels().size();
  std::vector<double> sums(levels, 0.0), counts(levels, 0.0);
  double total = 0.0;
  for (size_t r = 0; r < x.size(); ++r) {
    sums[categorical.code(r)] += x[r];
    counts[categorical.code(r)] += 1;
    total += (x[r] - mean) * (x[r] - mean);
  }
  double between = 0.0;
  for (size_t g = 0; g < levels; ++g) {
    if (counts[g] == 0) continue;
    const double group_mean = sums[g] / counts[g];
    between += counts[g] * (group_mean - mean) * (group_mean - mean);
  }
  if (total <= 0) return std::nullopt;
  return std::clamp(between / total, 0.0, 1.0);
}

}  // namespace

std::string_view DistributionKindName(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kHistogram:
      return "histogram";
    case DistributionKind::kBoxplot:
      return "boxplot";
    case DistributionKind::kBarplot:
      return "barplot";
  }
  return "";
}

absl::StatusOr<DistributionSummary> SummarizeDistribution(
    const Dataset& dataset, std::string_view column_id, DistributionKind kind) {
  ASSIGN_OR_RETURN(const Column* column, GetColumn(dataset, column_id));
  const bool wants_numeric = kind != DistributionKind::kBarplot;
  if (wants_numeric != column->is_numeric()) {
    return absl::InvalidArgumentError(fmt::format(
        "{} requires a {} column, \"{}\" is {}", DistributionKindName(kind),
        wants_numeric ? "numeric" : "categorical", column_id,
        ColumnKindName(column->kind())));
  }
  DistributionSummary summary;
  summary.column = column->id();
  summary.kind = kind;
  summary.n_included = column->size();
  switch (kind) {
    case DistributionKind::kHistogram:
      summary.bins = HistogramBins(column->values());
      break;
    case DistributionKind::kBoxplot:
      summary.stats = Boxplot(column->values());
      break;
    case DistributionKind::kBarplot: {
      summary.bins.resize(column->levels().size());
      for (size_t l = 0; l < column->levels().size(); ++l) {
        summary.bins[l].label = column->levels()[l];
      }
      for (size_t r = 0; r < column->size(); ++r) {
        ++summary.bins[column->code(r)].count;
      }
      break;
    }
  }
  return summary;
}

std::string_view CorrelationMethodName(CorrelationMethod method) {
  switch (method) {
    case CorrelationMethod::kPearson:
      return "pearson";
    case CorrelationMethod::kSpearman:
      return "spearman";
    case CorrelationMethod::kCramersV:
      return "cramers_v";
    case CorrelationMethod::kEtaSquared:
      return "eta_squared";
  }
  return "";
}

absl::StatusOr<CorrelationMethod> ParseCorrelationMethod(
    std::string_view name) {
  if (name == "pearson") return CorrelationMethod::kPearson;
  if (name == "spearman") return CorrelationMethod::kSpearman;
  return absl::InvalidArgumentError(fmt::format(
      "unknown correlation method \"{}\" (expected pearson or spearman)",
      name));
}

absl::StatusOr<CorrelationMatrix> PairwiseCorrelation(
    const Dataset& dataset, CorrelationMethod numeric_method) {
  if (numeric_method != CorrelationMethod::kPearson &&
      numeric_method != CorrelationMethod::kSpearman) {
    return absl::InvalidArgumentError(
        "numeric pairs support pearson or spearman only");
  }
  const auto& columns = dataset.columns();
  const size_t p = columns.size();
  if (p < 2) {
    return absl::InvalidArgumentError(
        "pairwise correlation needs at least 2 variables");
  }
  // Spearman is Pearson on average ranks.
  std::vector<std::vector<double>> numeric(p);
  for (size_t i = 0; i < p; ++i) {
    if (!columns[i].is_numeric()) continue;
    numeric[i] = numeric_method == CorrelationMethod::kSpearman
                     ? AverageRanks(columns[i].values())
                     : columns[i].values();
  }

  CorrelationMatrix matrix;
  matrix.values.assign(p * p, std::nullopt);
  matrix.methods.assign(p * p, numeric_method);
  for (const Column& column : columns) matrix.variables.push_back(column.id());
  for (size_t i = 0; i < p; ++i) {
    for (size_t j = i; j < p; ++j) {
      const Column& a = columns[i];
      const Column& b = columns[j];
      CorrelationMethod method;
      std::optional<double> value;
      if (a.is_numeric() && b.is_numeric()) {
        method = numeric_method;
        if (i == j) {
          if (!IsConstant(a.values())) value = 1.0;
        } else {
          value = PearsonCorrelation(numeric[i], numeric[j]);
        }
      } else if (!a.is_numeric() && !b.is_numeric()) {
        method = CorrelationMethod::kCramersV;
        if (i == j) {
          if (a.levels().size() >= 2) value = 1.0;
        } else {
          value = CramersV(a, b);
        }
      } else {
        method = CorrelationMethod::kEtaSquared;
        value = a.is_numeric() ? EtaSquared(a, b) : EtaSquared(b, a);
      }
      matrix.values[i * p + j] = matrix.values[j * p + i] = value;
      matrix.methods[i * p + j] = matrix.methods[j * p + i] = method;
    }
  }
  return matrix;
}

absl::StatusOr<CorrelationNetwork> BuildCorrelationNetwork(
    const Dataset& dataset, double threshold,
    CorrelationMethod numeric_method) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    return absl::InvalidArgumentError(
        fmt::format("network threshold must be in [0, 1], got {}", threshold));
  }
  ASSIGN_OR_RETURN(const CorrelationMatrix matrix,
                   PairwiseCorrelation(dataset, numeric_method));
  CorrelationNetwork network;
  network.nodes = matrix.variables;
  network.threshold = threshold;
  for (size_t i = 0; i < matrix.size(); ++i) {
    for (size_t j = i + 1; j < matrix.size(); ++j) {
      const auto& value = matrix.value(i, j);
      if (value.has_value() && std::abs(*value) >= threshold) {
        network.edges.push_back(CorrelationEdge{i, j, *value});
      }
    }
  }
  return network;
}

absl::StatusOr<DataProfile> ComputeDataProfile(const Dataset& dataset,
                                               std::string_view variable,
                                               size_t bins, uint64_t seed) {
  ASSIGN_OR_RETURN(const Column* column, GetColumn(dataset, variable));
  if (bins < 1) return absl::InvalidArgumentError("bins must be >= 1");
  ASSIGN_OR_RETURN(const std::vector<double> target, dataset.TargetValues());
  const size_t n = dataset.n_rows();

  DataProfile profile;
  profile.variable = column->id();
  profile.kind = column->kind();
  profile.levels = column->levels();

  std::vector<size_t> membership(n);
  std::vector<DataProfilePoint> groups;
  if (column->is_numeric()) {
    std::vector<double> sorted = column->values();
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    for (size_t k = 0; k <= bins; ++k) {
      const double edge = SortedQuantile(
          sorted, static_cast<double>(k) / static_cast<double>(bins));
      if (edges.empty() || edge > edges.back()) edges.push_back(edge);
    }
    if (edges.size() == 1) edges.push_back(edges.front());
    groups.resize(edges.size() - 1);
    for (size_t g = 0; g < groups.size(); ++g) {
      groups[g].lower = edges[g];
      groups[g].upper = edges[g + 1];
    }
    for (size_t r = 0; r < n; ++r) {
      const double v = column->value(r);
      membership[r] = static_cast<size_t>(
          std::upper_bound(edges.begin() + 1, edges.end() - 1, v) -
          (edges.begin() + 1));
    }
  } else {
    groups.resize(column->levels().size());
    for (size_t g = 0; g < groups.size(); ++g) {
      groups[g].label = column->levels()[g];
      groups[g].x = static_cast<double>(g);
      groups[g].lower = groups[g].upper = static_cast<double>(g);
    }
    for (size_t r = 0; r < n; ++r) membership[r] = column->code(r);
  }

  std::vector<double> sum_x(groups.size(), 0.0), sum_y(groups.size(), 0.0);
  for (size_t r = 0; r < n; ++r) {
    const size_t g = membership[r];
    ++groups[g].count;
    sum_x[g] += column->value(r);
    sum_y[g] += target[r];
  }
  for (size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].count == 0) continue;
    const double count = static_cast<double>(groups[g].count);
    if (column->is_numeric()) groups[g].x = sum_x[g] / count;
    groups[g].mean_target = sum_y[g] / count;
    profile.curve.push_back(groups[g]);
  }

  std::vector<size_t> rows;
  if (n <= kMaxScatterPoints) {
    rows.resize(n);
    std::iota(rows.begin(), rows.end(), 0);
  } else {
    Rng rng(seed);
    rows = rng.SampleIndices(n, kMaxScatterPoints);
  }
  for (const size_t r : rows) {
    profile.scatter.push_back(ScatterPoint{r, column->value(r), target[r]});
  }
  return profile;
}

absl::StatusOr<MosaicTable> ComputeMosaicTable(const Dataset& dataset,
                                               std::string_view var_a,
                                               std::string_view var_b) {
  ASSIGN_OR_RETURN(const Column* a, GetColumn(dataset, var_a));
  ASSIGN_OR_RETURN(const Column* b, GetColumn(dataset, var_b));
  for (const Column* column : {a, b}) {
    if (column->is_numeric()) {
      return absl::InvalidArgumentError(fmt::format(
          "mosaic table requires categorical columns, \"{}\" is numeric",
          column->id()));
    }
  }
  MosaicTable table;
  table.var_a = a->id();
  table.var_b = b->id();
  table.levels_a = a->levels();
  table.levels_b = b->levels();
  table.counts.assign(table.levels_a.size() * table.levels_b.size(), 0);
  table.row_totals.assign(table.levels_a.size(), 0);
  table.column_totals.assign(table.levels_b.size(), 0);
  for (size_t r = 0; r < dataset.n_rows(); ++r) {
    ++table.counts[a->code(r) * table.levels_b.size() + b->code(r)];
    ++table.row_totals[a->code(r)];
    ++table.column_totals[b->code(r)];
    ++table.total;
  }
  return table;
}

}  // namespace iema::data
