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

// Immutable tabular dataset with typed columns and a designated target.

#ifndef IEMA_DATA_DATASET_H_
#define IEMA_DATA_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace iema::data {

enum class ColumnKind { kNumeric, kCategorical };

std::string_view ColumnKindName(ColumnKind kind);
absl::StatusOr<ColumnKind> ParseColumnKind(std::string_view name);

// A single column. Categorical entries are stored as level codes, so that
// every column exposes its entries as doubles.
class Column {
 public:
  static Column Numeric(std::string id, std::vector<double> values);
  // Levels are the distinct labels in lexicographic order.
  static Column Categorical(std::string id,
                            const std::vector<std::string>& labels);

  const std::string& id() const { return id_; }
  ColumnKind kind() const { return kind_; }
  size_t size() const { return values_.size(); }
  bool is_numeric() const { return kind_ == ColumnKind::kNumeric; }

  // Numeric value, or level code for categorical columns.
  const std::vector<double>& values() const { return values_; }
  double value(size_t row) const { return values_[row]; }

  // Empty for numeric columns.
  const std::vector<std::string>& levels() const { return levels_; }
  int code(size_t row) const { return static_cast<int>(values_[row]); }
  std::optional<int> LevelCode(std::string_view label) const;

  // Display text of an entry.
  std::string Label(size_t row) const;

 private:
  Column(std::string id, ColumnKind kind, std::vector<double> values,
         std::vector<std::string> levels)
      : id_(std::move(id)),
        kind_(kind),
        values_(std::move(values)),
        levels_(std::move(levels)) {}

  std::string id_;
  ColumnKind kind_;
  std::vector<double> values_;
  std::vector<std::string> levels_;
};

// One model input variable.
struct Variable {
  std::string id;
  ColumnKind kind = ColumnKind::kNumeric;
  std::vector<std::string> levels;

  bool operator==(const Variable&) const = default;
};

// Ordered input variables of a model (the non-target columns of a dataset).
struct Schema {
  std::vector<Variable> variables;

  size_t size() const { return variables.size(); }
  std::optional<size_t> IndexOf(std::string_view id) const;
  bool operator==(const Schema&) const = default;
};

// Row-major matrix of schema-typed values (categoricals as level codes).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double at(size_t row, size_t col) const { return values_[row * cols_ + col]; }
  double& at(size_t row, size_t col) { return values_[row * cols_ + col]; }

  std::span<const double> row(size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }
  std::span<double> row(size_t r) {
    return {values_.data() + r * cols_, cols_};
  }

  std::vector<double> column(size_t c) const;
  void AppendRow(std::span<const double> row);

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> values_;
};

class Dataset {
 public:
  // Validates the column invariants: equal lengths, at least 2 rows, unique
  // identifiers, finite numeric entries and an existing target.
  static absl::StatusOr<Dataset> Create(std::string name,
                                        std::vector<Column> columns,
                                        std::string_view target);

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  const Column& column(size_t index) const { return columns_[index]; }
  const Column* FindColumn(std::string_view id) const;
  std::optional<size_t> ColumnIndex(std::string_view id) const;

  const Column& target() const { return columns_[target_index_]; }
  size_t target_index() const { return target_index_; }
  size_t n_rows() const { return n_rows_; }
  // Number of non-target columns.
  size_t num_features() const { return schema_.size(); }

  const Schema& feature_schema() const { return schema_; }
  const FeatureMatrix& features() const { return features_; }
  // Column index in the dataset of the "feature"-th schema variable.
  size_t FeatureColumnIndex(size_t feature) const {
    return feature_columns_[feature];
  }

  // Numeric target, or 0/1 codes for a two-level categorical target.
  absl::StatusOr<std::vector<double>> TargetValues() const;

  // Stable 64-bit digest of names, kinds, levels and entries.
  uint64_t Fingerprint() const;

 private:
  Dataset() = default;

  std::string name_;
  std::vector<Column> columns_;
  size_t target_index_ = 0;
  size_t n_rows_ = 0;
  Schema schema_;
  std::vector<size_t> feature_columns_;
  FeatureMatrix features_;
};

struct LoadConfig {
  std::string name = "dataset";
  std::string target;
  // Forced column kinds; other columns are inferred.
  std::map<std::string, ColumnKind> types;
  std::optional<uint64_t> seed;
};

// Parses the sidecar JSON config: {"target": ..., "types": {id: kind},
// "seed": ...}.
absl::StatusOr<LoadConfig> ParseLoadConfig(std::string_view json_text);

// Parses RFC-4180 CSV with a mandatory header row. A column is numeric when
// every entry parses as a finite number, unless overridden. Missing cells are
// rejected.
absl::StatusOr<Dataset> LoadDataset(std::string_view csv,
                                    const LoadConfig& config);

absl::StatusOr<Dataset> LoadDatasetFile(const std::string& path,
                                        const LoadConfig& config);

// Splits CSV text into records. Exposed for testing.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view csv);

}  // namespace iema::data

#endif  // IEMA_DATA_DATASET_H_
