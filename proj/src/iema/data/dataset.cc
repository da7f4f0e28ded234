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

#include "iema/data/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "fmt/format.h"
#include "iema/common/file.h"
#include "iema/common/status_macros.h"
#include "json.hpp"

namespace iema::data {
namespace {

std::string_view Trim(std::string_view text) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

// Parses a finite number occupying the whole (trimmed) field.
std::optional<double> ParseNumber(std::string_view field) {
  field = Trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  if (field.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    return std::nullopt;
  }
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

void HashBytes(uint64_t& hash, std::string_view bytes) {
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  hash ^= 0xff;
  hash *= 0x100000001b3ULL;
}

}  // namespace

std::string_view ColumnKindName(ColumnKind kind) {
  return kind == ColumnKind::kNumeric ? "numeric" : "categorical";
}

absl::StatusOr<ColumnKind> ParseColumnKind(std::string_view name) {
  if (name == "numeric") return ColumnKind::kNumeric;
  if (name == "categorical") return ColumnKind::kCategorical;
  return absl::InvalidArgumentError(fmt::format(
      "unknown column kind \"{}\" (expected numeric or categorical)", name));
}

Column Column::Numeric(std::string id, std::vector<double> values) {
  return Column(std::move(id), ColumnKind::kNumeric, std::move(values), {});
}

Column Column::Categorical(std::string id,
                           const std::vector<std::string>& labels) {
  const std::set<std::string> distinct(labels.begin(), labels.end());
  std::vector<std::string> levels(distinct.begin(), distinct.end());
  std::vector<double> codes;
  codes.reserve(labels.size());
  for (const auto& label : labels) {
    const auto it = std::lower_bound(levels.begin(), levels.end(), label);
    codes.push_back(static_cast<double>(it - levels.begin()));
  }
  return Column(std::move(id), ColumnKind::kCategorical, std::move(codes),
                std::move(levels));
}

std::optional<int> Column::LevelCode(std::string_view label) const {
  const auto it = std::find(levels_.begin(), levels_.end(), label);
  if (it == levels_.end()) return std::nullopt;
  return static_cast<int>(it - levels_.begin());
}

std::string Column::Label(size_t row) const {
  if (kind_ == ColumnKind::kCategorical) return levels_[code(row)];
  return fmt::format("{}", values_[row]);
}

std::optional<size_t> Schema::IndexOf(std::string_view id) const {
  for (size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<double> FeatureMatrix::column(size_t c) const {
  std::vector<double> result(rows_);
  for (size_t r = 0; r < rows_; ++r) result[r] = at(r, c);
  return result;
}

void FeatureMatrix::AppendRow(std::span<const double> row) {
  if (rows_ == 0 && values_.empty()) cols_ = row.size();
  values_.insert(values_.end(), row.begin(), row.end());
  ++rows_;
}

absl::StatusOr<Dataset> Dataset::Create(std::string name,
                                        std::vector<Column> columns,
                                        std::string_view target) {
  if (columns.empty())
    return absl::InvalidArgumentError("dataset has no columns");
  const size_t n_rows = columns.front().size();
  if (n_rows == 0) return absl::InvalidArgumentError("dataset is empty");
  if (n_rows < 2) {
    return absl::InvalidArgumentError(
        "dataset must have at least 2 rows, got 1");
  }
  std::set<std::string> seen;
  std::optional<size_t> target_index;
  for (size_t c = 0; c < columns.size(); ++c) {
    const Column& column = columns[c];
    if (!seen.insert(column.id()).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate column name \"{}\"", column.id()));
    }
    if (column.size() != n_rows) {
      return absl::InvalidArgumentError(
          fmt::format("column \"{}\" has {} values, expected {}", column.id(),
                      column.size(), n_rows));
    }
    if (column.is_numeric()) {
      for (size_t r = 0; r < n_rows; ++r) {
        if (!std::isfinite(column.value(r))) {
          return absl::InvalidArgumentError(
              fmt::format("non-finite value in column \"{}\" at row {}",
                          column.id(), r + 1));
        }
      }
    } else if (column.levels().empty()) {
      return absl::InvalidArgumentError(
          fmt::format("categorical column \"{}\" has no levels", column.id()));
    }
    if (column.id() == target) target_index = c;
  }
  if (!target_index.has_value()) {
    return absl::InvalidArgumentError(
        fmt::format("unknown target column \"{}\"", target));
  }

  Dataset dataset;
  dataset.name_ = std::move(name);
  dataset.columns_ = std::move(columns);
  dataset.target_index_ = *target_index;
  dataset.n_rows_ = n_rows;
  for (size_t c = 0; c < dataset.columns_.size(); ++c) {
    if (c == dataset.target_index_) continue;
    const Column& column = dataset.columns_[c];
    dataset.schema_.variables.push_back(
        Variable{column.id(), column.kind(), column.levels()});
    dataset.feature_columns_.push_back(c);
  }
  dataset.features_ = FeatureMatrix(n_rows, dataset.schema_.size());
  for (size_t j = 0; j < dataset.feature_columns_.size(); ++j) {
    const Column& column = dataset.columns_[dataset.feature_columns_[j]];
    for (size_t r = 0; r < n_rows; ++r) {
      dataset.features_.at(r, j) = column.value(r);
    }
  }
  return dataset;
}

const Column* Dataset::FindColumn(std::string_view id) const {
  const auto index = ColumnIndex(id);
  return index.has_value() ? &columns_[*index] : nullptr;
}

std::optional<size_t> Dataset::ColumnIndex(std::string_view id) const {
  for (size_t c = 0; c < columns_.size(); ++c) {
    if (columns_[c].id() == id) return c;
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<double>> Dataset::TargetValues() const {
  const Column& column = target();
  if (column.is_numeric()) return column.values();
  if (column.levels().size() == 2) return column.values();
  return absl::FailedPreconditionError(
      fmt::format("target \"{}\" is categorical with {} levels; a numeric or "
                  "two-level target is required",
                  column.id(), column.levels().size()));
}

uint64_t Dataset::Fingerprint() const {
  uint64_t hash = 0xcbf29ce484222325ULL;
  HashBytes(hash, name_);
  HashBytes(hash, target().id());
  for (const Column& column : columns_) {
    HashBytes(hash, column.id());
    HashBytes(hash, ColumnKindName(column.kind()));
    for (const auto& level : column.levels()) HashBytes(hash, level);
    for (const double v : column.values()) {
      HashBytes(hash,
                std::string_view(reinterpret_cast<const char*>(&v), sizeof(v)));
    }
  }
  return hash;
}

absl::StatusOr<LoadConfig> ParseLoadConfig(std::string_view json_text) {
  const auto json = nlohmann::json::parse(json_text, nullptr,
                                          /*allow_exceptions=*/false);
  if (json.is_discarded() || !json.is_object()) {
    return absl::InvalidArgumentError("dataset config is not a JSON object");
  }
  LoadConfig config;
  if (const auto it = json.find("target"); it != json.end()) {
    if (!it->is_string()) {
      return absl::InvalidArgumentError("config \"target\" must be a string");
    }
    config.target = it->get<std::string>();
  }
  if (const auto it = json.find("name"); it != json.end() && it->is_string()) {
    config.name = it->get<std::string>();
  }
  if (const auto it = json.find("types"); it != json.end()) {
    if (!it->is_object()) {
      return absl::InvalidArgumentError("config \"types\" must be an object");
    }
    for (const auto& [id, kind] : it->items()) {
      if (!kind.is_string()) {
        return absl::InvalidArgumentError(
            fmt::format("config type of \"{}\" must be a string", id));
      }
      ASSIGN_OR_RETURN(config.types[id],
                       ParseColumnKind(kind.get<std::string>()));
    }
  }
  if (const auto it = json.find("seed"); it != json.end()) {
    if (!it->is_number_unsigned()) {
      return absl::InvalidArgumentError(
          "config \"seed\" must be a non-negative integer");
    }
    config.seed = it->get<uint64_t>();
  }
  return config;
}

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view csv) {
  if (csv.size() >= 3 && csv.substr(0, 3) == "\xEF\xBB\xBF") {
    csv.remove_prefix(3);
  }
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  size_t line = 1;

  const auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    // A blank line yields one empty field; skip it.
    if (!(record.size() == 1 && record[0].empty() && !field_started)) {
      records.push_back(std::move(record));
    }
    record.clear();
    field_started = false;
  };

  for (size_t i = 0; i < csv.size(); ++i) {
    const char c = csv[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < csv.size() && csv[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) {
          return absl::InvalidArgumentError(fmt::format(
              "unexpected quote inside unquoted field on line {}", line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        if (i + 1 < csv.size() && csv[i + 1] == '\n') break;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    return absl::InvalidArgumentError(
        "unterminated quoted field at end of input");
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

absl::StatusOr<Dataset> LoadDataset(std::string_view csv,
                                    const LoadConfig& config) {
  ASSIGN_OR_RETURN(auto records, ParseCsv(csv));
  if (records.empty()) return absl::InvalidArgumentError("missing header row");
  const std::vector<std::string>& header = records.front();
  const size_t n_columns = header.size();
  const size_t n_rows = records.size() - 1;
  if (n_rows == 0) return absl::InvalidArgumentError("dataset is empty");

  std::set<std::string> names;
  std::optional<size_t> target_column;
  for (size_t c = 0; c < n_columns; ++c) {
    const std::string name(Trim(header[c]));
    if (name.empty()) {
      return absl::InvalidArgumentError(
          fmt::format("empty header name in column {}", c + 1));
    }
    if (!names.insert(name).second) {
      return absl::InvalidArgumentError(
          fmt::format("duplicate header name \"{}\"", name));
    }
    if (name == config.target) target_column = c;
  }
  if (!target_column.has_value()) {
    return absl::InvalidArgumentError(
        fmt::format("unknown target column \"{}\"", config.target));
  }
  for (const auto& [id, kind] : config.types) {
    if (!names.contains(id)) {
      return absl::InvalidArgumentError(
          fmt::format("type override for unknown column \"{}\"", id));
    }
  }

  std::vector<size_t> missing_target_rows;
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != n_columns) {
      return absl::InvalidArgumentError(
          fmt::format("data row {} has {} fields, expected {}", r,
                      records[r].size(), n_columns));
    }
    if (Trim(records[r][*target_column]).empty()) {
      missing_target_rows.push_back(r);
    }
  }
  if (!missing_target_rows.empty()) {
    return absl::InvalidArgumentError(
        fmt::format("missing target value in data row(s) {}",
                    fmt::join(missing_target_rows, ", ")));
  }

  std::vector<Column> columns;
  columns.reserve(n_columns);
  for (size_t c = 0; c < n_columns; ++c) {
    const std::string name(Trim(header[c]));
    std::vector<std::string> cells;
    cells.reserve(n_rows);
    for (size_t r = 1; r < records.size(); ++r) {
      const std::string_view cell = Trim(records[r][c]);
      if (cell.empty()) {
        return absl::InvalidArgumentError(fmt::format(
            "missing value in column \"{}\" at data row {}", name, r));
      }
      cells.emplace_back(cell);
    }

    std::optional<ColumnKind> kind;
    if (const auto it = config.types.find(name); it != config.types.end()) {
      kind = it->second;
    }
    std::vector<double> numbers;
    numbers.reserve(n_rows);
    bool all_numeric = true;
    for (size_t r = 0; r < cells.size(); ++r) {
      const auto number = ParseNumber(cells[r]);
      if (!number.has_value()) {
        if (kind == ColumnKind::kNumeric) {
          return absl::InvalidArgumentError(fmt::format(
              "cannot parse \"{}\" as a number in column \"{}\" at data row {}",
              cells[r], name, r + 1));
        }
        all_numeric = false;
        break;
      }
      numbers.push_back(*number);
    }
    if (!kind.has_value()) {
      kind = all_numeric ? ColumnKind::kNumeric : ColumnKind::kCategorical;
    }
    if (*kind == ColumnKind::kNumeric) {
      columns.push_back(Column::Numeric(name, std::move(numbers)));
    } else {
      columns.push_back(Column::Categorical(name, cells));
    }
  }
  return Dataset::Create(config.name, std::move(columns), config.target);
}

absl::StatusOr<Dataset> LoadDatasetFile(const std::string& path,
                                        const LoadConfig& config) {
  ASSIGN_OR_RETURN(const std::string content, ReadFile(path));
  return LoadDataset(content, config);
}

}  // namespace iema::data
