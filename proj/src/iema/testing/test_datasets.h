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

// Small dataset builders shared by the unit tests.

#ifndef IEMA_TESTING_TEST_DATASETS_H_
#define IEMA_TESTING_TEST_DATASETS_H_

#include <string>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "iema/common/random.h"
#include "iema/data/dataset.h"

namespace iema::testing {

struct NamedValues {
  std::string id;
  std::vector<double> values;
};

// Numeric dataset; the last entry is the target.
inline data::Dataset NumericDataset(std::vector<NamedValues> columns) {
  std::vector<data::Column> built;
  const std::string target = columns.back().id;
  for (auto& column : columns) {
    built.push_back(
        data::Column::Numeric(std::move(column.id), std::move(column.values)));
  }
  auto dataset = data::Dataset::Create("test", std::move(built), target);
  EXPECT_TRUE(dataset.ok()) << dataset.status();
  return *std::move(dataset);
}

// "p" standard-normal-ish features (sum of uniforms) plus a target column
// "y" filled by "target_fn" from the feature row.
template <typename Fn>
data::Dataset RandomNumericDataset(size_t n, size_t p, uint64_t seed,
                                   Fn target_fn) {
  Rng rng(seed);
  std::vector<NamedValues> columns;
  for (size_t j = 0; j < p; ++j) {
    columns.push_back({"x" + std::to_string(j + 1), {}});
  }
  columns.push_back({"y", {}});
  std::vector<double> row(p);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < p; ++j) {
      double v = 0.0;
      for (int k = 0; k < 4; ++k) v += rng.UniformDouble();
      row[j] = (v - 2.0) * 1.7;
      columns[j].values.push_back(row[j]);
    }
    columns[p].values.push_back(target_fn(row));
  }
  return NumericDataset(std::move(columns));
}

}  // namespace iema::testing

#endif  // IEMA_TESTING_TEST_DATASETS_H_
