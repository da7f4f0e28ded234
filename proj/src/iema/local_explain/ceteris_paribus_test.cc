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

#include "iema/local_explain/ceteris_paribus.h"

#include <algorithm>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/common/random.h"
#include "iema/local_explain/instance.h"
#include "iema/model/linear_model.h"
#include "iema/testing/test_datasets.h"

namespace iema::local {
namespace {

using ::testing::HasSubstr;
using testing::NumericDataset;
using testing::RandomNumericDataset;

model::ModelHandle Linear(const data::Dataset& d, std::vector<double> w,
                          double b = 0.0) {
  std::vector<model::LinearModel::Term> terms;
  for (double v : w) terms.push_back({{v}});
  auto m = model::LinearModel::Create("lin", d.feature_schema(),
                                      model::Link::kIdentity, b, terms);
  EXPECT_TRUE(m.ok()) << m.status();
  return *m;
}

TEST(CeterisParibusTest, ConstantModelIsFlat) {
  const auto d = RandomNumericDataset(50, 2, 1, [](auto&) { return 0.0; });
  const auto m = model::MakeFunctionModel(
      "c", model::Task::kRegression, d.feature_schema(),
      [](std::span<const double>) { return 0.5; });
  auto profile = CeterisParibus(*m, d, std::vector<double>{0.1, 0.2}, "x2");
  ASSERT_TRUE(profile.ok()) << profile.status();
  for (double v : profile->values) EXPECT_EQ(v, 0.5);
}

TEST(CeterisParibusTest, LinearProfileByHand) {
  const auto d = NumericDataset(
      {{"x1", {-2, 0, 5, 9}}, {"x2", {1, 2, 3, 4}}, {"y", {0, 0, 0, 0}}});
  const auto m = Linear(d, {2, -1});
  const std::vector<double> x = {1, 3};
  auto profile = CeterisParibus(*m, d, x, "x1", 11);
  ASSERT_TRUE(profile.ok()) << profile.status();
  for (size_t k = 0; k < profile->grid.size(); ++k) {
    EXPECT_NEAR(profile->values[k], 2 * profile->grid[k] - 3, 1e-12);
  }
  EXPECT_EQ(EvaluateAlongGrid(*m, x, 0, std::vector<double>{5.0}),
            std::vector<double>{7.0});
  ASSERT_TRUE(profile->anchor.has_value());
  EXPECT_EQ(profile->anchor->x, 1.0);
  EXPECT_EQ(profile->anchor->prediction, -1.0);
}

TEST(CeterisParibusTest, GridIsQuantilesPlusInstance) {
  const auto d =
      NumericDataset({{"x1", {0, 10, 20, 30, 40}}, {"y", {0, 0, 0, 0, 0}}});
  auto grid = ProfileGrid(d, 0, 5);
  ASSERT_TRUE(grid.ok());
  EXPECT_THAT(*grid, ::testing::ElementsAre(0, 10, 20, 30, 40));
  grid = ProfileGrid(d, 0, 3);
  EXPECT_THAT(*grid, ::testing::ElementsAre(0, 20, 40));
  const auto m = Linear(d, {1});
  auto profile = CeterisParibus(*m, d, std::vector<double>{15}, "x1", 3);
  ASSERT_TRUE(profile.ok());
  EXPECT_THAT(profile->grid, ::testing::ElementsAre(0, 15, 20, 40));
  // Already on the grid: not duplicated.
  profile = CeterisParibus(*m, d, std::vector<double>{20}, "x1", 3);
  EXPECT_THAT(profile->grid, ::testing::ElementsAre(0, 20, 40));
}

TEST(CeterisParibusTest, CategoricalGridIsAllLevels) {
  std::vector<data::Column> columns;
  columns.push_back(data::Column::Categorical("c", {"b", "a", "c", "a"}));
  columns.push_back(data::Column::Numeric("y", {1, 2, 3, 4}));
  auto d = data::Dataset::Create("t", std::move(columns), "y");
  ASSERT_TRUE(d.ok());
  const auto m = model::MakeFunctionModel(
      "f", model::Task::kRegression, d->feature_schema(),
      [](std::span<const double> r) { return 10 * r[0]; });
  auto profile = CeterisParibus(*m, *d, std::vector<double>{1}, "c", 2);
  ASSERT_TRUE(profile.ok());
  EXPECT_THAT(profile->grid, ::testing::ElementsAre(0, 1, 2));
  EXPECT_THAT(profile->levels, ::testing::ElementsAre("a", "b", "c"));
  EXPECT_THAT(profile->values, ::testing::ElementsAre(0, 10, 20));
}

TEST(CeterisParibusTest, Errors) {
  const auto d = RandomNumericDataset(20, 2, 1, [](auto&) { return 0.0; });
  const auto m = Linear(d, {1, 1});
  const std::vector<double> x = {0, 0};
  EXPECT_THAT(CeterisParibus(*m, d, x, "nope").status().ToString(),
              HasSubstr("nope"));
  EXPECT_THAT(CeterisParibus(*m, d, x, "y").status().ToString(),
              HasSubstr("target"));
  EXPECT_THAT(CeterisParibus(*m, d, x, "x1", 1).status().ToString(),
              HasSubstr("grid_size"));
}

// Every profile passes through (x*_j, f(x*)), grids strictly increase.
TEST(CeterisParibusTest, AnchorProperty) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const size_t p = 1 + rng.UniformInt(4);
    const auto d =
        RandomNumericDataset(10 + rng.UniformInt(60), p, rng.UniformInt(1000),
                             [](auto&) { return 0.0; });
    const auto m = model::MakeFunctionModel(
        "f", model::Task::kRegression, d.feature_schema(),
        [](std::span<const double> r) {
          double s = 0;
          for (size_t j = 0; j < r.size(); ++j) s += std::sin(r[j] * (j + 1));
          return s;
        });
    const size_t row = rng.UniformInt(d.n_rows());
    auto x = ResolveInstance(d, InstanceRef::Row(row));
    ASSERT_TRUE(x.ok());
    const size_t j = rng.UniformInt(p);
    auto profile = CeterisParibus(*m, d, *x, d.feature_schema().variables[j].id,
                                  2 + rng.UniformInt(200));
    ASSERT_TRUE(profile.ok());
    EXPECT_TRUE(std::adjacent_find(profile->grid.begin(), profile->grid.end(),
                                   std::greater_equal<>()) ==
                profile->grid.end());
    const auto at =
        std::find(profile->grid.begin(), profile->grid.end(), (*x)[j]);
    ASSERT_NE(at, profile->grid.end());
    EXPECT_EQ(profile->values[at - profile->grid.begin()], m->PredictRow(*x));
  }
}

TEST(InstanceTest, JsonForms) {
  std::vector<data::Column> columns;
  columns.push_back(data::Column::Numeric("age", {20, 30}));
  columns.push_back(data::Column::Categorical("foot", {"left", "right"}));
  columns.push_back(data::Column::Numeric("y", {1, 2}));
  auto d = data::Dataset::Create("t", std::move(columns), "y");
  ASSERT_TRUE(d.ok());
  auto row = InstanceFromJson(nlohmann::json{{"row", 1}}, *d);
  ASSERT_TRUE(row.ok());
  EXPECT_THAT(*ResolveInstance(*d, *row), ::testing::ElementsAre(30, 1));
  auto values = InstanceFromJson(
      nlohmann::json::parse(R"({"values": {"age": 25, "foot": "right"}})"), *d);
  ASSERT_TRUE(values.ok()) << values.status();
  EXPECT_THAT(values->values, ::testing::ElementsAre(25, 1));
  EXPECT_EQ(*InstanceFromJson(InstanceToJson(*values, *d), *d), *values);
  EXPECT_FALSE(InstanceFromJson(nlohmann::json{{"row", 2}}, *d).ok());
  EXPECT_THAT(
      InstanceFromJson(nlohmann::json::parse(R"({"values": {"age": 25}})"), *d)
          .status()
          .ToString(),
      HasSubstr("foot"));
  EXPECT_FALSE(
      InstanceFromJson(
          nlohmann::json::parse(R"({"values": {"age": 25, "foot": "middle"}})"),
          *d)
          .ok());
}

}  // namespace
}  // namespace iema::local
