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

#include "iema/global_explain/importance.h"

#include <cmath>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/model/linear_model.h"
#include "iema/model/model_spec.h"
#include "iema/testing/test_datasets.h"

namespace iema::global {
namespace {

using ::testing::HasSubstr;
using testing::NumericDataset;
using testing::RandomNumericDataset;

model::ModelHandle Fn(const data::Dataset& d,
                      std::function<double(std::span<const double>)> f) {
  return model::MakeFunctionModel("f", model::Task::kRegression,
                                  d.feature_schema(), std::move(f));
}

data::Dataset NoisyDataset(uint64_t seed) {
  return RandomNumericDataset(200, 3, seed, [](const std::vector<double>& r) {
    return 3 * r[0] - r[1];
  });
}

TEST(PermutationImportanceTest, IgnoredColumnIsExactlyZero) {
  const auto d = NoisyDataset(1);
  const auto m =
      Fn(d, [](std::span<const double> r) { return 3 * r[0] - r[1]; });
  auto result = PermutationImportance(*m, d, std::nullopt, 50, 7);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(*result->loss, model::LossKind::kRmse);
  EXPECT_NEAR(*result->baseline_loss, 0.0, 1e-12);
  const auto* noise = result->Find("x3");
  ASSERT_EQ(noise->repeats.size(), 50u);
  for (double r : noise->repeats) EXPECT_EQ(r, 0.0);
  EXPECT_EQ(noise->importance, 0.0);
  for (double r : result->Find("x1")->repeats) EXPECT_GT(r, 0.0);
  EXPECT_GT(result->Find("x1")->importance, result->Find("x2")->importance);
}

TEST(PermutationImportanceTest, TwoRowEnumeration) {
  const auto d = NumericDataset({{"x1", {0, 1}}, {"y", {0, 1}}});
  const auto m = Fn(d, [](std::span<const double> r) { return r[0]; });
  auto result = PermutationImportance(*m, d, model::LossKind::kRmse, 4000, 3);
  ASSERT_TRUE(result.ok());
  // Identity gives rmse 0, the swap gives rmse 1; each is equally likely.
  for (double r : result->Find("x1")->repeats) {
    EXPECT_TRUE(r == 0.0 || r == 1.0);
  }
  EXPECT_NEAR(result->Find("x1")->importance, 0.5, 0.03);
}

TEST(PermutationImportanceTest, InvariantToColumnOrder) {
  const auto d = NoisyDataset(2);
  const auto m =
      Fn(d, [](std::span<const double> r) { return r[0] * r[1] + r[2]; });
  const auto& f = d.features();
  const auto swapped = NumericDataset({{"x3", f.column(2)},
                                       {"x1", f.column(0)},
                                       {"x2", f.column(1)},
                                       {"y", *d.TargetValues()}});
  const auto m2 =
      Fn(swapped, [](std::span<const double> r) { return r[1] * r[2] + r[0]; });
  auto a = PermutationImportance(*m, d, std::nullopt, 5, 11);
  auto b = PermutationImportance(*m2, swapped, std::nullopt, 5, 11);
  ASSERT_TRUE(a.ok() && b.ok());
  for (const auto& entry : a->variables) {
    EXPECT_EQ(entry.repeats, b->Find(entry.variable)->repeats);
  }
}

TEST(PermutationImportanceTest, ClassificationDefaultsToAuc) {
  Rng rng(5);
  std::vector<double> x, y;
  for (int i = 0; i < 100; ++i) {
    x.push_back(rng.UniformDouble());
    y.push_back(x.back() > 0.5 ? 1 : 0);
  }
  const auto d = NumericDataset({{"x", x}, {"y", y}});
  const auto m = model::MakeFunctionModel(
      "c", model::Task::kBinaryClassification, d.feature_schema(),
      [](std::span<const double> r) { return r[0]; });
  auto result = PermutationImportance(*m, d);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_EQ(*result->loss, model::LossKind::kOneMinusAuc);
  EXPECT_EQ(*result->baseline_loss, 0.0);
  EXPECT_EQ(result->variables[0].repeats.size(), kDefaultPermutationRepeats);
  EXPECT_GT(result->variables[0].importance, 0.2);
  EXPECT_FALSE(PermutationImportance(*m, d, std::nullopt, 0).ok());
}

TEST(LocoImportanceTest, ExactLinearData) {
  Rng rng(8);
  std::vector<double> a, zero, y;
  for (int i = 0; i < 50; ++i) {
    a.push_back(rng.UniformDouble() * 4);
    zero.push_back(rng.UniformDouble());
    y.push_back(1 + 2 * a.back());
  }
  const auto d = NumericDataset({{"a", a}, {"zero", zero}, {"y", y}});
  auto m = model::LinearModel::Create(
      "l", d.feature_schema(), model::Link::kIdentity, 1.0, {{{2.0}}, {{0.0}}});
  ASSERT_TRUE(m.ok());
  auto result = LocoImportance(**m, d);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_NEAR(result->Find("zero")->importance, 0.0, 1e-9);

  // Only predictor dropped: the refit predicts the target mean.
  const auto alone = NumericDataset({{"a", a}, {"y", y}});
  m = model::LinearModel::Create("l", alone.feature_schema(),
                                 model::Link::kIdentity, 1.0, {{{2.0}}});
  ASSERT_TRUE(m.ok());
  result = LocoImportance(**m, alone);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_NEAR(result->Find("a")->importance, std::sqrt(PopulationVariance(y)),
              1e-9);
}

TEST(LocoImportanceTest, TreeEnsembleUnavailable) {
  const auto d = NumericDataset({{"x1", {-1, 1, 2}}, {"y", {0, 1, 1}}});
  auto m = model::LoadModelSpec(
      std::string_view(R"({"model-spec": 1, "type": "tree_ensemble",
      "trees": [{"nodes": [{"var": "x1", "threshold": 0, "left": 1,
      "right": 2}, {"value": 0}, {"value": 1}]}]})"),
      d.feature_schema());
  ASSERT_TRUE(m.ok());
  auto result = LocoImportance(**m, d);
  EXPECT_EQ(result.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_THAT(result.status().ToString(), HasSubstr("LOCO"));
}

TEST(ShapImportanceTest, EqualsMeanAbsoluteAttribution) {
  const auto d = RandomNumericDataset(30, 4, 9, [](auto&) { return 0.0; });
  const auto m = Fn(d, [](std::span<const double> r) {
    return std::sin(r[0]) * r[1] + r[2] * r[2] - r[3];
  });
  for (const auto& options :
       {local::ShapOptions::Exact(), local::ShapOptions::Sampling(8, 3)}) {
    auto result = ShapImportance(*m, d, options);
    ASSERT_TRUE(result.ok()) << result.status();
    std::vector<double> oracle(4, 0.0);
    for (size_t i = 0; i < d.n_rows(); ++i) {
      auto shap = local::ShapAttribution(*m, d, d.features().row(i),
                                         RowShapOptions(options, i));
      ASSERT_TRUE(shap.ok());
      for (size_t j = 0; j < 4; ++j) {
        oracle[j] += std::fabs(shap->contributions[j].value);
      }
    }
    for (size_t j = 0; j < 4; ++j) {
      EXPECT_NEAR(result->variables[j].importance, oracle[j] / d.n_rows(),
                  1e-12);
      EXPECT_GE(result->variables[j].importance, 0.0);
    }
  }
}

TEST(ShapImportanceTest, LinearClosedFormAndConstant) {
  const auto d = RandomNumericDataset(25, 2, 4, [](auto&) { return 0.0; });
  auto m = model::LinearModel::Create("l", d.feature_schema(),
                                      model::Link::kIdentity, 0.0,
                                      {{{-3.0}}, {{0.5}}});
  ASSERT_TRUE(m.ok());
  auto result = ShapImportance(**m, d);
  ASSERT_TRUE(result.ok());
  const std::vector<double> w = {-3.0, 0.5};
  for (size_t j = 0; j < 2; ++j) {
    const auto column = d.features().column(j);
    const double mean = Mean(column);
    double expected = 0;
    for (double v : column) expected += std::fabs(v - mean);
    expected *= std::fabs(w[j]) / column.size();
    EXPECT_NEAR(result->variables[j].importance, expected, 1e-9);
  }
  result = ShapImportance(*Fn(d, [](auto) { return 2.0; }), d);
  for (const auto& entry : result->variables) EXPECT_EQ(entry.importance, 0.0);
  EXPECT_EQ(*result->baseline_value, 2.0);
}

}  // namespace
}  // namespace iema::global
