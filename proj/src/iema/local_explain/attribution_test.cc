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
#include <cmath>
#include <numeric>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "iema/common/random.h"
#include "iema/common/stats.h"
#include "iema/local_explain/instance.h"
#include "iema/model/linear_model.h"
#include "iema/testing/test_datasets.h"

namespace iema::local {
namespace {

using testing::NumericDataset;
using testing::RandomNumericDataset;

model::ModelHandle Fn(const data::Dataset& d,
                      std::function<double(std::span<const double>)> f) {
  return model::MakeFunctionModel("f", model::Task::kRegression,
                                  d.feature_schema(), std::move(f));
}

double Nonlinear(std::span<const double> r) {
  double s = r[0] * r[1];
  for (size_t j = 0; j < r.size(); ++j) s += std::sin(r[j]) * (j + 1);
  return s + (r.size() > 2 ? std::max(r[2], 0.0) * r[0] : 0.0);
}

// Oracle: averages marginal contributions over all p! orders, computing every
// coalition value directly from the definition.
std::vector<double> PermutationShapley(const model::Model& m,
                                       const data::Dataset& d,
                                       const std::vector<double>& x) {
  const size_t p = x.size();
  auto value = [&](const std::vector<bool>& in) {
    double sum = 0;
    for (size_t i = 0; i < d.n_rows(); ++i) {
      std::vector<double> row(p);
      for (size_t j = 0; j < p; ++j) {
        row[j] = in[j] ? x[j] : d.features().at(i, j);
      }
      sum += m.PredictRow(row);
    }
    return sum / d.n_rows();
  };
  std::vector<size_t> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(p, 0);
  double orders = 0;
  do {
    std::vector<bool> in(p, false);
    double before = value(in);
    for (size_t j : order) {
      in[j] = true;
      const double after = value(in);
      phi[j] += after - before;
      before = after;
    }
    orders += 1;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& v : phi) v /= orders;
  return phi;
}

TEST(ShapTest, MatchesPermutationOracle) {
  Rng rng(2);
  for (int trial = 0; trial < 6; ++trial) {
    const size_t p = 2 + trial % 4;
    const auto d =
        RandomNumericDataset(25, p, 100 + trial, [](auto&) { return 0.0; });
    const auto m = Fn(d, Nonlinear);
    const auto x = *ResolveInstance(d, InstanceRef::Row(rng.UniformInt(25)));
    auto shap = ShapAttribution(*m, d, x);
    ASSERT_TRUE(shap.ok()) << shap.status();
    const auto oracle = PermutationShapley(*m, d, x);
    for (size_t j = 0; j < p; ++j) {
      EXPECT_NEAR(shap->contributions[j].value, oracle[j], 1e-10);
    }
  }
}

TEST(ShapTest, LinearClosedForm) {
  // Column means are zero.
  const auto d = NumericDataset(
      {{"x1", {-1, 1, -2, 2}}, {"x2", {3, -3, 0, 0}}, {"y", {0, 0, 0, 0}}});
  auto m = model::LinearModel::Create("l", d.feature_schema(),
                                      model::Link::kIdentity, 0.0,
                                      {{{2.0}}, {{-1.0}}});
  ASSERT_TRUE(m.ok());
  auto shap = ShapAttribution(**m, d, std::vector<double>{1, 3});
  ASSERT_TRUE(shap.ok());
  EXPECT_NEAR(shap->contributions[0].value, 2.0, 1e-12);
  EXPECT_NEAR(shap->contributions[1].value, -3.0, 1e-12);
  EXPECT_NEAR(shap->baseline, 0.0, 1e-12);
  EXPECT_EQ(shap->prediction, -1.0);
}

TEST(ShapTest, NullPlayerAndSymmetry) {
  Rng rng(9);
  std::vector<double> a, b, c, y;
  for (int i = 0; i < 30; ++i) {
    a.push_back(rng.UniformDouble());
    b.push_back(a.back());
    c.push_back(rng.UniformDouble());
    y.push_back(0);
  }
  const auto d = NumericDataset({{"a", a}, {"b", b}, {"c", c}, {"y", y}});
  // Symmetric in a and b, ignores c.
  const auto m = Fn(d, [](std::span<const double> r) {
    return std::exp(r[0] + r[1]) + r[0] * r[1];
  });
  // Finite differences confirm c is ignored.
  for (double z : {-5.0, 0.0, 3.0}) {
    EXPECT_EQ(m->PredictRow(std::vector<double>{0.2, 0.4, z}),
              m->PredictRow(std::vector<double>{0.2, 0.4, 0.0}));
  }
  auto shap = ShapAttribution(*m, d, std::vector<double>{0.7, 0.7, 0.1});
  ASSERT_TRUE(shap.ok());
  EXPECT_NEAR(shap->contributions[0].value, shap->contributions[1].value,
              1e-12);
  EXPECT_NEAR(shap->contributions[2].value, 0.0, 1e-12);

  // Instance value shared by every row changes nothing.
  const auto constant =
      NumericDataset({{"u", {4, 4, 4}}, {"v", {1, 2, 3}}, {"y", {0, 0, 0}}});
  const auto g = Fn(
      constant, [](std::span<const double> r) { return r[0] * r[1] * r[1]; });
  shap = ShapAttribution(*g, constant, std::vector<double>{4, 9});
  ASSERT_TRUE(shap.ok());
  EXPECT_EQ(shap->contributions[0].value, 0.0);
}

TEST(ShapTest, Completeness) {
  const auto d = RandomNumericDataset(60, 6, 5, [](auto&) { return 0.0; });
  const auto m = Fn(d, Nonlinear);
  for (size_t row = 0; row < 5; ++row) {
    const auto x = *ResolveInstance(d, InstanceRef::Row(row));
    auto shap = ShapAttribution(*m, d, x);
    ASSERT_TRUE(shap.ok());
    EXPECT_NEAR(shap->Total(), shap->prediction, 1e-9);
    EXPECT_EQ(shap->prediction, m->PredictRow(x));
    // Sampling marginals telescope per permutation too.
    auto sampled = ShapAttribution(*m, d, x, ShapOptions::Sampling(16, row));
    ASSERT_TRUE(sampled.ok());
    EXPECT_NEAR(sampled->Total(), sampled->prediction, 1e-9);
    EXPECT_EQ(*sampled->permutations, 16u);
    for (const auto& c : sampled->contributions) ASSERT_TRUE(c.sd.has_value());
  }
}

TEST(ShapTest, SamplingConvergesAsPermutationsGrow) {
  const auto d = RandomNumericDataset(40, 5, 8, [](auto&) { return 0.0; });
  const auto m = Fn(d, Nonlinear);
  const auto x = *ResolveInstance(d, InstanceRef::Row(3));
  const auto exact = ShapAttribution(*m, d, x);
  ASSERT_TRUE(exact.ok());
  std::vector<double> deviation;
  for (size_t b : {8, 64, 512}) {
    double total = 0;
    for (uint64_t seed = 0; seed < 8; ++seed) {
      auto s = ShapAttribution(*m, d, x, ShapOptions::Sampling(b, seed));
      ASSERT_TRUE(s.ok());
      for (size_t j = 0; j < 5; ++j) {
        total += std::fabs(s->contributions[j].value -
                           exact->contributions[j].value);
      }
    }
    deviation.push_back(total / 40);
  }
  EXPECT_GT(deviation[0], deviation[1]);
  EXPECT_GT(deviation[1], deviation[2]);
}

TEST(ShapTest, SeededAndBackgroundCap) {
  const auto d = RandomNumericDataset(80, 3, 12, [](auto&) { return 0.0; });
  const auto m = Fn(d, Nonlinear);
  const auto x = *ResolveInstance(d, InstanceRef::Row(0));
  auto a = ShapAttribution(*m, d, x, ShapOptions::Sampling(10, 4));
  auto b = ShapAttribution(*m, d, x, ShapOptions::Sampling(10, 4));
  ASSERT_TRUE(a.ok() && b.ok());
  for (size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(a->contributions[j].value, b->contributions[j].value);
  }
  ShapOptions capped;
  capped.background_rows = 20;
  auto c = ShapAttribution(*m, d, x, capped);
  ASSERT_TRUE(c.ok());
  EXPECT_NEAR(c->Total(), c->prediction, 1e-9);
}

TEST(ShapTest, Errors) {
  const auto wide = RandomNumericDataset(5, 13, 1, [](auto&) { return 0.0; });
  const auto m = Fn(wide, [](std::span<const double>) { return 0.0; });
  const auto x = *ResolveInstance(wide, InstanceRef::Row(0));
  EXPECT_FALSE(ShapAttribution(*m, wide, x).ok());
  EXPECT_TRUE(ShapAttribution(*m, wide, x, ShapOptions::Sampling(2, 0)).ok());
  EXPECT_FALSE(ShapAttribution(*m, wide, x, ShapOptions::Sampling(1, 0)).ok());
}

TEST(BreakdownTest, XorEnumeratedByHand) {
  const auto d = NumericDataset(
      {{"x1", {0, 0, 1, 1}}, {"x2", {0, 1, 0, 1}}, {"y", {0, 1, 1, 0}}});
  const auto m =
      Fn(d, [](std::span<const double> r) { return r[0] != r[1] ? 1.0 : 0.0; });
  // v({}) = 0.5, v({x1}) = v({x2}) = 0.5, v({x1,x2}) = f(1,1) = 0.
  const std::vector<double> x = {1, 1};
  BreakdownOptions forward;
  forward.order = std::vector<std::string>{"x1", "x2"};
  auto a = BreakdownAttribution(*m, d, x, forward);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->baseline, 0.5);
  EXPECT_EQ(a->contributions[0].variable, "x1");
  EXPECT_EQ(a->contributions[0].value, 0.0);
  EXPECT_EQ(a->contributions[1].value, -0.5);
  BreakdownOptions backward;
  backward.order = std::vector<std::string>{"x2", "x1"};
  a = BreakdownAttribution(*m, d, x, backward);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(a->contributions[0].variable, "x2");
  EXPECT_EQ(a->contributions[0].value, 0.0);
  EXPECT_EQ(a->contributions[1].value, -0.5);
  // Completeness pins the sum at f(x*) - v({}) = -0.5.
  EXPECT_EQ(a->Total(), 0.0);
  // Both single effects are 0, so the default order is schema order.
  a = BreakdownAttribution(*m, d, x);
  EXPECT_EQ(a->contributions[0].variable, "x1");
}

TEST(BreakdownTest, AdditiveModelMatchesShapForEveryOrder) {
  const auto d = RandomNumericDataset(50, 4, 3, [](auto&) { return 0.0; });
  const std::vector<double> w = {1.5, -2, 0.25, 3};
  auto m = model::LinearModel::Create("l", d.feature_schema(),
                                      model::Link::kIdentity, 0.7,
                                      {{{w[0]}}, {{w[1]}}, {{w[2]}}, {{w[3]}}});
  ASSERT_TRUE(m.ok());
  const auto x = *ResolveInstance(d, InstanceRef::Row(7));
  auto shap = ShapAttribution(**m, d, x);
  ASSERT_TRUE(shap.ok());
  std::vector<std::string> order = {"x1", "x2", "x3", "x4"};
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    rng.Shuffle(order);
    BreakdownOptions options;
    options.order = order;
    auto bd = BreakdownAttribution(**m, d, x, options);
    ASSERT_TRUE(bd.ok());
    for (size_t j = 0; j < 4; ++j) {
      const std::string id = "x" + std::to_string(j + 1);
      const double mean = Mean(d.features().column(j));
      EXPECT_NEAR(bd->Find(id)->value, w[j] * (x[j] - mean), 1e-9);
      EXPECT_NEAR(shap->Find(id)->value, w[j] * (x[j] - mean), 1e-9);
    }
  }
}

TEST(BreakdownTest, DefaultOrderByEffectAndCompleteness) {
  const auto d = RandomNumericDataset(40, 5, 21, [](auto&) { return 0.0; });
  const auto m = Fn(d, Nonlinear);
  Rng rng(6);
  for (size_t row = 0; row < 10; ++row) {
    const auto x = *ResolveInstance(d, InstanceRef::Row(row));
    auto bd = BreakdownAttribution(*m, d, x);
    ASSERT_TRUE(bd.ok());
    EXPECT_NEAR(bd->Total(), bd->prediction, 1e-9);
    // The first variable has the largest single effect.
    double best = 0;
    for (size_t j = 0; j < 5; ++j) {
      BreakdownOptions alone;
      std::vector<std::string> order = {"x" + std::to_string(j + 1)};
      for (size_t k = 0; k < 5; ++k) {
        if (k != j) order.push_back("x" + std::to_string(k + 1));
      }
      alone.order = order;
      best = std::max(
          best,
          std::fabs(
              BreakdownAttribution(*m, d, x, alone)->contributions[0].value));
    }
    EXPECT_NEAR(std::fabs(bd->contributions[0].value), best, 1e-12);
    std::vector<std::string> order = {"x1", "x2", "x3", "x4", "x5"};
    rng.Shuffle(order);
    BreakdownOptions options;
    options.order = order;
    auto shuffled = BreakdownAttribution(*m, d, x, options);
    EXPECT_NEAR(shuffled->Total(), shuffled->prediction, 1e-9);
  }
}

TEST(BreakdownTest, InvalidOrders) {
  const auto d = RandomNumericDataset(10, 3, 1, [](auto&) { return 0.0; });
  const auto m = Fn(d, Nonlinear);
  const auto x = *ResolveInstance(d, InstanceRef::Row(0));
  for (std::vector<std::string> order :
       {std::vector<std::string>{"x1", "x2"},
        std::vector<std::string>{"x1", "x1", "x2"},
        std::vector<std::string>{"x1", "x2", "q"}}) {
    BreakdownOptions options;
    options.order = order;
    EXPECT_FALSE(BreakdownAttribution(*m, d, x, options).ok());
  }
}

}  // namespace
}  // namespace iema::local
