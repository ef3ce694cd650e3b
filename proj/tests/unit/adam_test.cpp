// Copyright 2026 The SIFN Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sifn/autograd/ops.hpp"
#include "sifn/common/errors.hpp"
#include "sifn/train/adam.hpp"

namespace sifn::train {
namespace {

model::ParameterSet scalar_param(double x) {
  model::ParameterSet set;
  set.add("x", ag::Tensor::scalar(x));
  return set;
}

void set_grad(model::ParameterSet& set, const std::vector<double>& g) {
  set.zero_grad();
  auto grad = set.get("x").mutable_grad();
  std::copy(g.begin(), g.end(), grad.begin());
}

TEST(Adam, ZeroGradientLeavesParametersAndCountsTheStep) {
  auto set = scalar_param(1.5);
  AdamState state;
  set_grad(set, {0.0});
  adam_step(set, state, {});
  EXPECT_EQ(set.get("x")[0], 1.5);
  EXPECT_EQ(state.t, 1u);
  adam_step(set, state, {});
  EXPECT_EQ(state.t, 2u);
  ASSERT_EQ(state.first.size(), 1u);
  EXPECT_EQ(state.first[0].size(), 1u);
}

TEST(Adam, FirstStepMovesByLearningRate) {
  for (double g : {0.3, -7.0, 1e-3}) {
    auto set = scalar_param(0.0);
    AdamState state;
    set_grad(set, {g});
    AdamOptions o;
    o.learning_rate = 0.01;
    o.clip_norm.reset();
    adam_step(set, state, o);
    EXPECT_NEAR(set.get("x")[0], -0.01 * (g > 0 ? 1 : -1), 1e-7) << g;
  }
}

TEST(Adam, MinimizesASquare) {
  auto set = scalar_param(1.0);
  AdamState state;
  AdamOptions o;
  o.learning_rate = 0.1;
  for (int i = 0; i < 100; ++i) {
    set.zero_grad();
    auto& x = set.get("x");
    ag::sum_all(ag::mul(x, x)).backward();
    adam_step(set, state, o);
  }
  EXPECT_LT(std::abs(set.get("x")[0]), 0.1);
}

// Same update written out longhand for a two-element parameter.
TEST(Adam, MatchesReferenceUpdate) {
  model::ParameterSet set;
  set.add("x", ag::Tensor::from({2}, {0.5, -0.25}));
  AdamState state;
  AdamOptions o;
  o.clip_norm.reset();
  double x[2] = {0.5, -0.25}, m[2] = {0, 0}, v[2] = {0, 0};
  const double grads[3][2] = {{0.1, -0.2}, {0.3, 0.05}, {-0.4, 0.0}};
  for (int t = 1; t <= 3; ++t) {
    set.zero_grad();
    auto g = set.get("x").mutable_grad();
    g[0] = grads[t - 1][0];
    g[1] = grads[t - 1][1];
    adam_step(set, state, o);
    for (int j = 0; j < 2; ++j) {
      m[j] = 0.9 * m[j] + 0.1 * grads[t - 1][j];
      v[j] = 0.999 * v[j] + 0.001 * grads[t - 1][j] * grads[t - 1][j];
      const double mh = m[j] / (1 - std::pow(0.9, t));
      const double vh = v[j] / (1 - std::pow(0.999, t));
      x[j] -= 0.001 * mh / (std::sqrt(vh) + 1e-8);
      EXPECT_NEAR(set.get("x")[static_cast<std::size_t>(j)], x[j], 1e-15);
    }
  }
}

TEST(Adam, FrozenRowIsUntouched) {
  model::ParameterSet set;
  set.add("table", ag::Tensor::from({2, 2}, {0, 0, 1, 1}), 0);
  AdamState state;
  auto g = set.get("table").mutable_grad();
  std::fill(g.begin(), g.end(), 1.0);
  adam_step(set, state, {});
  EXPECT_EQ(set.get("table")[0], 0.0);
  EXPECT_EQ(set.get("table")[1], 0.0);
  EXPECT_LT(set.get("table")[2], 1.0);
}

TEST(Adam, ClipsTheGlobalNorm) {
  auto set = scalar_param(0.0);
  AdamState state;
  set_grad(set, {30.0});
  auto report = adam_step(set, state, {});
  EXPECT_TRUE(report.clipped);
  EXPECT_EQ(report.grad_norm, 30.0);
  EXPECT_GT(state.second[0][0], 0.0);
  EXPECT_NEAR(state.first[0][0], 0.1 * 5.0, 1e-12);
}

TEST(Adam, NonFiniteGradientNamesTheParameter) {
  auto set = scalar_param(2.0);
  AdamState state;
  set_grad(set, {std::numeric_limits<double>::quiet_NaN()});
  try {
    adam_step(set, state, {});
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
  EXPECT_EQ(set.get("x")[0], 2.0);
  EXPECT_EQ(state.t, 0u);
}

}  // namespace
}  // namespace sifn::train
