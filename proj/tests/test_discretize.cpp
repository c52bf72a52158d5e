// Copyright 2026 The wavefeed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wavefeed/lti/discretize.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"

namespace {

using wavefeed::lti::discretize_zoh;
using wavefeed::lti::Matrix;
using wavefeed::lti::StateSpaceModel;
using wavefeed::lti::Vector;

TEST(DiscretizeZoh, ScalarClosedForm) {
  // xdot = a x + b u: Ad = e^{a dt}, Bd = (e^{a dt} - 1) b / a.
  Matrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << -1.7;
  b << 0.8;
  c << 1.0;
  d << 0.0;
  const double dt = 0.05;
  const auto gd = discretize_zoh(StateSpaceModel(a, b, c, d), dt);
  const double ead = std::exp(-1.7 * dt);
  EXPECT_NEAR(gd.Ad()(0, 0), ead, 1e-14);
  EXPECT_NEAR(gd.Bd()(0, 0), (ead - 1.0) * 0.8 / -1.7, 1e-14);
  EXPECT_DOUBLE_EQ(gd.dt(), dt);
}

TEST(DiscretizeZoh, DoubleIntegratorClosedForm) {
  // Singular A: Ad = [[1, dt], [0, 1]], Bd = [dt^2/2, dt].
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 1);
  a(0, 1) = 1.0;
  b(1, 0) = 1.0;
  Matrix c = Matrix::Identity(2, 2), d = Matrix::Zero(2, 1);
  const double dt = 0.2;
  const auto gd = discretize_zoh(StateSpaceModel(a, b, c, d), dt);
  EXPECT_NEAR(gd.Ad()(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(gd.Ad()(0, 1), dt, 1e-15);
  EXPECT_NEAR(gd.Ad()(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(gd.Ad()(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(gd.Bd()(0, 0), dt * dt / 2.0, 1e-15);
  EXPECT_NEAR(gd.Bd()(1, 0), dt, 1e-15);
}

TEST(DiscretizeZoh, MatchesFineStepIntegrationOracle) {
  const auto g = oracles::random_stable_model(4, 2, 2, 99);
  const double dt = 0.05;
  auto gd = discretize_zoh(g, dt);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Vector> inputs;
  for (int k = 0; k < 40; ++k) {
    Vector u(2);
    u << dist(rng), dist(rng);
    inputs.push_back(u);
  }
  const auto truth = oracles::rk4_zoh_states(g.A(), g.B(), inputs, dt);

  gd.reset();
  for (size_t k = 0; k < inputs.size(); ++k) {
    const Vector y = gd.step(inputs[k]);
    // step() returns the pre-update output; compare post-update state.
    EXPECT_NEAR((gd.state() - truth[k]).norm(), 0.0, 1e-10)
        << "step " << k;
    (void)y;
  }
}

TEST(DiscretizeZoh, StepOutputUsesPreUpdateState) {
  Matrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << 0.0;
  b << 1.0;
  c << 1.0;
  d << 0.5;
  auto gd = discretize_zoh(StateSpaceModel(a, b, c, d), 1.0);
  Vector u(1);
  u << 2.0;
  Vector y0 = gd.step(u);
  EXPECT_DOUBLE_EQ(y0(0), 0.5 * 2.0);  // state still zero
  Vector y1 = gd.step(u);
  EXPECT_DOUBLE_EQ(y1(0), 2.0 + 1.0);  // integrated one step of u=2
}

TEST(DiscretizeZoh, ResetRestoresInitialState) {
  const auto g = oracles::random_stable_model(3, 1, 1, 5);
  auto gd = discretize_zoh(g, 0.1);
  Vector u(1);
  u << 1.0;
  gd.step(u);
  gd.step(u);
  EXPECT_GT(gd.state().norm(), 0.0);
  gd.reset();
  EXPECT_DOUBLE_EQ(gd.state().norm(), 0.0);
  Vector x0(3);
  x0 << 1, 2, 3;
  gd.reset(x0);
  EXPECT_DOUBLE_EQ((gd.state() - x0).norm(), 0.0);
  EXPECT_THROW(gd.reset(Vector::Zero(2)), wavefeed::DimensionError);
}

TEST(DiscretizeZoh, RejectsNonPositiveStep) {
  const auto g = oracles::random_stable_model(2, 1, 1, 3);
  EXPECT_THROW(discretize_zoh(g, 0.0), wavefeed::Error);
  EXPECT_THROW(discretize_zoh(g, -0.1), wavefeed::Error);
}

}  // namespace
