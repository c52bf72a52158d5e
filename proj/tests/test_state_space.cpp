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

#include "wavefeed/lti/state_space.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "oracles.hpp"

namespace {

using wavefeed::lti::ComplexMatrix;
using wavefeed::lti::evaluate;
using wavefeed::lti::Matrix;
using wavefeed::lti::series;
using wavefeed::lti::StateSpaceModel;

// Controllable canonical realization of (c1 s + c0)/(s^2 + a1 s + a0) + d.
StateSpaceModel second_order(double a0, double a1, double c0, double c1,
                             double d) {
  Matrix A(2, 2), B(2, 1), C(1, 2), D(1, 1);
  A << 0, 1, -a0, -a1;
  B << 0, 1;
  C << c0, c1;
  D << d;
  return StateSpaceModel(A, B, C, D);
}

TEST(StateSpaceModel, EvaluateMatchesRationalOracle) {
  const double a0 = 5.0, a1 = 3.0, c0 = 2.0, c1 = 1.0, d = 0.4;
  const StateSpaceModel g = second_order(a0, a1, c0, c1, d);
  for (double w : {0.0, 0.1, 0.7, 1.3, 2.0, 9.5}) {
    const std::complex<double> expected =
        oracles::rational_response({c0, c1}, {a0, a1, 1.0}, w) + d;
    const std::complex<double> got = evaluate(g, w)(0, 0);
    EXPECT_NEAR(std::abs(got - expected), 0.0, 1e-13) << "omega=" << w;
  }
}

TEST(StateSpaceModel, EvaluateThrowsAtImaginaryAxisPole) {
  // Undamped oscillator: poles at +-2i exactly.
  Matrix A(2, 2), B(2, 1), C(1, 2), D(1, 1);
  A << 0, 1, -4, 0;
  B << 0, 1;
  C << 1, 0;
  D << 0;
  const StateSpaceModel g(A, B, C, D);
  EXPECT_THROW(evaluate(g, 2.0), wavefeed::EvaluationAtPoleError);
  EXPECT_NO_THROW(evaluate(g, 1.9));
  try {
    evaluate(g, 2.0);
    FAIL() << "expected EvaluationAtPoleError";
  } catch (const wavefeed::EvaluationAtPoleError& e) {
    EXPECT_DOUBLE_EQ(e.omega(), 2.0);
  }
}

TEST(StateSpaceModel, EvaluateRejectsNegativeFrequency) {
  const StateSpaceModel g = second_order(5, 3, 2, 1, 0);
  EXPECT_THROW(evaluate(g, -1.0), wavefeed::Error);
}

TEST(StateSpaceModel, SeriesEqualsEvaluateThenMultiply) {
  for (unsigned seed : {1u, 2u, 3u}) {
    const StateSpaceModel g1 = oracles::random_stable_model(4, 2, 3, seed);
    const StateSpaceModel g2 =
        oracles::random_stable_model(3, 3, 2, seed + 100);
    const StateSpaceModel cascade = series(g2, g1);
    EXPECT_EQ(cascade.order(), 7);
    EXPECT_EQ(cascade.num_inputs(), 2);
    EXPECT_EQ(cascade.num_outputs(), 2);
    for (double w : {0.0, 0.3, 1.1, 4.0}) {
      const ComplexMatrix expected = evaluate(g2, w) * evaluate(g1, w);
      const ComplexMatrix got = evaluate(cascade, w);
      EXPECT_NEAR((got - expected).norm(), 0.0, 1e-10 * expected.norm() + 1e-12);
    }
  }
}

TEST(StateSpaceModel, SeriesRejectsChannelMismatch) {
  const StateSpaceModel g1 = oracles::random_stable_model(2, 1, 2, 7);
  const StateSpaceModel g2 = oracles::random_stable_model(2, 3, 1, 8);
  EXPECT_THROW(series(g2, g1), wavefeed::DimensionError);
}

TEST(StateSpaceModel, InvertRoundTripIsIdentity) {
  // Biproper stable minimum-phase: (s+2)/(s+1) style, 2x2 via random D with
  // dominant diagonal to keep the inverse stable.
  Matrix A(2, 2), B(2, 2), C(2, 2), D(2, 2);
  A << -1, 0.2, 0, -3;
  B << 1, 0, 0, 1;
  C << 0.5, 0.1, -0.2, 0.4;
  D << 2, 0.1, 0.05, 3;
  const StateSpaceModel g(A, B, C, D, {"a", "b"}, {"ya", "yb"});
  const auto inv = wavefeed::lti::invert(g);
  EXPECT_EQ(inv.model.input_names(), g.output_names());
  EXPECT_EQ(inv.model.output_names(), g.input_names());
  for (double w : {0.0, 0.5, 2.0, 10.0}) {
    const ComplexMatrix prod = evaluate(inv.model, w) * evaluate(g, w);
    EXPECT_NEAR((prod - ComplexMatrix::Identity(2, 2)).norm(), 0.0, 1e-10);
  }
}

TEST(StateSpaceModel, InvertRejectsSingularFeedthrough) {
  const StateSpaceModel g = second_order(5, 3, 2, 1, 0.0);
  EXPECT_THROW(wavefeed::lti::invert(g), wavefeed::SingularFeedthroughError);
}

TEST(StateSpaceModel, InvertReportsRightHalfPlaneZeros) {
  // (s - 1)/(s + 2) = 1 - 3/(s+2): zero at +1 makes the inverse unstable.
  Matrix A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << -2;
  B << 1;
  C << -3;
  D << 1;
  const StateSpaceModel g(A, B, C, D);
  try {
    wavefeed::lti::invert(g);
    FAIL() << "expected NonMinimumPhaseError";
  } catch (const wavefeed::NonMinimumPhaseError& e) {
    ASSERT_EQ(e.zeros().size(), 1u);
    EXPECT_NEAR(e.zeros()[0].real(), 1.0, 1e-12);
    EXPECT_NEAR(e.zeros()[0].imag(), 0.0, 1e-12);
  }
}

TEST(StateSpaceModel, SubsystemMatchesResponseBlock) {
  const StateSpaceModel g =
      oracles::random_stable_model(5, 3, 3, 42).renamed(
          {"u0", "u1", "u2"}, {"y0", "y1", "y2"});
  const StateSpaceModel sub =
      wavefeed::lti::subsystem(g, {"u2", "u0"}, {"y1"});
  EXPECT_EQ(sub.num_inputs(), 2);
  EXPECT_EQ(sub.num_outputs(), 1);
  for (double w : {0.2, 1.5}) {
    const ComplexMatrix full = evaluate(g, w);
    const ComplexMatrix got = evaluate(sub, w);
    EXPECT_NEAR(std::abs(got(0, 0) - full(1, 2)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(got(0, 1) - full(1, 0)), 0.0, 1e-12);
  }
  EXPECT_THROW(wavefeed::lti::subsystem(g, {"nope"}, {"y0"}),
               wavefeed::DimensionError);
}

TEST(StateSpaceModel, ConstructorValidatesShapesAndNames) {
  Matrix A = Matrix::Zero(2, 3);
  EXPECT_THROW(StateSpaceModel(A, Matrix::Zero(2, 1), Matrix::Zero(1, 2),
                               Matrix::Zero(1, 1)),
               wavefeed::DimensionError);
  Matrix A2 = -Matrix::Identity(2, 2);
  EXPECT_THROW(StateSpaceModel(A2, Matrix::Zero(2, 2), Matrix::Zero(1, 2),
                               Matrix::Zero(1, 2), {"u", "u"}, {"y"}),
               wavefeed::DimensionError);
  EXPECT_THROW(StateSpaceModel(A2, Matrix::Zero(2, 1), Matrix::Zero(1, 2),
                               Matrix::Zero(1, 1), {"a", "b"}, {"y"}),
               wavefeed::DimensionError);
}

TEST(StateSpaceModel, PolesAndStability) {
  const StateSpaceModel stable = second_order(5, 3, 2, 1, 0);
  EXPECT_TRUE(stable.is_stable());
  Matrix A(1, 1), B(1, 1), C(1, 1), D(1, 1);
  A << 0.01;
  B << 1;
  C << 1;
  D << 0;
  EXPECT_FALSE(StateSpaceModel(A, B, C, D).is_stable());
}

TEST(StateSpaceModel, StaticGainHasOrderZero) {
  Matrix D(2, 2);
  D << 1, 2, 3, 4;
  const StateSpaceModel g = StateSpaceModel::gain(D);
  EXPECT_EQ(g.order(), 0);
  const ComplexMatrix h = evaluate(g, 3.0);
  EXPECT_NEAR((h.real() - D).norm(), 0.0, 0.0);
  EXPECT_NEAR(h.imag().norm(), 0.0, 0.0);
}

TEST(StateSpaceModel, HighpassSectionShape) {
  const StateSpaceModel hp = wavefeed::lti::highpass_section(0.25);
  EXPECT_NEAR(std::abs(evaluate(hp, 0.0)(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(evaluate(hp, 0.25)(0, 0)), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::abs(evaluate(hp, 250.0)(0, 0)), 1.0, 1e-5);
  EXPECT_THROW(wavefeed::lti::highpass_section(0.0), wavefeed::Error);
}

TEST(StateSpaceModel, ScaledMultipliesResponse) {
  const StateSpaceModel g = second_order(5, 3, 2, 1, 0.4);
  const StateSpaceModel g3 = g.scaled(-2.5);
  for (double w : {0.0, 1.0}) {
    EXPECT_NEAR(std::abs(evaluate(g3, w)(0, 0) + 2.5 * evaluate(g, w)(0, 0)),
                0.0, 1e-13);
  }
}

}  // namespace
