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

#include "wavefeed/lti/reduction.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wavefeed/lti/lyapunov.hpp"

namespace {

using wavefeed::lti::balanced_truncation;
using wavefeed::lti::evaluate;
using wavefeed::lti::Matrix;
using wavefeed::lti::StateSpaceModel;
using wavefeed::lti::Vector;

TEST(BalancedTruncation, FirstOrderHankelValueClosedForm) {
  // G = 1/(s+1): P = Q = 1/2, so the single Hankel value is 1/2.
  Matrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << -1;
  b << 1;
  c << 1;
  d << 0;
  const auto r = balanced_truncation(StateSpaceModel(a, b, c, d), 1);
  ASSERT_EQ(r.hankel_singular_values.size(), 1);
  EXPECT_NEAR(r.hankel_singular_values(0), 0.5, 1e-13);
  EXPECT_DOUBLE_EQ(r.error_bound, 0.0);
}

TEST(BalancedTruncation, FullOrderGivesBalancedGramians) {
  const auto g = oracles::random_stable_model(6, 2, 2, 21);
  const auto r = balanced_truncation(g, 6);
  const Matrix p = wavefeed::lti::controllability_gramian(r.model);
  const Matrix q = wavefeed::lti::observability_gramian(r.model);
  const Matrix sigma = r.hankel_singular_values.asDiagonal();
  EXPECT_NEAR((p - sigma).norm(), 0.0, 1e-8 * (1.0 + sigma.norm()));
  EXPECT_NEAR((q - sigma).norm(), 0.0, 1e-8 * (1.0 + sigma.norm()));
  // Same response as the original at sampled frequencies.
  for (double w : {0.0, 0.4, 2.0}) {
    EXPECT_NEAR((evaluate(r.model, w) - evaluate(g, w)).norm(), 0.0, 1e-8);
  }
}

TEST(BalancedTruncation, ErrorBoundIsTwiceTruncatedTail) {
  const auto g = oracles::random_stable_model(7, 1, 1, 33);
  const auto full = balanced_truncation(g, 7);
  const Vector hsv = full.hankel_singular_values;
  const auto r3 = balanced_truncation(g, 3);
  double expected = 0.0;
  for (int i = 3; i < 7; ++i) expected += 2.0 * hsv(i);
  EXPECT_NEAR(r3.error_bound, expected, 1e-12 * (1.0 + expected));
}

TEST(BalancedTruncation, ReducedResponseStaysWithinBound) {
  for (unsigned seed : {5u, 6u}) {
    const auto g = oracles::random_stable_model(8, 1, 1, seed);
    for (Eigen::Index order : {2, 4, 6}) {
      const auto r = balanced_truncation(g, order);
      EXPECT_TRUE(r.model.is_stable());
      for (double w = 0.0; w <= 20.0; w += 0.25) {
        const double err =
            std::abs(evaluate(g, w)(0, 0) - evaluate(r.model, w)(0, 0));
        EXPECT_LE(err, r.error_bound * (1.0 + 1e-9) + 1e-12)
            << "seed=" << seed << " order=" << order << " omega=" << w;
      }
    }
  }
}

TEST(BalancedTruncation, PreservesChannelNamesAndFeedthrough) {
  const auto g = oracles::random_stable_model(5, 2, 2, 77)
                     .renamed({"in_a", "in_b"}, {"out_a", "out_b"});
  const auto r = balanced_truncation(g, 2);
  EXPECT_EQ(r.model.input_names(), g.input_names());
  EXPECT_EQ(r.model.output_names(), g.output_names());
  EXPECT_NEAR((r.model.D() - g.D()).norm(), 0.0, 0.0);
}

TEST(BalancedTruncation, RejectsUnstableAndBadOrder) {
  Matrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << 0.5;
  b << 1;
  c << 1;
  d << 0;
  EXPECT_THROW(balanced_truncation(StateSpaceModel(a, b, c, d), 1),
               wavefeed::Error);
  const auto g = oracles::random_stable_model(3, 1, 1, 9);
  EXPECT_THROW(balanced_truncation(g, 0), wavefeed::DimensionError);
  EXPECT_THROW(balanced_truncation(g, 4), wavefeed::DimensionError);
}

}  // namespace
