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

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <utility>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/lti/lyapunov.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace wavefeed::lti {

struct ReductionResult {
  StateSpaceModel model;
  /// Hankel singular values of the original system, descending.
  Vector hankel_singular_values;
  /// Guaranteed H-infinity error bound: twice the sum of truncated values.
  double error_bound = 0.0;
};

namespace detail {

/// Symmetric square-root factor P = R R^T, tolerant of (numerically)
/// rank-deficient Gramians: negative roundoff eigenvalues clamp to zero.
inline Matrix gramian_factor(const Matrix& p) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(p);
  Vector lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

}  // namespace detail

/// Square-root balanced truncation of a stable system to the given order.
///
/// States are ranked by Hankel singular value; the retained realization is
/// balanced. Input and output channel names are preserved. Requires a
/// stable system (Gramians must exist) and 0 < order <= n; order == n
/// returns the balanced realization without truncation.
inline ReductionResult balanced_truncation(const StateSpaceModel& g,
                                           Eigen::Index order) {
  const Eigen::Index n = g.order();
  if (order < 1 || order > n)
    throw DimensionError("balanced_truncation: order must be in [1, n]");
  if (!g.is_stable())
    throw Error("balanced_truncation: system must be stable");

  const Matrix p = controllability_gramian(g);
  const Matrix q = observability_gramian(g);
  const Matrix r = detail::gramian_factor(p);  // P = R R^T
  const Matrix l = detail::gramian_factor(q);  // Q = L L^T

  Eigen::JacobiSVD<Matrix> svd(l.transpose() * r,
                               Eigen::ComputeThinU | Eigen::ComputeThinV);
  Vector hsv = svd.singularValues();

  double bound = 0.0;
  for (Eigen::Index i = order; i < hsv.size(); ++i) bound += 2.0 * hsv(i);
  if (hsv.size() > 0 && hsv(std::min(order, hsv.size()) - 1) <= 0.0)
    throw Error("balanced_truncation: requested order exceeds numerical rank");

  // Balancing projectors T_l = S^-1/2 U^T L^T (maps x to balanced z),
  // T_r = R V S^-1/2 (maps z back); T_l T_r = I on the retained block.
  const Vector s_inv_sqrt =
      hsv.head(order).cwiseSqrt().cwiseInverse();
  const Matrix tl = s_inv_sqrt.asDiagonal() *
                    svd.matrixU().leftCols(order).transpose() * l.transpose();
  const Matrix tr =
      r * svd.matrixV().leftCols(order) * s_inv_sqrt.asDiagonal();

  StateSpaceModel reduced(tl * g.A() * tr, tl * g.B(), g.C() * tr, g.D(),
                          g.input_names(), g.output_names());
  return {std::move(reduced), std::move(hsv), bound};
}

}  // namespace wavefeed::lti
