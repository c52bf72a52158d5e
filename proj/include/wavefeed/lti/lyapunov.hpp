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
#include <complex>

#include "wavefeed/errors.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace wavefeed::lti {

/// Solves the continuous Lyapunov equation  A X + X A^T + Q = 0  for
/// symmetric Q via complex Schur reduction (Bartels-Stewart).
///
/// Requires A to have no pair of eigenvalues summing to zero; a Hurwitz A
/// always qualifies.
inline Matrix solve_lyapunov(const Matrix& a, const Matrix& q) {
  if (a.rows() != a.cols() || q.rows() != q.cols() || a.rows() != q.rows())
    throw DimensionError("solve_lyapunov: A and Q must be square, same size");
  const Eigen::Index n = a.rows();
  if (n == 0) return Matrix(0, 0);

  Eigen::ComplexSchur<ComplexMatrix> schur(a.cast<std::complex<double>>());
  const ComplexMatrix t = schur.matrixT();  // upper triangular
  const ComplexMatrix u = schur.matrixU();  // unitary, A = U T U*

  // Transformed equation: T Y + Y T* + U* Q U = 0.
  const ComplexMatrix qt = u.adjoint() * q.cast<std::complex<double>>() * u;
  ComplexMatrix y = ComplexMatrix::Zero(n, n);

  // Column k of T Y + Y T* + Qt = 0 couples only to columns i > k because
  // T is upper triangular, so substitute backward:
  //   (T + conj(t_kk) I) y_k = -qt_k - sum_{i>k} y_i conj(t_ki).
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    ComplexVector rhs = -qt.col(k);
    const Eigen::Index tail = n - 1 - k;
    if (tail > 0)
      rhs -= y.rightCols(tail) * t.row(k).tail(tail).adjoint();
    ComplexMatrix lhs = t;
    lhs.diagonal().array() += std::conj(t(k, k));
    Eigen::PartialPivLU<ComplexMatrix> lu(lhs);
    if (!(lu.rcond() >= kSingularRcond))
      throw Error("solve_lyapunov: eigenvalue pair sums to zero");
    y.col(k) = lu.solve(rhs);
  }

  const ComplexMatrix x = u * y * u.adjoint();
  // Q symmetric implies X symmetric; the imaginary residue is roundoff.
  Matrix xr = x.real();
  return 0.5 * (xr + xr.transpose());
}

/// Controllability Gramian: solves A P + P A^T + B B^T = 0.
inline Matrix controllability_gramian(const StateSpaceModel& g) {
  return solve_lyapunov(g.A(), g.B() * g.B().transpose());
}

/// Observability Gramian: solves A^T Q + Q A + C^T C = 0.
inline Matrix observability_gramian(const StateSpaceModel& g) {
  return solve_lyapunov(g.A().transpose(), g.C().transpose() * g.C());
}

}  // namespace wavefeed::lti
