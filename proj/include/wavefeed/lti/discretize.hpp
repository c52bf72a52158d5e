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
#include <unsupported/Eigen/MatrixFunctions>
#include <utility>

#include "wavefeed/errors.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace wavefeed::lti {

/// Discrete-time realization  x[k+1] = Ad x[k] + Bd u[k],  y = C x + D u,
/// produced by zero-order-hold sampling of a continuous system.
class DiscreteStateSpaceModel {
 public:
  DiscreteStateSpaceModel(Matrix ad, Matrix bd, Matrix c, Matrix d, double dt)
      : ad_(std::move(ad)), bd_(std::move(bd)), c_(std::move(c)),
        d_(std::move(d)), dt_(dt), state_(Vector::Zero(ad_.rows())) {
    if (ad_.rows() != ad_.cols() || bd_.rows() != ad_.rows() ||
        c_.cols() != ad_.rows() || d_.rows() != c_.rows() ||
        d_.cols() != bd_.cols())
      throw DimensionError("DiscreteStateSpaceModel: inconsistent shapes");
    if (!(dt > 0.0)) throw Error("DiscreteStateSpaceModel: dt must be > 0");
  }

  const Matrix& Ad() const { return ad_; }
  const Matrix& Bd() const { return bd_; }
  const Matrix& C() const { return c_; }
  const Matrix& D() const { return d_; }
  double dt() const { return dt_; }
  Eigen::Index order() const { return ad_.rows(); }
  Eigen::Index num_inputs() const { return bd_.cols(); }
  Eigen::Index num_outputs() const { return c_.rows(); }

  const Vector& state() const { return state_; }
  void reset(const Vector& x0) {
    if (x0.size() != ad_.rows())
      throw DimensionError("reset: state size mismatch");
    state_ = x0;
  }
  void reset() { state_.setZero(); }

  /// Output for the current state and input, then advance one step.
  Vector step(const Vector& u) {
    if (u.size() != bd_.cols()) throw DimensionError("step: input size");
    Vector y = c_ * state_ + d_ * u;
    state_ = ad_ * state_ + bd_ * u;
    return y;
  }

 private:
  Matrix ad_, bd_, c_, d_;
  double dt_;
  Vector state_;
};

/// Zero-order-hold discretization via one matrix exponential of the
/// augmented block [[A, B], [0, 0]]: exp gives [[Ad, Bd], [0, I]].
/// Exact for piecewise-constant inputs, singular A included.
inline DiscreteStateSpaceModel discretize_zoh(const StateSpaceModel& g,
                                              double dt) {
  if (!(dt > 0.0)) throw Error("discretize_zoh: dt must be > 0");
  const Eigen::Index n = g.order(), m = g.num_inputs();
  if (n == 0)
    return DiscreteStateSpaceModel(Matrix::Zero(0, 0), Matrix::Zero(0, m),
                                   g.C(), g.D(), dt);
  Matrix aug = Matrix::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = g.A() * dt;
  aug.topRightCorner(n, m) = g.B() * dt;
  const Matrix e = aug.exp();
  return DiscreteStateSpaceModel(e.topLeftCorner(n, n), e.topRightCorner(n, m),
                                 g.C(), g.D(), dt);
}

}  // namespace wavefeed::lti
