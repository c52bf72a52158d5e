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
#include <algorithm>
#include <complex>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wavefeed/errors.hpp"

namespace wavefeed::lti {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Reciprocal condition number below which a matrix is treated as singular.
inline constexpr double kSingularRcond = 1e-12;

/// Eigenvalue real parts above this are treated as unstable.
inline constexpr double kStabilityTol = 1e-9;

namespace detail {

inline std::vector<std::string> default_names(const std::string& prefix,
                                              Eigen::Index count) {
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i)
    names.push_back(prefix + std::to_string(i));
  return names;
}

inline void check_unique(const std::vector<std::string>& names,
                         const char* kind) {
  std::set<std::string> seen(names.begin(), names.end());
  if (seen.size() != names.size())
    throw DimensionError(std::string(kind) + " channel names are not unique");
}

}  // namespace detail

/// Continuous-time LTI realization  xdot = A x + B u,  y = C x + D u
/// with named input and output channels. Immutable after construction.
class StateSpaceModel {
 public:
  StateSpaceModel(Matrix a, Matrix b, Matrix c, Matrix d,
                  std::vector<std::string> input_names = {},
                  std::vector<std::string> output_names = {})
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    if (a_.rows() != a_.cols())
      throw DimensionError("A must be square");
    if (b_.rows() != a_.rows())
      throw DimensionError("B row count must match A");
    if (c_.cols() != a_.rows())
      throw DimensionError("C column count must match A");
    if (d_.rows() != c_.rows() || d_.cols() != b_.cols())
      throw DimensionError("D must be p x m");
    input_names_ = input_names.empty()
                       ? detail::default_names("u", b_.cols())
                       : std::move(input_names);
    output_names_ = output_names.empty()
                        ? detail::default_names("y", c_.rows())
                        : std::move(output_names);
    if (static_cast<Eigen::Index>(input_names_.size()) != b_.cols())
      throw DimensionError("input name count must equal input count");
    if (static_cast<Eigen::Index>(output_names_.size()) != c_.rows())
      throw DimensionError("output name count must equal output count");
    detail::check_unique(input_names_, "input");
    detail::check_unique(output_names_, "output");
  }

  /// Static (memoryless) system y = D u.
  static StateSpaceModel gain(Matrix d, std::vector<std::string> input_names = {},
                              std::vector<std::string> output_names = {}) {
    const Eigen::Index p = d.rows(), m = d.cols();
    return StateSpaceModel(Matrix::Zero(0, 0), Matrix::Zero(0, m),
                           Matrix::Zero(p, 0), std::move(d),
                           std::move(input_names), std::move(output_names));
  }

  static StateSpaceModel identity(Eigen::Index channels) {
    return gain(Matrix::Identity(channels, channels));
  }

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  const Matrix& C() const { return c_; }
  const Matrix& D() const { return d_; }
  Eigen::Index order() const { return a_.rows(); }
  Eigen::Index num_inputs() const { return b_.cols(); }
  Eigen::Index num_outputs() const { return c_.rows(); }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }

  Eigen::Index input_index(const std::string& name) const {
    return find_channel(input_names_, name, "input");
  }
  Eigen::Index output_index(const std::string& name) const {
    return find_channel(output_names_, name, "output");
  }
  bool has_input(const std::string& name) const {
    return std::find(input_names_.begin(), input_names_.end(), name) !=
           input_names_.end();
  }
  bool has_output(const std::string& name) const {
    return std::find(output_names_.begin(), output_names_.end(), name) !=
           output_names_.end();
  }

  ComplexVector poles() const {
    if (order() == 0) return ComplexVector(0);
    return Eigen::EigenSolver<Matrix>(a_, false).eigenvalues();
  }

  bool is_stable(double tol = kStabilityTol) const {
    const ComplexVector p = poles();
    for (Eigen::Index i = 0; i < p.size(); ++i)
      if (p(i).real() > -tol) return false;
    return true;
  }

  /// Returns an identical system with renamed channels.
  StateSpaceModel renamed(std::vector<std::string> input_names,
                          std::vector<std::string> output_names) const {
    return StateSpaceModel(a_, b_, c_, d_, std::move(input_names),
                           std::move(output_names));
  }

  /// Scales the response by a scalar factor (k * G).
  StateSpaceModel scaled(double k) const {
    return StateSpaceModel(a_, b_, k * c_, k * d_, input_names_,
                           output_names_);
  }

 private:
  static Eigen::Index find_channel(const std::vector<std::string>& names,
                                   const std::string& name, const char* kind) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
      throw DimensionError(std::string("unknown ") + kind + " channel '" +
                           name + "'");
    return static_cast<Eigen::Index>(it - names.begin());
  }

  Matrix a_, b_, c_, d_;
  std::vector<std::string> input_names_, output_names_;
};

/// Frequency response C (iw I - A)^-1 B + D at a single frequency.
///
/// Throws EvaluationAtPoleError when iw coincides with a pole (the resolvent
/// is singular beyond a 1e12 condition threshold).
inline ComplexMatrix evaluate(const StateSpaceModel& g, double omega) {
  if (!std::isfinite(omega) || omega < 0.0)
    throw Error("evaluate: omega must be finite and nonnegative");
  if (g.order() == 0) return g.D().cast<std::complex<double>>();
  const std::complex<double> s(0.0, omega);
  ComplexMatrix m = -g.A().cast<std::complex<double>>();
  m.diagonal().array() += s;
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  // rcond() is NaN for an exactly singular factorization, so test negated.
  if (!(lu.rcond() >= kSingularRcond))
    throw EvaluationAtPoleError(
        omega, "evaluate: resolvent singular at omega=" + std::to_string(omega));
  return g.C().cast<std::complex<double>>() *
             lu.solve(g.B().cast<std::complex<double>>()) +
         g.D().cast<std::complex<double>>();
}

/// Series interconnection g2 after g1 (u -> g1 -> g2 -> y).
/// The response satisfies evaluate(series(g2,g1), w) = evaluate(g2,w) * evaluate(g1,w).
inline StateSpaceModel series(const StateSpaceModel& g2,
                              const StateSpaceModel& g1) {
  if (g1.num_outputs() != g2.num_inputs())
    throw DimensionError("series: output count of g1 (" +
                         std::to_string(g1.num_outputs()) +
                         ") must equal input count of g2 (" +
                         std::to_string(g2.num_inputs()) + ")");
  const Eigen::Index n1 = g1.order(), n2 = g2.order();
  Matrix a = Matrix::Zero(n1 + n2, n1 + n2);
  a.topLeftCorner(n1, n1) = g1.A();
  a.bottomLeftCorner(n2, n1) = g2.B() * g1.C();
  a.bottomRightCorner(n2, n2) = g2.A();
  Matrix b(n1 + n2, g1.num_inputs());
  b.topRows(n1) = g1.B();
  b.bottomRows(n2) = g2.B() * g1.D();
  Matrix c(g2.num_outputs(), n1 + n2);
  c.leftCols(n1) = g2.D() * g1.C();
  c.rightCols(n2) = g2.C();
  Matrix d = g2.D() * g1.D();
  return StateSpaceModel(std::move(a), std::move(b), std::move(c),
                         std::move(d), g1.input_names(), g2.output_names());
}

/// Result of invert(): the inverse realization plus its pole set.
struct InversionResult {
  StateSpaceModel model;
  ComplexVector poles;
};

/// Inverts a biproper square system. The inverse realization is
///   (A - B D^-1 C,  B D^-1,  -D^-1 C,  D^-1).
///
/// Throws SingularFeedthroughError when D is singular (relative-degree
/// augmentation is the caller's job) and NonMinimumPhaseError when the
/// inverse would be unstable. The offending pole locations of the inverse
/// are the right-half-plane zeros of the original system.
inline InversionResult invert(const StateSpaceModel& g,
                              double stability_tol = kStabilityTol) {
  if (g.num_inputs() != g.num_outputs())
    throw DimensionError("invert: system must have square channel count");
  Eigen::PartialPivLU<Matrix> dlu(g.D());
  const bool d_ok = g.D().size() > 0 && (dlu.rcond() >= kSingularRcond);
  if (!d_ok)
    throw SingularFeedthroughError(
        "invert: feedthrough is singular; augment relative degree first");
  const Matrix dinv = dlu.solve(Matrix::Identity(g.D().rows(), g.D().cols()));
  Matrix a = g.A() - g.B() * dinv * g.C();
  Matrix b = g.B() * dinv;
  Matrix c = -dinv * g.C();
  StateSpaceModel inv(std::move(a), std::move(b), std::move(c), dinv,
                      g.output_names(), g.input_names());
  ComplexVector poles = inv.poles();
  std::vector<std::complex<double>> unstable;
  for (Eigen::Index i = 0; i < poles.size(); ++i)
    if (poles(i).real() > stability_tol) unstable.push_back(poles(i));
  if (!unstable.empty()) {
    std::string msg = "invert: inverse is unstable; offending zeros:";
    for (const auto& z : unstable)
      msg += " (" + std::to_string(z.real()) + (z.imag() >= 0 ? "+" : "-") +
             std::to_string(std::abs(z.imag())) + "i)";
    throw NonMinimumPhaseError(std::move(unstable), msg);
  }
  return {std::move(inv), std::move(poles)};
}

/// Selects a subsystem by channel names. The response of the result equals
/// the corresponding block of the full response matrix.
inline StateSpaceModel subsystem(const StateSpaceModel& g,
                                 const std::vector<std::string>& inputs,
                                 const std::vector<std::string>& outputs) {
  Matrix b(g.order(), static_cast<Eigen::Index>(inputs.size()));
  Matrix c(static_cast<Eigen::Index>(outputs.size()), g.order());
  Matrix d(static_cast<Eigen::Index>(outputs.size()),
           static_cast<Eigen::Index>(inputs.size()));
  for (size_t j = 0; j < inputs.size(); ++j)
    b.col(static_cast<Eigen::Index>(j)) = g.B().col(g.input_index(inputs[j]));
  for (size_t i = 0; i < outputs.size(); ++i)
    c.row(static_cast<Eigen::Index>(i)) = g.C().row(g.output_index(outputs[i]));
  for (size_t i = 0; i < outputs.size(); ++i)
    for (size_t j = 0; j < inputs.size(); ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          g.D()(g.output_index(outputs[i]), g.input_index(inputs[j]));
  return StateSpaceModel(g.A(), std::move(b), std::move(c), std::move(d),
                         inputs, outputs);
}

/// First-order high-pass section  s / (s + corner).  Unity at high
/// frequency, exactly zero at DC.
inline StateSpaceModel highpass_section(double corner) {
  if (!(corner > 0.0)) throw Error("highpass_section: corner must be > 0");
  Matrix a(1, 1), b(1, 1), c(1, 1), d(1, 1);
  a << -corner;
  b << 1.0;
  c << -corner;
  d << 1.0;
  return StateSpaceModel(a, b, c, d);
}

}  // namespace wavefeed::lti
