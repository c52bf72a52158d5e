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
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace wavefeed::lti {

/// Sampled frequency response of one or more scalar channels on a shared
/// grid of angular frequencies. The grid is strictly increasing and
/// positive; rows are frequencies, columns are channels.
class FrequencyResponseSet {
 public:
  FrequencyResponseSet(Vector omega, ComplexMatrix response,
                       std::vector<std::string> channel_names)
      : omega_(std::move(omega)), response_(std::move(response)),
        channel_names_(std::move(channel_names)) {
    if (response_.rows() != omega_.size())
      throw DimensionError("FrequencyResponseSet: row count must match grid");
    if (static_cast<Eigen::Index>(channel_names_.size()) != response_.cols())
      throw DimensionError("FrequencyResponseSet: channel name count");
    if (omega_.size() == 0)
      throw DimensionError("FrequencyResponseSet: empty grid");
    for (Eigen::Index i = 0; i < omega_.size(); ++i) {
      if (!(omega_(i) > 0.0))
        throw DimensionError("FrequencyResponseSet: grid must be positive");
      if (i > 0 && !(omega_(i) > omega_(i - 1)))
        throw DimensionError(
            "FrequencyResponseSet: grid must be strictly increasing");
    }
    detail::check_unique(channel_names_, "response");
  }

  const Vector& omega() const { return omega_; }
  const ComplexMatrix& response() const { return response_; }
  const std::vector<std::string>& channel_names() const {
    return channel_names_;
  }
  Eigen::Index size() const { return omega_.size(); }
  Eigen::Index num_channels() const { return response_.cols(); }

  Eigen::Index channel_index(const std::string& name) const {
    for (size_t i = 0; i < channel_names_.size(); ++i)
      if (channel_names_[i] == name) return static_cast<Eigen::Index>(i);
    throw DimensionError("FrequencyResponseSet: unknown channel '" + name +
                         "'");
  }

  ComplexVector channel(const std::string& name) const {
    return response_.col(channel_index(name));
  }

  /// Restricts to grid points with omega in [lo, hi].
  FrequencyResponseSet band(double lo, double hi) const {
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < omega_.size(); ++i)
      if (omega_(i) >= lo && omega_(i) <= hi) keep.push_back(i);
    if (keep.empty())
      throw DimensionError("FrequencyResponseSet: band selects no points");
    Vector w(static_cast<Eigen::Index>(keep.size()));
    ComplexMatrix r(static_cast<Eigen::Index>(keep.size()), response_.cols());
    for (size_t i = 0; i < keep.size(); ++i) {
      w(static_cast<Eigen::Index>(i)) = omega_(keep[i]);
      r.row(static_cast<Eigen::Index>(i)) = response_.row(keep[i]);
    }
    return FrequencyResponseSet(std::move(w), std::move(r), channel_names_);
  }

  /// Multiplies every channel pointwise by phase(omega_i); used to shift
  /// responses in time (e.g. removing an anticipation lead).
  template <typename Fn>
  FrequencyResponseSet phase_shifted(Fn&& phase) const {
    ComplexMatrix r = response_;
    for (Eigen::Index i = 0; i < omega_.size(); ++i)
      r.row(i) *= phase(omega_(i));
    return FrequencyResponseSet(omega_, std::move(r), channel_names_);
  }

 private:
  Vector omega_;
  ComplexMatrix response_;
  std::vector<std::string> channel_names_;
};

/// Samples each (output, input) pair of a model on an angular-frequency
/// grid. Channels are named "<output><sep><input>" for MIMO systems and
/// just "<output>" for single-input systems.
inline FrequencyResponseSet sample_response(const StateSpaceModel& g,
                                            const Vector& omega) {
  const Eigen::Index p = g.num_outputs(), m = g.num_inputs();
  ComplexMatrix r(omega.size(), p * m);
  std::vector<std::string> names;
  names.reserve(static_cast<size_t>(p * m));
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      names.push_back(m == 1 ? g.output_names()[static_cast<size_t>(i)]
                             : g.output_names()[static_cast<size_t>(i)] +
                                   "<-" +
                                   g.input_names()[static_cast<size_t>(j)]);
  for (Eigen::Index k = 0; k < omega.size(); ++k) {
    const ComplexMatrix h = evaluate(g, omega(k));
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < m; ++j) r(k, i * m + j) = h(i, j);
  }
  return FrequencyResponseSet(omega, std::move(r), std::move(names));
}

/// Linearly spaced grid of n points on [lo, hi].
inline Vector linspace(double lo, double hi, Eigen::Index n) {
  if (n < 2) throw DimensionError("linspace: need at least 2 points");
  return Vector::LinSpaced(n, lo, hi);
}

/// Piecewise-linear interpolation of a sampled complex curve onto new
/// abscissae, holding the end values outside the sampled range. The source
/// grid must be strictly increasing.
inline ComplexVector interp_complex(const Vector& x, const ComplexVector& y,
                                    const Vector& xq) {
  if (x.size() != y.size() || x.size() < 1)
    throw DimensionError("interp_complex: size mismatch");
  ComplexVector out(xq.size());
  for (Eigen::Index k = 0; k < xq.size(); ++k) {
    const double q = xq(k);
    if (q <= x(0)) {
      out(k) = y(0);
    } else if (q >= x(x.size() - 1)) {
      out(k) = y(y.size() - 1);
    } else {
      Eigen::Index hi = 1;
      while (x(hi) < q) ++hi;
      const double t = (q - x(hi - 1)) / (x(hi) - x(hi - 1));
      out(k) = (1.0 - t) * y(hi - 1) + t * y(hi);
    }
  }
  return out;
}

}  // namespace wavefeed::lti
