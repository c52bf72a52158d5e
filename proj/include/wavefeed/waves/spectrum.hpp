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

#include <cmath>
#include <cstdint>
#include <vector>

#include "wavefeed/errors.hpp"

namespace wavefeed::waves {

/// Parameters for an irregular sea state synthesized from a JONSWAP
/// spectrum over a finite frequency band.
struct WaveSpectrumParams {
  double hs = 2.0;          // significant wave height (m)
  double tp = 8.0;          // peak period (s)
  double gamma = 3.3;       // peak-enhancement factor
  int num_components = 50;  // component count
  double omega_min = 2.0 * M_PI / 20.0;  // band lower edge (rad/s)
  double omega_max = 2.0 * M_PI / 3.0;   // band upper edge (rad/s)
  std::uint64_t seed = 1;

  void validate() const {
    if (!(hs > 0.0)) throw Error("wave params: Hs must be > 0");
    if (!(tp > 0.0)) throw Error("wave params: Tp must be > 0");
    if (!(gamma >= 1.0)) throw Error("wave params: gamma must be >= 1");
    if (num_components < 1)
      throw Error("wave params: need at least one component");
    if (!(omega_min > 0.0) || !(omega_max > omega_min))
      throw Error("wave params: need 0 < omega_min < omega_max");
  }
};

/// JONSWAP spectral density, numerically normalized so the variance
/// integral over all frequencies equals (Hs/4)^2. The closed-form
/// (1 - 0.287 ln gamma) normalization is only approximate; integrating
/// once at construction removes that bias.
class JonswapSpectrum {
 public:
  explicit JonswapSpectrum(const WaveSpectrumParams& params)
      : params_(params) {
    params.validate();
    const double m0 = integrate_unscaled(0.05 * peak_omega(),
                                         25.0 * peak_omega(), 20000);
    scale_ = (params_.hs / 4.0) * (params_.hs / 4.0) / m0;
  }

  double peak_omega() const { return 2.0 * M_PI / params_.tp; }

  /// Spectral density S(omega) in m^2 s/rad.
  double density(double omega) const {
    return scale_ * unscaled(omega);
  }

  /// Integral of S over [lo, hi] by composite Simpson quadrature.
  double band_variance(double lo, double hi, int intervals = 20000) const {
    return scale_ * integrate_unscaled(lo, hi, intervals);
  }

  const WaveSpectrumParams& params() const { return params_; }

 private:
  double unscaled(double omega) const {
    if (!(omega > 0.0)) return 0.0;
    const double wp = peak_omega();
    const double r = wp / omega;
    const double sigma = omega <= wp ? 0.07 : 0.09;
    const double dev = (omega - wp) / (sigma * wp);
    const double peak_exp = std::exp(-0.5 * dev * dev);
    return std::pow(omega, -5.0) * std::exp(-1.25 * r * r * r * r) *
           std::pow(params_.gamma, peak_exp);
  }

  double integrate_unscaled(double lo, double hi, int intervals) const {
    if (!(hi > lo)) throw Error("spectrum: empty integration interval");
    if (intervals % 2 != 0) ++intervals;
    const double h = (hi - lo) / intervals;
    double acc = unscaled(lo) + unscaled(hi);
    for (int i = 1; i < intervals; ++i)
      acc += unscaled(lo + i * h) * (i % 2 == 0 ? 2.0 : 4.0);
    return acc * h / 3.0;
  }

  WaveSpectrumParams params_;
  double scale_ = 0.0;
};

}  // namespace wavefeed::waves
