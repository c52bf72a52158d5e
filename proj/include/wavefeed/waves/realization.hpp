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
#include <random>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/waves/spectrum.hpp"

namespace wavefeed::waves {

inline constexpr double kDefaultGravity = 9.81;  // m/s^2

/// One regular wave component of a linear irregular sea.
struct WaveComponent {
  double amplitude = 0.0;   // m
  double omega = 0.0;       // rad/s
  double phase = 0.0;       // rad
  double wavenumber = 0.0;  // rad/m, deep water: omega^2 / g
};

/// Superposition of regular components traveling in +x. Immutable once
/// synthesized; all evaluation is pure.
struct WaveRealization {
  std::vector<WaveComponent> components;
  double gravity = kDefaultGravity;

  void validate() const {
    if (!(gravity > 0.0)) throw Error("realization: gravity must be > 0");
    for (const auto& c : components) {
      if (!(c.omega > 0.0))
        throw Error("realization: component frequency must be > 0");
      if (c.amplitude < 0.0)
        throw Error("realization: component amplitude must be >= 0");
      const double k = c.omega * c.omega / gravity;
      if (std::abs(c.wavenumber - k) > 1e-12 * k)
        throw Error("realization: deep-water dispersion violated");
    }
  }

  /// Total elevation variance, exactly sum a_j^2 / 2.
  double variance() const {
    double acc = 0.0;
    for (const auto& c : components) acc += 0.5 * c.amplitude * c.amplitude;
    return acc;
  }
};

namespace detail {

/// Uniform double in [0, 1) from raw engine output; avoids
/// std::uniform_real_distribution, whose output is implementation-defined.
inline double canonical(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Draws components from the spectrum on an equal-energy grid: the band
/// variance is split into num_components equal-area segments and each
/// component sits at its segment's median frequency, so every amplitude is
/// sqrt(2 * m0_band / N). Unequal frequency spacing avoids the periodic
/// repetition that a uniform grid would produce. Phases are independent
/// uniform on [0, 2pi), deterministic in the seed.
inline WaveRealization synthesize_realization(const WaveSpectrumParams& params,
                                              double gravity = kDefaultGravity) {
  params.validate();
  if (!(gravity > 0.0)) throw Error("synthesize: gravity must be > 0");
  const JonswapSpectrum spectrum(params);
  const int n = params.num_components;

  // Cumulative band variance on a dense grid (trapezoid), then invert the
  // area CDF at the segment medians.
  const int grid = std::max(4000, 200 * n);
  std::vector<double> w(grid + 1), cum(grid + 1, 0.0);
  const double dw = (params.omega_max - params.omega_min) / grid;
  for (int i = 0; i <= grid; ++i) w[i] = params.omega_min + i * dw;
  for (int i = 1; i <= grid; ++i)
    cum[i] = cum[i - 1] +
             0.5 * (spectrum.density(w[i - 1]) + spectrum.density(w[i])) * dw;
  const double m0 = cum[grid];
  if (!(m0 > 0.0)) throw Error("synthesize: band carries no energy");

  std::mt19937_64 rng(params.seed);
  WaveRealization real;
  real.gravity = gravity;
  real.components.reserve(static_cast<size_t>(n));
  const double amplitude = std::sqrt(2.0 * m0 / n);
  int hi = 1;
  for (int j = 0; j < n; ++j) {
    const double target = (j + 0.5) / n * m0;
    while (hi < grid && cum[hi] < target) ++hi;
    const double t = (target - cum[hi - 1]) / (cum[hi] - cum[hi - 1]);
    const double omega = w[hi - 1] + t * dw;
    WaveComponent c;
    c.amplitude = amplitude;
    c.omega = omega;
    c.phase = 2.0 * M_PI * detail::canonical(rng);
    c.wavenumber = omega * omega / gravity;
    real.components.push_back(c);
  }
  return real;
}

/// Surface elevation eta(x, t) = sum a_j cos(omega_j t - k_j x + phi_j).
/// x = 0 is the platform; the upstream measurement point sits at x = -L.
inline double elevation_at(const WaveRealization& real, double x, double t) {
  double acc = 0.0;
  for (const auto& c : real.components)
    acc += c.amplitude * std::cos(c.omega * t - c.wavenumber * x + c.phase);
  return acc;
}

/// Uniformly sampled elevation series at fixed x.
inline std::vector<double> elevation_series(const WaveRealization& real,
                                            double x, double dt,
                                            std::size_t count,
                                            double t0 = 0.0) {
  if (!(dt > 0.0)) throw Error("elevation_series: dt must be > 0");
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = elevation_at(real, x, t0 + static_cast<double>(k) * dt);
  return out;
}

}  // namespace wavefeed::waves
