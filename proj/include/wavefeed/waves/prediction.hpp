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

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/lti/frequency_response.hpp"
#include "wavefeed/waves/realization.hpp"

namespace wavefeed::waves {

/// Geometry and timing of upstream wave measurement: the sensor sits a
/// distance L up-wave of the platform and the elevation at the platform is
/// predicted t_p seconds ahead.
struct PredictionConfig {
  double upstream_distance = 313.0;  // L (m)
  double prediction_delay = 10.0;    // t_p (s)
  double gravity = kDefaultGravity;  // m/s^2

  void validate() const {
    if (!(upstream_distance > 0.0))
      throw Error("prediction config: L must be > 0");
    if (!(prediction_delay > 0.0))
      throw Error("prediction config: t_p must be > 0");
    if (!(gravity > 0.0)) throw Error("prediction config: g must be > 0");
  }
};

/// Phase of the upstream-to-predicted-platform transfer at omega:
///   arg H_p(omega) = omega * (t_p - omega L / g).
/// Composition of the deep-water spatial phase lag omega^2 L / g and the
/// anticipation advance omega t_p. |H_p| = 1 for all omega.
inline double prediction_phase(const PredictionConfig& cfg, double omega) {
  return omega *
         (cfg.prediction_delay - omega * cfg.upstream_distance / cfg.gravity);
}

/// Frequency below which prediction would need future upstream samples:
/// the per-component phase delay omega L/g - t_p is negative for
/// omega < g t_p / L.
inline double causal_cutoff(const PredictionConfig& cfg) {
  return cfg.gravity * cfg.prediction_delay / cfg.upstream_distance;
}

/// Smallest upstream distance for which every period up to T_bar remains
/// causal with prediction delay t_p: L_min = g T_bar t_p / (2 pi).
inline double min_measurement_distance(double t_bar, double t_p, double g) {
  if (!(t_bar > 0.0) || !(g > 0.0) || t_p < 0.0)
    throw Error("min_measurement_distance: T_bar, g must be > 0, t_p >= 0");
  return g * t_bar * t_p / (2.0 * M_PI);
}

/// Throws when [lo, hi] extends below the causal cutoff, listing a sample
/// of offending frequencies.
inline void require_causal_band(const PredictionConfig& cfg, double lo,
                                double hi) {
  cfg.validate();
  if (!(lo > 0.0) || !(hi > lo))
    throw Error("require_causal_band: need 0 < lo < hi");
  const double wc = causal_cutoff(cfg);
  if (lo >= wc) return;
  std::vector<double> offending;
  const double top = std::min(hi, wc);
  for (int i = 0; i < 5; ++i)
    offending.push_back(lo + (top - lo) * i / 5.0);
  throw CausalityViolationError(
      offending, "prediction not causal below " + std::to_string(wc) +
                     " rad/s; requested band starts at " + std::to_string(lo) +
                     " rad/s (increase the upstream distance or reduce the "
                     "prediction delay)");
}

struct PredictionFilterResult {
  lti::FrequencyResponseSet response;
  /// Grid frequencies below the causal cutoff, if any.
  std::vector<double> noncausal_frequencies;
};

/// Samples the unit-magnitude prediction transfer on a frequency grid.
/// Never throws for noncausal points; they are evaluated (the ideal
/// response is still defined) and reported in noncausal_frequencies.
inline PredictionFilterResult prediction_filter(const PredictionConfig& cfg,
                                                const lti::Vector& grid) {
  cfg.validate();
  lti::ComplexMatrix r(grid.size(), 1);
  std::vector<double> flagged;
  const double wc = causal_cutoff(cfg);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    r(i, 0) = std::polar(1.0, prediction_phase(cfg, grid(i)));
    if (grid(i) < wc) flagged.push_back(grid(i));
  }
  return {lti::FrequencyResponseSet(grid, std::move(r), {"eta_pred"}),
          std::move(flagged)};
}

namespace detail {

/// Raised-cosine band mask: 1 on [lo, hi], cosine skirts of the given
/// widths outside, 0 beyond.
inline double band_mask(double omega, double lo, double hi, double delta_lo,
                        double delta_hi) {
  if (omega <= lo - delta_lo || omega >= hi + delta_hi) return 0.0;
  if (omega < lo)
    return 0.5 * (1.0 + std::cos(M_PI * (lo - omega) / delta_lo));
  if (omega > hi)
    return 0.5 * (1.0 + std::cos(M_PI * (omega - hi) / delta_hi));
  return 1.0;
}

/// Lower skirt width, capped so the skirt stays above the region whose
/// kernel content sits at negative time (group delay changes sign at half
/// the causal cutoff); content below there cannot be realized causally and
/// would turn into in-band ripple when truncated.
inline double skirt_lo(const PredictionConfig& cfg, double lo, double hi) {
  return std::min(0.15 * (hi - lo), lo - 0.55 * causal_cutoff(cfg));
}

inline double skirt_hi(double lo, double hi) { return 0.15 * (hi - lo); }

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// Time span the filter's impulse response needs on each side of a block:
/// the advance t_p plus the slowest in-skirt group delay, plus ringing
/// room for the mask transitions.
inline double kernel_halfspan(const PredictionConfig& cfg, double lo,
                              double hi) {
  const double top = hi + skirt_hi(lo, hi);
  const double group_delay = 2.0 * top * cfg.upstream_distance / cfg.gravity;
  return cfg.prediction_delay + group_delay + 80.0;
}

}  // namespace detail

/// Samples at the start (and symmetrically at the end) of a
/// predict_elevation output that are edge-affected: the filter memory
/// spans the slowest in-band group delay, which exceeds the nominal
/// 2 T_bar spectral transient for the highest band frequencies.
inline std::size_t edge_guard_samples(const PredictionConfig& cfg, double dt,
                                      double band_lo = 2.0 * M_PI / 20.0,
                                      double band_hi = 2.0 * M_PI / 3.0) {
  if (!(dt > 0.0)) throw Error("edge_guard_samples: dt must be > 0");
  return static_cast<std::size_t>(
      std::ceil(detail::kernel_halfspan(cfg, band_lo, band_hi) / dt));
}

/// Predicts the platform elevation t_p seconds ahead from a uniformly
/// sampled upstream series, by Hann-windowed 50%-overlap-add block FFT
/// filtering with the ideal transfer restricted to [band_lo, band_hi]
/// (raised-cosine skirts outside). Output sample k estimates
/// eta_0(t_k + t_p). The first 2 T_bar seconds and the trailing
/// kernel span are edge-affected.
///
/// Throws CausalityViolationError when the band extends below the causal
/// cutoff of cfg.
inline std::vector<double> predict_elevation(const std::vector<double>& series,
                                             double dt,
                                             const PredictionConfig& cfg,
                                             double band_lo = 2.0 * M_PI / 20.0,
                                             double band_hi = 2.0 * M_PI / 3.0) {
  if (!(dt > 0.0)) throw Error("predict_elevation: dt must be > 0");
  require_causal_band(cfg, band_lo, band_hi);
  const std::size_t n = series.size();
  if (n == 0) return {};

  // Block geometry: Hann window of length B at hop B/2 sums to one; the
  // FFT buffer adds centered zero-padding covering the kernel span so the
  // circular convolution never wraps block content.
  const std::size_t pad = static_cast<std::size_t>(
      std::ceil(detail::kernel_halfspan(cfg, band_lo, band_hi) / dt));
  const std::size_t b =
      std::min(detail::next_pow2(static_cast<std::size_t>(
                   std::ceil(200.0 / dt))),
               std::max<std::size_t>(64, detail::next_pow2(n)));
  const std::size_t f = detail::next_pow2(b + 2 * pad);
  const std::size_t offset = (f - b) / 2;

  std::vector<double> window(b);
  for (std::size_t i = 0; i < b; ++i)
    window[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(i) /
                                      static_cast<double>(b)));

  // Transfer on the FFT bin grid.
  const double dlo = detail::skirt_lo(cfg, band_lo, band_hi);
  const double dhi = detail::skirt_hi(band_lo, band_hi);
  std::vector<std::complex<double>> h(f / 2 + 1);
  for (std::size_t k = 0; k <= f / 2; ++k) {
    const double omega =
        2.0 * M_PI * static_cast<double>(k) / (static_cast<double>(f) * dt);
    h[k] = std::polar(detail::band_mask(omega, band_lo, band_hi, dlo, dhi),
                      prediction_phase(cfg, omega));
  }

  Eigen::FFT<double> fft;
  std::vector<double> out(n, 0.0), buf(f);
  std::vector<std::complex<double>> spec;
  const std::ptrdiff_t hop = static_cast<std::ptrdiff_t>(b / 2);
  const std::ptrdiff_t sn = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t start = -hop; start < sn; start += hop) {
    std::fill(buf.begin(), buf.end(), 0.0);
    for (std::size_t i = 0; i < b; ++i) {
      const std::ptrdiff_t src = start + static_cast<std::ptrdiff_t>(i);
      if (src >= 0 && src < sn)
        buf[offset + i] = series[static_cast<std::size_t>(src)] * window[i];
    }
    fft.fwd(spec, buf);
    for (std::size_t k = 0; k <= f / 2; ++k) {
      spec[k] *= h[k];
      if (k > 0 && k < f / 2) spec[f - k] = std::conj(spec[k]);
    }
    fft.inv(buf, spec);
    for (std::size_t i = 0; i < f; ++i) {
      const std::ptrdiff_t dst = start + static_cast<std::ptrdiff_t>(i) -
                                 static_cast<std::ptrdiff_t>(offset);
      if (dst >= 0 && dst < sn) out[static_cast<std::size_t>(dst)] += buf[i];
    }
  }
  return out;
}

/// Causal FIR taps realizing the band-limited prediction transfer for
/// streaming use: y[k] = sum_j taps[j] x[k - j]. Starts from the ideal
/// impulse response and alternates projections between causal support and
/// the exact in-band response, letting the out-of-band (don't-care)
/// response absorb the causality constraint; requires a causal band.
inline std::vector<double> causal_fir_taps(const PredictionConfig& cfg,
                                           double dt,
                                           double band_lo = 2.0 * M_PI / 20.0,
                                           double band_hi = 2.0 * M_PI / 3.0,
                                           int iterations = 60) {
  if (!(dt > 0.0)) throw Error("causal_fir_taps: dt must be > 0");
  require_causal_band(cfg, band_lo, band_hi);
  const double span = detail::kernel_halfspan(cfg, band_lo, band_hi);
  const std::size_t f =
      detail::next_pow2(static_cast<std::size_t>(std::ceil(2.0 * span / dt)));
  const double dlo = detail::skirt_lo(cfg, band_lo, band_hi);
  const double dhi = detail::skirt_hi(band_lo, band_hi);
  std::vector<std::complex<double>> ideal(f / 2 + 1);
  std::vector<bool> in_band(f / 2 + 1, false);
  std::vector<std::complex<double>> spec(f);
  for (std::size_t k = 0; k <= f / 2; ++k) {
    const double omega =
        2.0 * M_PI * static_cast<double>(k) / (static_cast<double>(f) * dt);
    ideal[k] =
        std::polar(detail::band_mask(omega, band_lo, band_hi, dlo, dhi),
                   prediction_phase(cfg, omega));
    in_band[k] = omega >= band_lo && omega <= band_hi;
    spec[k] = ideal[k];
    if (k > 0 && k < f / 2) spec[f - k] = std::conj(spec[k]);
  }
  Eigen::FFT<double> fft;
  std::vector<double> impulse(f);
  // impulse[j] is the response at time +j dt for j < f/2 and at
  // (j - f) dt for j >= f/2; the causal projection zeroes the second half.
  for (int it = 0; it < iterations; ++it) {
    fft.inv(impulse, spec);
    std::fill(impulse.begin() + static_cast<std::ptrdiff_t>(f / 2),
              impulse.end(), 0.0);
    fft.fwd(spec, impulse);
    for (std::size_t k = 0; k <= f / 2; ++k) {
      if (in_band[k]) spec[k] = ideal[k];
      if (k > 0 && k < f / 2) spec[f - k] = std::conj(spec[k]);
    }
  }
  fft.inv(impulse, spec);
  return std::vector<double>(
      impulse.begin(), impulse.begin() + static_cast<std::ptrdiff_t>(f / 2));
}

}  // namespace wavefeed::waves
