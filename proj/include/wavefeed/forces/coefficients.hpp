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
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/io/csv.hpp"
#include "wavefeed/lti/frequency_response.hpp"

namespace wavefeed::forces {

inline constexpr const char* kSurgeChannel = "surge_force";
inline constexpr const char* kPitchChannel = "pitch_moment";

/// Non-parametric wave-excitation coefficients: complex response from unit
/// wave elevation (m) to surge force (N) and pitch moment (N m) on a
/// positive frequency grid.
class ForceCoefficientSet {
 public:
  explicit ForceCoefficientSet(lti::FrequencyResponseSet response)
      : response_(std::move(response)) {
    if (response_.num_channels() != 2 ||
        response_.channel_names()[0] != kSurgeChannel ||
        response_.channel_names()[1] != kPitchChannel)
      throw DimensionError(
          "force coefficients need exactly the channels surge_force, "
          "pitch_moment");
  }

  const lti::FrequencyResponseSet& response() const { return response_; }
  const lti::Vector& omega() const { return response_.omega(); }
  Eigen::Index size() const { return response_.size(); }

  /// True per channel when the magnitude at the top of the grid has
  /// decayed below 10% of the channel's peak magnitude. A false entry
  /// flags coefficients that are truncated before they decay, which
  /// degrades the impulse-response transform.
  std::vector<bool> high_frequency_decay_ok() const {
    std::vector<bool> ok;
    for (Eigen::Index j = 0; j < response_.num_channels(); ++j) {
      double peak = 0.0;
      for (Eigen::Index i = 0; i < response_.size(); ++i)
        peak = std::max(peak, std::abs(response_.response()(i, j)));
      const double top = std::abs(response_.response()(response_.size() - 1, j));
      ok.push_back(top < 0.1 * peak);
    }
    return ok;
  }

 private:
  lti::FrequencyResponseSet response_;
};

/// Delays both outputs by t_p seconds: every sample is multiplied by
/// exp(-i omega t_p). Magnitudes are untouched; t_p = 0 is the identity.
inline ForceCoefficientSet causalize(const ForceCoefficientSet& coeffs,
                                     double t_p) {
  if (t_p < 0.0) throw Error("causalize: t_p must be >= 0");
  return ForceCoefficientSet(coeffs.response().phase_shifted(
      [t_p](double w) { return std::polar(1.0, -w * t_p); }));
}

namespace detail {

/// Impulse responses of both outputs via Hermitian-extension inverse FFT
/// on a uniform grid resampled from the coefficient grid (zero beyond it).
/// Returns per-output time series over one full transform circle: index n
/// holds time n dt for n < N/2 and (n - N) dt (negative) for n >= N/2.
struct ImpulseCircle {
  double dt = 0.0;
  std::vector<std::vector<double>> outputs;  // [channel][n], size N
};

inline ImpulseCircle impulse_circle(const ForceCoefficientSet& coeffs,
                                    double omega_max, std::size_t half_points) {
  const std::size_t nf = 2 * half_points;
  const double dw = omega_max / static_cast<double>(half_points);
  const double dt = 2.0 * M_PI / (static_cast<double>(nf) * dw);
  ImpulseCircle circle;
  circle.dt = dt;
  Eigen::FFT<double> fft;
  for (Eigen::Index j = 0; j < 2; ++j) {
    // Resample one channel onto the uniform grid; hold the first value
    // toward DC, zero above the coefficient grid.
    lti::Vector uniform(static_cast<Eigen::Index>(half_points));
    for (std::size_t k = 0; k < half_points; ++k)
      uniform(static_cast<Eigen::Index>(k)) = static_cast<double>(k) * dw;
    lti::ComplexVector samples = lti::interp_complex(
        coeffs.omega(), coeffs.response().response().col(j), uniform);
    const double grid_top = coeffs.omega()(coeffs.size() - 1);
    // Raised-cosine rolloff over the top 15% of the occupied grid keeps
    // the spectral cut from ringing across the whole impulse response.
    const double w_top = std::min(grid_top, omega_max);
    const double w_roll = 0.85 * w_top;
    for (std::size_t k = 0; k < half_points; ++k) {
      const double w = uniform(static_cast<Eigen::Index>(k));
      if (w > grid_top) {
        samples(static_cast<Eigen::Index>(k)) = 0.0;
      } else if (w > w_roll) {
        samples(static_cast<Eigen::Index>(k)) *=
            0.5 * (1.0 + std::cos(M_PI * (w - w_roll) / (w_top - w_roll)));
      }
    }

    std::vector<std::complex<double>> spec(nf);
    spec[0] = std::complex<double>(samples(0).real(), 0.0);
    spec[half_points] = 0.0;  // Nyquist, beyond the coefficient grid
    for (std::size_t k = 1; k < half_points; ++k) {
      spec[k] = samples(static_cast<Eigen::Index>(k));
      spec[nf - k] = std::conj(spec[k]);
    }
    std::vector<double> impulse(nf);
    fft.inv(impulse, spec);
    circle.outputs.push_back(std::move(impulse));
  }
  return circle;
}

/// Fraction of impulse-response energy at strictly negative times,
/// per output channel.
inline std::vector<double> pre_zero_energy_fraction(
    const ImpulseCircle& circle) {
  std::vector<double> fractions;
  for (const auto& h : circle.outputs) {
    const std::size_t nf = h.size();
    double total = 0.0, pre = 0.0;
    for (std::size_t n = 0; n < nf; ++n) {
      const double e = h[n] * h[n];
      total += e;
      if (n >= nf / 2) pre += e;
    }
    fractions.push_back(total > 0.0 ? pre / total : 0.0);
  }
  return fractions;
}

}  // namespace detail

/// Fraction of impulse-response energy arriving before the elevation
/// impulse, per output. Uses a 0.5 s time grid (transform padded to
/// 2 pi rad/s) so small delays resolve.
inline std::vector<double> pre_zero_energy(const ForceCoefficientSet& coeffs) {
  return detail::pre_zero_energy_fraction(
      detail::impulse_circle(coeffs, 2.0 * M_PI, 8192));
}

/// Smallest delay on a 0.5 s grid for which the causalized coefficients
/// have pre-zero impulse energy at or below the tolerance in both
/// outputs. Caps the search at 60 s.
inline double select_causalization_delay(const ForceCoefficientSet& coeffs,
                                         double energy_tolerance = 0.01) {
  if (!(energy_tolerance > 0.0) || !(energy_tolerance < 1.0))
    throw Error("select_causalization_delay: tolerance must be in (0, 1)");
  for (double t_p = 0.0; t_p <= 60.0 + 1e-9; t_p += 0.5) {
    const auto fractions = pre_zero_energy(causalize(coeffs, t_p));
    if (std::all_of(fractions.begin(), fractions.end(),
                    [&](double f) { return f <= energy_tolerance; }))
      return t_p;
  }
  throw IdentificationError(
      "no delay up to 60 s brings pre-zero impulse energy below tolerance");
}

/// Reads coefficients from CSV with columns omega_rad_s, Fx_re, Fx_im,
/// My_re, My_im (header mandatory, SI units per meter of elevation).
inline ForceCoefficientSet read_coefficients_csv(std::istream& in,
                                                 const std::string& what) {
  const io::CsvTable table = io::read_csv(in, what);
  const std::size_t c_w = table.column_index("omega_rad_s");
  const std::size_t c_fr = table.column_index("Fx_re");
  const std::size_t c_fi = table.column_index("Fx_im");
  const std::size_t c_mr = table.column_index("My_re");
  const std::size_t c_mi = table.column_index("My_im");
  const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
  if (n < 2) throw ParseError(what + ": need at least 2 coefficient rows");
  lti::Vector omega(n);
  lti::ComplexMatrix r(n, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    omega(i) = row[c_w];
    r(i, 0) = std::complex<double>(row[c_fr], row[c_fi]);
    r(i, 1) = std::complex<double>(row[c_mr], row[c_mi]);
  }
  return ForceCoefficientSet(lti::FrequencyResponseSet(
      std::move(omega), std::move(r), {kSurgeChannel, kPitchChannel}));
}

inline ForceCoefficientSet read_coefficients_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_coefficients_csv(in, path);
}

inline void write_coefficients_csv(std::ostream& out,
                                   const ForceCoefficientSet& coeffs) {
  io::CsvTable table;
  table.header = {"omega_rad_s", "Fx_re", "Fx_im", "My_re", "My_im"};
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    const auto& r = coeffs.response().response();
    table.rows.push_back({coeffs.omega()(i), r(i, 0).real(), r(i, 0).imag(),
                          r(i, 1).real(), r(i, 1).imag()});
  }
  io::write_csv(out, table);
}

inline void write_coefficients_file(const std::string& path,
                                    const ForceCoefficientSet& coeffs) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  write_coefficients_csv(out, coeffs);
}

}  // namespace wavefeed::forces
