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

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "wavefeed/errors.hpp"
#include "wavefeed/forces/coefficients.hpp"
#include "wavefeed/lti/frequency_response.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace wavefeed::forces {

/// Band-restricted agreement between a parametric model and coefficient
/// data. fit_percent follows the normalized-error convention
///   100 (1 - ||G_model - G_data|| / ||G_data - mean(G_data)||)
/// per output; 100 is exact, 0 no better than the mean, negative worse.
/// fpe is Akaike's final prediction error V (1 + d/N) / (1 - d/N) over all
/// outputs jointly (V mean squared residual, d parameter count, N sample
/// count). Reported separately because they measure different things.
struct FitReport {
  std::vector<double> fit_percent;
  double fpe = 0.0;
};

/// Parametric wave-excitation model: elevation to surge force and pitch
/// moment, identified from causalized coefficients.
struct PwemModel {
  lti::StateSpaceModel model;
  double t_p = 0.0;
  FitReport fit_report;
};

/// Fit metrics of a state-space model against (already causalized)
/// coefficient samples restricted to [band_lo, band_hi].
inline FitReport fit_metrics_causalized(const lti::StateSpaceModel& model,
                                        const ForceCoefficientSet& causalized,
                                        double band_lo, double band_hi,
                                        Eigen::Index order) {
  const auto band = causalized.response().band(band_lo, band_hi);
  const auto sampled = lti::sample_response(model, band.omega());
  const Eigen::Index n = band.size();
  FitReport report;
  double joint_sq = 0.0;
  for (Eigen::Index j = 0; j < 2; ++j) {
    const lti::ComplexVector data = band.response().col(j);
    const lti::ComplexVector got = sampled.response().col(j);
    const std::complex<double> mean = data.mean();
    double num = 0.0, den = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      num += std::norm(got(i) - data(i));
      den += std::norm(data(i) - mean);
      joint_sq += std::norm(got(i) - data(i));
    }
    report.fit_percent.push_back(
        100.0 * (1.0 - std::sqrt(num) / std::sqrt(den)));
  }
  // d counts the free parameters of a 1-input 2-output realization of the
  // identified order; N counts complex band samples across outputs.
  const double d = static_cast<double>(order) * 3.0 + 2.0;
  const double samples = static_cast<double>(2 * n);
  if (samples <= d)
    throw IdentificationError("too few band samples for the FPE estimate");
  const double v = joint_sq / samples;
  report.fpe = v * (1.0 + d / samples) / (1.0 - d / samples);
  return report;
}

/// Fit metrics of a PWEM against raw coefficients: the data is causalized
/// with the model's own delay first, so recomputing reproduces the stored
/// fit report.
inline FitReport fit_metrics(const PwemModel& pwem,
                             const ForceCoefficientSet& coeffs,
                             double band_lo = 2.0 * M_PI / 20.0,
                             double band_hi = 2.0 * M_PI / 3.0) {
  return fit_metrics_causalized(pwem.model, causalize(coeffs, pwem.t_p),
                                band_lo, band_hi, pwem.model.order());
}

namespace detail {

/// Continuous-time poles of a sampled-data realization: eigenvalue
/// logarithm over dt. Negative-real or vanishing discrete eigenvalues are
/// Nyquist-edge artifacts; only their decay rate is kept (the relaxation
/// pass relocates them anyway).
inline lti::ComplexVector continuous_poles(const lti::Matrix& ad, double dt) {
  Eigen::ComplexEigenSolver<lti::ComplexMatrix> es(
      ad.cast<std::complex<double>>());
  if (es.info() != Eigen::Success)
    throw IdentificationError("eigendecomposition of the realization failed");
  lti::ComplexVector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    std::complex<double> ld = lam(i);
    if (ld.real() < 0.0 && std::abs(ld.imag()) <= 1e-12 * std::abs(ld))
      ld = -ld;
    if (!(std::abs(ld) > 1e-12)) ld = 1e-12;
    lam(i) = std::log(ld) / dt;
  }
  return lam;
}

/// Pole set split into real poles and one representative (positive
/// imaginary part) per complex-conjugate pair, all forced stable.
struct PoleBasis {
  std::vector<double> real_poles;
  std::vector<std::complex<double>> pair_poles;
  Eigen::Index order() const {
    return static_cast<Eigen::Index>(real_poles.size()) +
           2 * static_cast<Eigen::Index>(pair_poles.size());
  }
};

inline PoleBasis classify_poles(const lti::ComplexVector& lam, double margin) {
  PoleBasis basis;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    std::complex<double> p = lam(i);
    const double re = p.real() > -margin
                          ? -std::max(std::abs(p.real()), margin)
                          : p.real();
    if (std::abs(p.imag()) <= 1e-9 * std::max(1.0, std::abs(p))) {
      basis.real_poles.push_back(re);
    } else if (p.imag() > 0.0) {
      basis.pair_poles.emplace_back(re, p.imag());
    }
  }
  std::sort(basis.real_poles.begin(), basis.real_poles.end());
  std::sort(basis.pair_poles.begin(), basis.pair_poles.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              return x.imag() != y.imag() ? x.imag() < y.imag()
                                          : x.real() < y.real();
            });
  return basis;
}

/// Real block-diagonal pole matrix and its structural input vector:
/// a real pole contributes the 1x1 block [p] with input weight 1, a
/// conjugate pair the 2x2 block [[re, im], [-im, re]] with input [2, 0].
inline void pole_blocks(const PoleBasis& basis, lti::Matrix* a,
                        lti::Vector* b) {
  const Eigen::Index n = basis.order();
  *a = lti::Matrix::Zero(n, n);
  *b = lti::Vector::Zero(n);
  Eigen::Index at = 0;
  for (const double p : basis.real_poles) {
    (*a)(at, at) = p;
    (*b)(at) = 1.0;
    ++at;
  }
  for (const auto& p : basis.pair_poles) {
    (*a)(at, at) = p.real();
    (*a)(at, at + 1) = p.imag();
    (*a)(at + 1, at) = -p.imag();
    (*a)(at + 1, at + 1) = p.real();
    (*b)(at) = 2.0;
    at += 2;
  }
}

/// Partial-fraction basis row at s = i omega for the realified pole set:
/// one column per real pole, two (real and imaginary residue parts) per
/// conjugate pair. Matches the pole_blocks realization exactly.
inline lti::ComplexVector basis_row(const PoleBasis& basis, double omega) {
  lti::ComplexVector row(basis.order());
  const std::complex<double> s(0.0, omega);
  Eigen::Index at = 0;
  for (const double p : basis.real_poles) row(at++) = 1.0 / (s - p);
  for (const auto& p : basis.pair_poles) {
    const std::complex<double> f1 = 1.0 / (s - p);
    const std::complex<double> f2 = 1.0 / (s - std::conj(p));
    row(at++) = f1 + f2;
    row(at++) = std::complex<double>(0.0, 1.0) * (f1 - f2);
  }
  return row;
}

/// Refines a pole set against band samples by relaxed rational fitting
/// (vector fitting): each pass solves one linear least-squares problem
/// for channel residues plus a shared denominator perturbation, then
/// relocates the poles to the perturbation's zeros. Exact rational data
/// of matching order is reproduced to numerical precision; the sampled
/// realization from the impulse-response stage provides the start.
inline PoleBasis relax_poles(PoleBasis basis, const lti::Vector& omega,
                             const lti::ComplexMatrix& h, double margin,
                             int max_passes = 20) {
  const Eigen::Index nb = omega.size(), nch = h.cols();
  for (int pass = 0; pass < max_passes; ++pass) {
    const Eigen::Index n = basis.order();
    // Unknowns: per channel n residues plus a constant term, then n
    // shared denominator coefficients.
    const Eigen::Index cols = nch * (n + 1) + n;
    lti::Matrix lhs = lti::Matrix::Zero(2 * nb * nch, cols);
    lti::Vector rhs(2 * nb * nch);
    for (Eigen::Index i = 0; i < nb; ++i) {
      const lti::ComplexVector row = basis_row(basis, omega(i));
      for (Eigen::Index ch = 0; ch < nch; ++ch) {
        const Eigen::Index r = 2 * (i * nch + ch);
        const Eigen::Index c0 = ch * (n + 1);
        for (Eigen::Index k = 0; k < n; ++k) {
          lhs(r, c0 + k) = row(k).real();
          lhs(r + 1, c0 + k) = row(k).imag();
          const std::complex<double> hw = -h(i, ch) * row(k);
          lhs(r, nch * (n + 1) + k) = hw.real();
          lhs(r + 1, nch * (n + 1) + k) = hw.imag();
        }
        lhs(r, c0 + n) = 1.0;
        rhs(r) = h(i, ch).real();
        rhs(r + 1) = h(i, ch).imag();
      }
    }
    const lti::Vector sol =
        lhs.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    const lti::Vector sigma = sol.tail(n);

    // New poles are the zeros of 1 + sigma(s): eigenvalues of the pole
    // matrix rank-one-corrected by the structural input vector.
    lti::Matrix ap;
    lti::Vector bp;
    pole_blocks(basis, &ap, &bp);
    const lti::Matrix corrected = ap - bp * sigma.transpose();
    Eigen::ComplexEigenSolver<lti::ComplexMatrix> es(
        corrected.cast<std::complex<double>>());
    if (es.info() != Eigen::Success)
      throw IdentificationError("pole relaxation failed to converge");
    const PoleBasis next = classify_poles(es.eigenvalues(), margin);
    if (next.order() != basis.order()) return basis;  // keep the last sane set

    // Convergence is only measurable while the real/pair split is stable.
    if (next.real_poles.size() == basis.real_poles.size()) {
      double move = 0.0, size = 0.0;
      for (std::size_t k = 0; k < next.real_poles.size(); ++k) {
        move = std::max(move,
                        std::abs(next.real_poles[k] - basis.real_poles[k]));
        size = std::max(size, std::abs(next.real_poles[k]));
      }
      for (std::size_t k = 0; k < next.pair_poles.size(); ++k) {
        move = std::max(move,
                        std::abs(next.pair_poles[k] - basis.pair_poles[k]));
        size = std::max(size, std::abs(next.pair_poles[k]));
      }
      basis = next;
      if (move < 1e-10 * std::max(size, 1.0)) break;
    } else {
      basis = next;
    }
  }
  return basis;
}

}  // namespace detail

/// Identifies a stable continuous-time state-space model (1 input:
/// elevation, 2 outputs: surge force, pitch moment) of the given order
/// from force coefficients, after delaying them by t_p seconds.
///
/// Pipeline: causalize, resample onto a uniform 0 to 2 rad/s grid (2048
/// points), Hermitian-extension inverse FFT to an impulse response,
/// Ho-Kalman eigensystem realization from the Hankel matrix, conversion
/// to continuous time by eigenvalue logarithm with reflection of any
/// right-half-plane pole, pole refinement by relaxed rational fitting on
/// [band_lo, band_hi], and a final least-squares residue fit there.
inline PwemModel identify_pwem(const ForceCoefficientSet& coeffs, double t_p,
                               Eigen::Index order,
                               double band_lo = 2.0 * M_PI / 20.0,
                               double band_hi = 2.0 * M_PI / 3.0) {
  if (order < 1) throw IdentificationError("identify_pwem: order must be >= 1");
  if (!(band_lo > 0.0) || !(band_hi > band_lo))
    throw Error("identify_pwem: need 0 < band_lo < band_hi");
  if (band_lo < coeffs.omega()(0) ||
      band_hi > coeffs.omega()(coeffs.size() - 1))
    throw Error("identify_pwem: band outside the coefficient grid");
  if (t_p < 0.0) throw Error("identify_pwem: t_p must be >= 0");

  const ForceCoefficientSet causal = causalize(coeffs, t_p);

  // Per-channel RMS normalization keeps the force channel from being
  // drowned out by the moment channel (their scales differ by an order
  // of magnitude or more) in the subspace and least-squares steps.
  lti::Vector scale(2);
  for (Eigen::Index j = 0; j < 2; ++j) {
    scale(j) = std::sqrt(causal.response().response().col(j).squaredNorm() /
                         static_cast<double>(causal.size()));
    if (!(scale(j) > 0.0))
      throw IdentificationError(
          "identify_pwem: a coefficient channel is identically zero");
  }
  lti::ComplexMatrix normalized = causal.response().response();
  normalized.col(0) /= scale(0);
  normalized.col(1) /= scale(1);
  const ForceCoefficientSet scaled(lti::FrequencyResponseSet(
      causal.omega(), std::move(normalized), {kSurgeChannel, kPitchChannel}));

  const auto circle = detail::impulse_circle(scaled, 2.0, 2048);
  const double dt = circle.dt;

  // Block-Hankel matrices of the impulse samples (2x1 blocks).
  const Eigen::Index rows = 400, cols = 400;
  if (order > std::min(rows, cols))
    throw IdentificationError("identify_pwem: order too large for the data");
  lti::Matrix h0(2 * rows, cols), h1(2 * rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index ch = 0; ch < 2; ++ch) {
        h0(2 * i + ch, j) =
            circle.outputs[static_cast<std::size_t>(ch)]
                          [static_cast<std::size_t>(i + j + 1)];
        h1(2 * i + ch, j) =
            circle.outputs[static_cast<std::size_t>(ch)]
                          [static_cast<std::size_t>(i + j + 2)];
      }

  Eigen::BDCSVD<lti::Matrix> svd(h0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const lti::Vector& sv = svd.singularValues();
  // Genuine modes sit orders of magnitude above this; singular values
  // below it are transform noise (spectral-cut ringing), not dynamics.
  if (sv(order - 1) < 1e-6 * sv(0))
    throw IdentificationError(
        "Hankel matrix is numerically rank-deficient at the requested "
        "order; use a lower order");

  const lti::Vector s_sqrt = sv.head(order).cwiseSqrt();
  const lti::Matrix u1 = svd.matrixU().leftCols(order);
  const lti::Matrix v1 = svd.matrixV().leftCols(order);
  const lti::Matrix ad = s_sqrt.cwiseInverse().asDiagonal() *
                         (u1.transpose() * h1 * v1) *
                         s_sqrt.cwiseInverse().asDiagonal();
  // Stability projection happens inside the pole classification; the
  // relaxation pass then refines the pole estimates against the exact
  // band samples (the impulse-response route alone carries bias from the
  // spectral cut at the top of the transform grid).
  const double margin = lti::kStabilityTol * 10.0;
  detail::PoleBasis basis =
      detail::classify_poles(detail::continuous_poles(ad, dt), margin);
  if (basis.order() != order)
    throw IdentificationError(
        "realization produced an inconsistent pole set; try a different "
        "order");
  const auto band = scaled.response().band(band_lo, band_hi);
  basis = detail::relax_poles(basis, band.omega(), band.response(), margin);

  // Final least-squares residue fit on the band pins the response where
  // the fit is scored: per channel, n residues plus a constant term.
  lti::Matrix a;
  lti::Vector b;
  detail::pole_blocks(basis, &a, &b);
  const Eigen::Index nb = band.size();
  lti::Matrix lhs(2 * nb, order + 1);
  lti::Matrix rhs(2 * nb, 2);
  for (Eigen::Index i = 0; i < nb; ++i) {
    const lti::ComplexVector row = detail::basis_row(basis, band.omega()(i));
    for (Eigen::Index k = 0; k < order; ++k) {
      lhs(2 * i, k) = row(k).real();
      lhs(2 * i + 1, k) = row(k).imag();
    }
    lhs(2 * i, order) = 1.0;
    lhs(2 * i + 1, order) = 0.0;
    for (Eigen::Index ch = 0; ch < 2; ++ch) {
      rhs(2 * i, ch) = band.response()(i, ch).real();
      rhs(2 * i + 1, ch) = band.response()(i, ch).imag();
    }
  }
  const lti::Matrix sol =
      lhs.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);

  // Output rows carry the residues, rescaled back to physical units.
  lti::Matrix c_out(2, order), d_out(2, 1);
  for (Eigen::Index ch = 0; ch < 2; ++ch) {
    c_out.row(ch) = scale(ch) * sol.col(ch).head(order).transpose();
    d_out(ch, 0) = scale(ch) * sol(order, ch);
  }

  lti::StateSpaceModel model(a, b, c_out, d_out, {"eta"},
                             {kSurgeChannel, kPitchChannel});
  PwemModel pwem{std::move(model), t_p, {}};
  pwem.fit_report =
      fit_metrics_causalized(pwem.model, causal, band_lo, band_hi, order);
  return pwem;
}

}  // namespace wavefeed::forces
