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
//
// Regenerates data/demo_force_coefficients.csv: synthetic wave-excitation
// coefficients for a spar-type floating turbine, produced by a known
// 9-state rational model (four oscillatory modes plus one slow real pole)
// with a 10 s anticausal lead. The known ground truth lets the
// identification tests verify recovery exactly; real hydrodynamic
// coefficient tables are ingested through the same CSV format.

#include <complex>
#include <cstdio>
#include <string>

#include "wavefeed/forces/coefficients.hpp"
#include "wavefeed/lti/frequency_response.hpp"
#include "wavefeed/lti/state_space.hpp"

namespace {

using wavefeed::lti::ComplexMatrix;
using wavefeed::lti::Matrix;
using wavefeed::lti::StateSpaceModel;
using wavefeed::lti::Vector;

// Modal truth model. Each oscillatory mode contributes the block
//   [ -zeta*wn   wd ]
//   [ -wd       -zeta*wn ],  wd = wn sqrt(1 - zeta^2),
// driven with unit input coupling; output rows mix the modes with
// magnitudes shaped like spar excitation coefficients (surge force peaks
// near the lower band edge, pitch moment slightly higher).
StateSpaceModel demo_truth_model() {
  const double wn[4] = {0.55, 0.80, 1.15, 1.55};
  const double zeta[4] = {0.12, 0.14, 0.22, 0.28};
  const double surge_mix[4] = {1.00, 0.55, 0.18, 0.035};
  const double pitch_mix[4] = {0.45, 1.00, 0.15, 0.015};
  const double real_pole = -0.25;

  Matrix a = Matrix::Zero(9, 9), b = Matrix::Zero(9, 1),
         c = Matrix::Zero(2, 9), d = Matrix::Zero(2, 1);
  for (int m = 0; m < 4; ++m) {
    const double wd = wn[m] * std::sqrt(1.0 - zeta[m] * zeta[m]);
    const int i = 2 * m;
    a(i, i) = -zeta[m] * wn[m];
    a(i, i + 1) = wd;
    a(i + 1, i) = -wd;
    a(i + 1, i + 1) = -zeta[m] * wn[m];
    b(i, 0) = 0.0;
    b(i + 1, 0) = wn[m] * wn[m];  // keeps low-frequency gain mode-independent
    c(0, i) = 2.4e5 * surge_mix[m];
    c(1, i) = 9.0e6 * pitch_mix[m];
  }
  a(8, 8) = real_pole;
  b(8, 0) = -real_pole;
  c(0, 8) = 0.9e5;
  c(1, 8) = 2.2e6;
  return StateSpaceModel(a, b, c, d, {"eta"},
                         {wavefeed::forces::kSurgeChannel,
                          wavefeed::forces::kPitchChannel});
}

}  // namespace

int main(int argc, char** argv) {
  const std::string out_path =
      argc > 1 ? argv[1] : "data/demo_force_coefficients.csv";
  const double lead = 10.0;  // anticausal lead removed by causalization
  const StateSpaceModel truth = demo_truth_model();

  // 512 grid points up to 2.2 rad/s, covering the wave band with margin
  // so band-restricted fits never fall off the grid edge.
  const Eigen::Index n = 512;
  Vector omega(n);
  for (Eigen::Index j = 0; j < n; ++j)
    omega(j) = 2.2 * static_cast<double>(j + 1) / static_cast<double>(n);
  ComplexMatrix r(n, 2);
  for (Eigen::Index j = 0; j < n; ++j) {
    const ComplexMatrix h = wavefeed::lti::evaluate(truth, omega(j));
    const std::complex<double> advance = std::polar(1.0, omega(j) * lead);
    r(j, 0) = h(0, 0) * advance;
    r(j, 1) = h(1, 0) * advance;
  }
  const wavefeed::forces::ForceCoefficientSet coeffs(
      wavefeed::lti::FrequencyResponseSet(omega, r,
                                          {wavefeed::forces::kSurgeChannel,
                                           wavefeed::forces::kPitchChannel}));

  const auto decay = coeffs.high_frequency_decay_ok();
  std::printf("decay ok: surge=%d pitch=%d\n", static_cast<int>(decay[0]),
              static_cast<int>(decay[1]));
  const double t_p = wavefeed::forces::select_causalization_delay(coeffs);
  std::printf("selected causalization delay: %.1f s\n", t_p);
  wavefeed::forces::write_coefficients_file(out_path, coeffs);
  std::printf("wrote %s (%d rows)\n", out_path.c_str(), static_cast<int>(n));
  return 0;
}
