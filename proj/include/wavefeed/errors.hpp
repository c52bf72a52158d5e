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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavefeed {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Matrix or channel dimensions do not conform.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Transfer-function evaluation hit a pole on the imaginary axis.
class EvaluationAtPoleError : public Error {
 public:
  EvaluationAtPoleError(double omega, const std::string& what)
      : Error(what), omega_(omega) {}
  double omega() const { return omega_; }

 private:
  double omega_;
};

/// Feedthrough is singular; the system is not biproper and cannot be
/// inverted without relative-degree augmentation.
class SingularFeedthroughError : public Error {
 public:
  using Error::Error;
};

/// Inversion would be unstable. Carries the right-half-plane zeros of the
/// original system (poles of the attempted inverse).
class NonMinimumPhaseError : public Error {
 public:
  NonMinimumPhaseError(std::vector<std::complex<double>> zeros,
                       const std::string& what)
      : Error(what), zeros_(std::move(zeros)) {}
  const std::vector<std::complex<double>>& zeros() const { return zeros_; }

 private:
  std::vector<std::complex<double>> zeros_;
};

/// A requested frequency band extends below the causal cutoff of a wave
/// prediction configuration. Carries the offending frequencies.
class CausalityViolationError : public Error {
 public:
  CausalityViolationError(std::vector<double> frequencies,
                          const std::string& what)
      : Error(what), frequencies_(std::move(frequencies)) {}
  const std::vector<double>& frequencies() const { return frequencies_; }

 private:
  std::vector<double> frequencies_;
};

/// Identification could not produce a model of the requested order.
class IdentificationError : public Error {
 public:
  using Error::Error;
};

/// A time-domain simulation left the linear model's validity region.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line = -1)
      : Error(line >= 0 ? what + " (line " + std::to_string(line) + ")"
                        : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

}  // namespace wavefeed
