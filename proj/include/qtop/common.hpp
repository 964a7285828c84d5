// Copyright 2026 The qtop developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qtop {

/// All invariant values are double-precision complex numbers.
using Scalar = std::complex<double>;

/// Input that fails a precondition of an operation (pole, bad color,
/// non-computable presentation, ...).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed textual/JSON input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A numeric consistency guard fired (non-scalar endomorphism, singular
/// matrix). Signals a bug or an illegitimate color, never bad user syntax.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Default relative comparison tolerance. Overridable with QTOP_TOL; the
/// verification suites pin their own tolerances and ignore this.
inline double default_tolerance() {
  static const double tol = [] {
    if (const char* env = std::getenv("QTOP_TOL")) {
      double v = std::strtod(env, nullptr);
      if (v > 0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

inline bool approx_equal(const Scalar& a, const Scalar& b,
                         double tol = default_tolerance()) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

/// Worker cap for the evaluation batches (CLI --threads). Results are
/// reduced in fixed chunk order, so the value never changes outputs.
inline int& worker_threads() {
  static int n = 1;
  return n;
}

/// True if z is within tol of some integer, writing it to *out.
inline bool near_integer(const Scalar& z, long* out = nullptr,
                         double tol = 1e-9) {
  double n = std::round(z.real());
  if (std::abs(z.real() - n) > tol || std::abs(z.imag()) > tol) return false;
  if (out) *out = static_cast<long>(n);
  return true;
}

}  // namespace qtop
