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

/**
 * Root-of-unity arithmetic at q = exp(iπ/r): q-numbers, the modified
 * dimension d(α) with its residues, the index set H_r, Kirby colors, and
 * the surgery normalization constants Δ± / Δ^SO(3)±.
 */

#include <sstream>
#include <vector>

#include "qtop/common.hpp"

namespace qtop {

/**
 * The root-of-unity parameters: an integer order r ≥ 2 and q = exp(iπ/r).
 *
 * Complex powers q^x are always evaluated as exp(x·iπ/r), never as a power
 * of the stored q, so that non-integer exponents are well defined.
 */
struct QParams {
  int r;
  Scalar q;

  explicit QParams(int order) : r(order), q(std::polar(1.0, M_PI / order)) {
    if (order < 2) throw ContractError("QParams: order r must be >= 2");
  }

  /// q^x = exp(x·iπ/r) for complex x.
  Scalar qpow(const Scalar& x) const {
    return std::exp(Scalar(0, M_PI / r) * x);
  }

  /// The 3-manifold operations need r not divisible by 4.
  void require_not_4z(const char* what) const {
    if (r % 4 == 0)
      throw ContractError(std::string(what) + ": r in 4Z is not supported (r=" +
                          std::to_string(r) + ")");
  }
};

/// {x} = q^x − q^{−x} = 2i·sin(πx/r).
inline Scalar qnum(const QParams& p, const Scalar& x) {
  return p.qpow(x) - p.qpow(-x);
}

/// [n] = {n}/{1}.
inline Scalar qbracket(const QParams& p, const Scalar& n) {
  return qnum(p, n) / qnum(p, 1);
}

/// True if α lies in X_r = Z ∖ rZ, the pole set of the modified dimension.
inline bool in_xr(const QParams& p, const Scalar& alpha, double tol = 1e-9) {
  long n;
  return near_integer(alpha, &n, tol) && n % p.r != 0;
}

/**
 * The modified dimension d(α) = (−1)^{r−1}·r·{α}/{rα}, defined away from
 * X_r = Z ∖ rZ. At multiples of r deg the numerator and denominator vanish
 * together and the continuous extension is returned.
 */
inline Scalar mdim(const QParams& p, const Scalar& alpha) {
  long n;
  if (near_integer(alpha, &n)) {
    if (n % p.r != 0) {
      std::ostringstream os;
      os << "mdim: pole at alpha = " << n << " (integer not divisible by r=" << p.r
         << ")";
      throw ContractError(os.str());
    }
    // alpha = r*s exactly: {α}/{rα} -> (−1)^{s(r−1)}/r by l'Hopital.
    long s = n / p.r;
    double sign = (s * (p.r - 1)) % 2 == 0 ? 1.0 : -1.0;
    return (p.r % 2 == 0 ? -1.0 : 1.0) * sign;
  }
  double lead = p.r % 2 == 0 ? -1.0 : 1.0;  // (−1)^{r−1}
  return lead * static_cast<double>(p.r) * qnum(p, alpha) / qnum(p, Scalar(p.r) * alpha);
}

/// Residue of the meromorphic function d at its simple pole n ∈ X_r:
/// (−1)^{r−1+n}·(r/π)·sin(nπ/r).
inline Scalar residue_mdim(const QParams& p, long n) {
  if (n % p.r == 0)
    throw ContractError("residue_mdim: n = " + std::to_string(n) +
                        " is not in X_r (divisible by r)");
  double sign = ((p.r - 1 + n) % 2 + 2) % 2 == 0 ? 1.0 : -1.0;
  return Scalar(sign * p.r / M_PI * std::sin(n * M_PI / p.r), 0.0);
}

/// H_r = {1−r, 3−r, ..., r−3, r−1}: the r integers of the Kirby index set.
inline std::vector<int> hr_set(const QParams& p) {
  std::vector<int> out;
  out.reserve(p.r);
  for (int k = 1 - p.r; k <= p.r - 1; k += 2) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------------------
// Formal colors
// ---------------------------------------------------------------------------

enum class ModuleFamily { Simple, Typical, Tau };

/// Symbolic reference to a weight module; reps.hpp materializes matrices.
struct ModuleTag {
  ModuleFamily family = ModuleFamily::Simple;
  int n = 0;        // Simple index, 0 <= n <= r-1
  Scalar alpha{};   // Typical highest-weight parameter (h.w. = alpha + r - 1)

  static ModuleTag simple(int n) { return {ModuleFamily::Simple, n, {}}; }
  static ModuleTag typical(const Scalar& a) { return {ModuleFamily::Typical, 0, a}; }
  static ModuleTag tau() { return {ModuleFamily::Tau, 0, {}}; }
};

/**
 * Finite formal linear combination of weight modules, all from the same
 * family (all typical V's, or all simple S's). Any multilinear functional
 * of a link distributes over the terms; see invariants.hpp.
 */
struct FormalColor {
  struct Term {
    Scalar coeff;
    ModuleTag module;
  };
  std::vector<Term> terms;
  Scalar degree{};  // representative of the degree in C/2Z

  void push(const Scalar& c, const ModuleTag& m) {
    if (!terms.empty() && terms.front().module.family != m.family)
      throw ContractError("FormalColor: mixed module families are rejected");
    terms.push_back({c, m});
  }
};

/// Representative of a degree in C/2Z with real part in [0, 2).
inline Scalar degree_rep(const Scalar& degree) {
  return degree - 2.0 * std::floor(degree.real() / 2.0);
}

/**
 * The Kirby color Ω_α = Σ_{k∈H_r} d(α+k)·V_{α+k}, tagged with the [0,2)
 * representative of its degree α mod 2.
 *
 * α must be non-integral: for integral α some α+k lands in X_r unless
 * r | (α+k), so the whole integer line is rejected uniformly.
 */
inline FormalColor kirby_color(const QParams& p, const Scalar& alpha) {
  if (near_integer(alpha))
    throw ContractError("kirby_color: alpha must not be an integer");
  FormalColor omega;
  omega.degree = degree_rep(alpha);
  for (int k : hr_set(p)) omega.push(mdim(p, alpha + Scalar(k)), ModuleTag::typical(alpha + Scalar(k)));
  return omega;
}

/// Ω^RT_0 = Σ_{j even} [j+1]·S_j and Ω^RT_1 = Σ_{j odd} −[j+1]·S_j,
/// with 0 ≤ j ≤ r−2.
inline FormalColor kirby_rt(const QParams& p, int parity) {
  if (parity != 0 && parity != 1)
    throw ContractError("kirby_rt: parity must be 0 or 1");
  FormalColor omega;
  omega.degree = Scalar(parity);
  double sign = parity == 0 ? 1.0 : -1.0;
  for (int j = parity; j <= p.r - 2; j += 2)
    omega.push(sign * qbracket(p, j + 1), ModuleTag::simple(j));
  return omega;
}

// ---------------------------------------------------------------------------
// Surgery constants
// ---------------------------------------------------------------------------

/// Closed form of the twist scalar on S_i: (−1)^i q^{(i²+2i)/2}.
inline Scalar twist_simple_formula(const QParams& p, int i) {
  return (i % 2 == 0 ? 1.0 : -1.0) * p.qpow(Scalar(i * i + 2 * i) / 2.0);
}

/// qdim(S_n) = (−1)^n·[n+1].
inline Scalar qdim_simple_formula(const QParams& p, int n) {
  return (n % 2 == 0 ? 1.0 : -1.0) * qbracket(p, n + 1);
}

/**
 * Δ^SO(3)± = F(u±1), the invariant of the ±1-framed unknot colored by
 * Ω^RT_0; evaluated as the finite sum Σ_{j even} [j+1]·qdim(S_j)·θ_j^{±1}.
 * Nonzero for every r ∉ 4Z.
 */
inline Scalar delta_so3(const QParams& p, int sign) {
  p.require_not_4z("delta_so3");
  if (sign != 1 && sign != -1) throw ContractError("delta_so3: sign must be +1 or -1");
  Scalar sum = 0;
  for (int j = 0; j <= p.r - 2; j += 2) {
    Scalar theta = twist_simple_formula(p, j);
    sum += qbracket(p, j + 1) * qdim_simple_formula(p, j) *
           (sign > 0 ? theta : Scalar(1.0) / theta);
  }
  return sum;
}

/// Δ+ = {1}·r·Δ^SO(3)+ and Δ− = −{1}·r·Δ^SO(3)−. The case table
/// i(rq)^{3/2} / (i−1)(rq)^{3/2} / −(rq)^{3/2} gives Δ− (tested).
inline Scalar delta_nr(const QParams& p, int sign) {
  Scalar d = qnum(p, 1) * static_cast<double>(p.r) * delta_so3(p, sign);
  return sign > 0 ? d : -d;
}

}  // namespace qtop
