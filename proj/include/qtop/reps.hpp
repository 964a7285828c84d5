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
 * Explicit matrix models of the weight modules: the simple modules S_n, the
 * r-dimensional highest-weight modules V_α (typical and atypical), and the
 * one-dimensional module τ of weight r.
 *
 * Basis order is v_0 (highest weight) first; dual pairings and partial
 * traces elsewhere rely on this order.
 */

#include <Eigen/Dense>

#include "qtop/qcore.hpp"

namespace qtop {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct WeightModule {
  ModuleTag tag;
  int dim = 0;
  std::vector<Scalar> weights;       // H-eigenvalues in basis order
  Matrix E, F, H, K, pivot;          // pivot = K^{1-r} on weight spaces
};

namespace detail {

inline WeightModule from_weights(const QParams& p, const ModuleTag& tag,
                                 std::vector<Scalar> weights) {
  WeightModule m;
  m.tag = tag;
  m.dim = static_cast<int>(weights.size());
  m.weights = std::move(weights);
  m.E = Matrix::Zero(m.dim, m.dim);
  m.F = Matrix::Zero(m.dim, m.dim);
  m.H = Matrix::Zero(m.dim, m.dim);
  m.K = Matrix::Zero(m.dim, m.dim);
  m.pivot = Matrix::Zero(m.dim, m.dim);
  for (int i = 0; i < m.dim; ++i) {
    m.H(i, i) = m.weights[i];
    m.K(i, i) = p.qpow(m.weights[i]);
    m.pivot(i, i) = p.qpow(Scalar(1 - p.r) * m.weights[i]);
  }
  return m;
}

}  // namespace detail

/**
 * S_n: the (n+1)-dimensional simple module of highest weight n, with basis
 * s_i = F^i s_0 and E·s_i = ({i}{n+1−i}/{1}²)·s_{i−1}.
 */
inline WeightModule simple_module(const QParams& p, int n) {
  if (n < 0 || n > p.r - 1)
    throw ContractError("simple_module: n must satisfy 0 <= n <= r-1, got " +
                        std::to_string(n));
  std::vector<Scalar> w(n + 1);
  for (int i = 0; i <= n; ++i) w[i] = Scalar(n - 2 * i);
  WeightModule m = detail::from_weights(p, ModuleTag::simple(n), std::move(w));
  Scalar one2 = qnum(p, 1) * qnum(p, 1);
  for (int i = 1; i <= n; ++i) {
    m.E(i - 1, i) = qnum(p, i) * qnum(p, n + 1 - i) / one2;
    m.F(i, i - 1) = 1.0;
  }
  return m;
}

/**
 * V_α: the r-dimensional highest-weight module with H·v_i = (α+r−1−2i)v_i,
 * E·v_i = ({i}{i−α}/{1}²)v_{i−1}, F·v_i = v_{i+1}. Constructed for every
 * complex α; atypical integral α is allowed (the module is still absolutely
 * irreducible when α ∈ X_r, and V_{rs} is plain irreducible).
 */
inline WeightModule typical_module(const QParams& p, const Scalar& alpha) {
  std::vector<Scalar> w(p.r);
  for (int i = 0; i < p.r; ++i) w[i] = alpha + Scalar(p.r - 1 - 2 * i);
  WeightModule m = detail::from_weights(p, ModuleTag::typical(alpha), std::move(w));
  Scalar one2 = qnum(p, 1) * qnum(p, 1);
  for (int i = 1; i < p.r; ++i) {
    m.E(i - 1, i) = qnum(p, i) * qnum(p, Scalar(i) - alpha) / one2;
    m.F(i, i - 1) = 1.0;
  }
  return m;
}

/// τ: the one-dimensional module with Ev = Fv = 0 and Hv = rv.
inline WeightModule tau_module(const QParams& p) {
  return detail::from_weights(p, ModuleTag::tau(), {Scalar(p.r)});
}

inline WeightModule make_module(const QParams& p, const ModuleTag& tag) {
  switch (tag.family) {
    case ModuleFamily::Simple: return simple_module(p, tag.n);
    case ModuleFamily::Typical: return typical_module(p, tag.alpha);
    case ModuleFamily::Tau: return tau_module(p);
  }
  throw ContractError("make_module: unknown module family");
}

/// Quantum dimension: the trace of the pivot K^{1-r}.
inline Scalar qdim(const WeightModule& m) { return m.pivot.trace(); }

/// Typicality test for a V-family tag: α outside X_r.
inline bool is_typical(const QParams& p, const ModuleTag& tag) {
  return tag.family == ModuleFamily::Typical && !in_xr(p, tag.alpha);
}

}  // namespace qtop
