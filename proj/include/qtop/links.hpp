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
 * Braid-word input and closure combinatorics: components, writhes, linking
 * matrices and their signatures, 2-cabling, Chebyshev cabling coefficients,
 * and a table of small knots.
 *
 * Conventions: strands are numbered 1..n at the bottom; letter ±g means the
 * generator σ_g^{±1} crossing positions (g, g+1); the closure joins top
 * position j back to bottom position j. Diagrams are blackboard-framed and a
 * component with declared framing f picks up twist corrections θ^{f−w} at
 * evaluation time (w = its self-writhe in the diagram).
 */

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "qtop/common.hpp"

namespace qtop {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;  // ±g, 1 <= g < strands

  void validate() const {
    if (strands < 1) throw ContractError("BraidWord: strands must be >= 1");
    for (int l : letters) {
      int g = std::abs(l);
      if (g < 1 || g >= strands)
        throw ContractError("BraidWord: generator " + std::to_string(l) +
                            " out of range for " + std::to_string(strands) +
                            " strands");
    }
  }
};

/// Parses the grammar `strands ':' (signed-int)*`, e.g. "2: 1 1 1".
inline BraidWord parse_braid(std::string_view text) {
  auto fail = [&](size_t pos, const std::string& what) {
    throw ParseError("braid parse error at position " + std::to_string(pos) +
                     ": " + what);
  };
  size_t i = 0;
  auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
  auto read_int = [&](const char* what) {
    skip_ws();
    size_t start = i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
      fail(start, std::string("expected ") + what);
    return std::atoi(std::string(text.substr(start, i - start)).c_str());
  };

  BraidWord b;
  b.strands = read_int("strand count");
  if (b.strands < 1) fail(0, "strand count must be >= 1");
  skip_ws();
  if (i >= text.size() || text[i] != ':') fail(i, "expected ':'");
  ++i;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    size_t at = i;
    int l = read_int("generator");
    if (l == 0) fail(at, "generator 0 is not valid");
    if (std::abs(l) >= b.strands)
      fail(at, "generator " + std::to_string(l) + " needs >= " +
                   std::to_string(std::abs(l) + 1) + " strands");
    b.letters.push_back(l);
  }
  return b;
}

/// 0-based permutation of a braid word: perm[j] = top position reached by the
/// strand entering bottom position j.
inline std::vector<int> word_permutation(const BraidWord& b) {
  std::vector<int> pos(b.strands);           // pos[s] = current position of strand s
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<int> at(b.strands);            // at[p] = strand at position p
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters) {
    int g = std::abs(l) - 1;
    std::swap(at[g], at[g + 1]);
    pos[at[g]] = g;
    pos[at[g + 1]] = g + 1;
  }
  return pos;
}

/**
 * Closure data of a braid: the partition of bottom positions into link
 * components (cycles of the closure permutation, numbered by smallest
 * position), per-component self-writhes and the pairwise signed crossing
 * sums (twice the linking numbers).
 */
struct ClosureInfo {
  int n_components = 0;
  std::vector<int> comp_of_strand;   // per bottom position
  std::vector<int> perm;             // closure permutation (bottom -> top)
  std::vector<int> writhe;           // per component, self-crossings only
  Eigen::MatrixXi cross_sum;         // symmetric, 2*lk off-diagonal, 0 diagonal
};

inline ClosureInfo closure_components(const BraidWord& b) {
  b.validate();
  ClosureInfo info;
  info.perm = word_permutation(b);
  info.comp_of_strand.assign(b.strands, -1);
  for (int j = 0; j < b.strands; ++j) {
    if (info.comp_of_strand[j] >= 0) continue;
    int c = info.n_components++;
    for (int k = j; info.comp_of_strand[k] < 0; k = info.perm[k])
      info.comp_of_strand[k] = c;
  }
  info.writhe.assign(info.n_components, 0);
  info.cross_sum = Eigen::MatrixXi::Zero(info.n_components, info.n_components);

  std::vector<int> at(b.strands);  // strand at each position during the sweep
  std::iota(at.begin(), at.end(), 0);
  for (int l : b.letters) {
    int g = std::abs(l) - 1;
    int sign = l > 0 ? 1 : -1;
    int ca = info.comp_of_strand[at[g]];
    int cb = info.comp_of_strand[at[g + 1]];
    if (ca == cb) {
      info.writhe[ca] += sign;
    } else {
      info.cross_sum(ca, cb) += sign;
      info.cross_sum(cb, ca) += sign;
    }
    std::swap(at[g], at[g + 1]);
  }
  return info;
}

/// Conjugates b so that the strand at bottom position pos (0-based) enters at
/// position 0: returns u·b·u⁻¹ with u = σ_pos···σ_1. Bottom position j of the
/// result carries the strand that entered position conjugator_perm(pos)[j]
/// of b.
inline BraidWord conjugate_to_front(const BraidWord& b, int pos) {
  BraidWord out;
  out.strands = b.strands;
  for (int g = pos; g >= 1; --g) out.letters.push_back(g);
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  for (int g = 1; g <= pos; ++g) out.letters.push_back(-g);
  return out;
}

/// Permutation of the conjugator u = σ_pos···σ_1: maps new bottom positions
/// to the old bottom positions whose strands they carry.
inline std::vector<int> conjugator_perm(int pos, int strands) {
  BraidWord u;
  u.strands = strands;
  for (int g = pos; g >= 1; --g) u.letters.push_back(g);
  return word_permutation(u);
}

/**
 * Doubles every strand of a braid whose closure is a knot and appends
 * `twists` full twists on one cable pair, so the two parallel closure
 * components have mutual linking w + twists (w = writhe of b).
 */
inline BraidWord cable2(const BraidWord& b, int twists) {
  ClosureInfo info = closure_components(b);
  if (info.n_components != 1)
    throw ContractError("cable2: closure must be a knot, got " +
                        std::to_string(info.n_components) + " components");
  BraidWord out;
  out.strands = 2 * b.strands;
  for (int l : b.letters) {
    int g = std::abs(l);
    if (l > 0) {
      out.letters.insert(out.letters.end(),
                         {2 * g, 2 * g + 1, 2 * g - 1, 2 * g});
    } else {
      out.letters.insert(out.letters.end(),
                         {-2 * g, -(2 * g - 1), -(2 * g + 1), -2 * g});
    }
  }
  for (int t = 0; t < 2 * std::abs(twists); ++t)
    out.letters.push_back(twists > 0 ? 1 : -1);
  return out;
}

/**
 * Chebyshev cabling coefficients: T_n = Σ_k c_{n,k}·(k-fold parallel), from
 * T_n = x·T_{n−1} − T_{n−2} with T_0 = ∅ and T_1 = x. Returns the c_{n,k}
 * indexed by k (length n+1; only parities k ≡ n mod 2 are nonzero).
 */
inline std::vector<long> chebyshev_expand(int n) {
  if (n < 0) throw ContractError("chebyshev_expand: n must be >= 0");
  std::vector<long> prev{1};     // T_0
  if (n == 0) return prev;
  std::vector<long> cur{0, 1};   // T_1
  for (int m = 2; m <= n; ++m) {
    std::vector<long> next(m + 1, 0);
    for (int k = 0; k < static_cast<int>(cur.size()); ++k) next[k + 1] += cur[k];
    for (int k = 0; k < static_cast<int>(prev.size()); ++k) next[k] -= prev[k];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Linking matrix with declared framings on the diagonal, its eigenvalue
/// signature (p, s) and |det| (= ord H_1 of the surgered manifold).
struct LinkingData {
  Eigen::MatrixXi matrix;
  int positive = 0;
  int negative = 0;
  long det_abs = 0;
};

inline LinkingData linking_data(const ClosureInfo& info,
                                const std::vector<int>& framings) {
  int n = info.n_components;
  if (static_cast<int>(framings.size()) != n)
    throw ContractError("linking_data: framings size mismatch");
  LinkingData out;
  out.matrix = info.cross_sum / 2;
  for (int i = 0; i < n; ++i) out.matrix(i, i) = framings[i];
  if (n > 0) {
    Eigen::MatrixXd a = out.matrix.cast<double>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    for (int i = 0; i < n; ++i) {
      if (es.eigenvalues()[i] > 1e-9) ++out.positive;
      else if (es.eigenvalues()[i] < -1e-9) ++out.negative;
    }
    out.det_abs = std::llround(std::abs(a.determinant()));
  }
  return out;
}

/// Small built-in presentations, all with canonical framing 0 per component.
inline BraidWord knot_table(const std::string& name) {
  if (name == "unknot") return parse_braid("1:");
  if (name == "trefoil") return parse_braid("2: 1 1 1");
  if (name == "figure8") return parse_braid("3: 1 -2 1 -2");
  if (name == "hopf") return parse_braid("2: 1 1");
  throw ContractError("knot_table: unknown name '" + name +
                      "' (expected unknot, trefoil, figure8 or hopf)");
}

}  // namespace qtop
