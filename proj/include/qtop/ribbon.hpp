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
 * The braiding (R-matrix) and its inverse, twists, duality morphisms, and
 * the sparse-operator machinery that evaluates braid closures by partial
 * quantum traces.
 *
 * Tensor indices are position-major: on W_1⊗...⊗W_k the basis vector
 * (i_1,...,i_k) has flat index Σ i_j·stride_j with the leftmost factor most
 * significant. Crossing operators are stored factor-local (a d_A·d_B square
 * block plus its position); closures never materialize the full r^k matrix,
 * they stream basis columns through the word.
 */

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <atomic>
#include <map>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "qtop/links.hpp"
#include "qtop/reps.hpp"

namespace qtop {

using SparseMatrix = Eigen::SparseMatrix<Scalar>;

namespace detail {

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace detail

/**
 * The R-matrix on V⊗W:
 *   R = q^{H⊗H/2} Σ_{n=0}^{r−1} ({1}^{2n}/{n}!) q^{n(n−1)/2} E^n⊗F^n,
 * where q^{H⊗H/2} scales a weight-pair (λ, λ') vector by q^{λλ'/2}.
 */
inline Matrix rmatrix(const QParams& p, const WeightModule& V,
                      const WeightModule& W) {
  Matrix sum = Matrix::Zero(V.dim * W.dim, V.dim * W.dim);
  Matrix en = Matrix::Identity(V.dim, V.dim);
  Matrix fn = Matrix::Identity(W.dim, W.dim);
  Scalar coeff = 1.0;
  Scalar qn_fact = 1.0;
  Scalar one2 = qnum(p, 1) * qnum(p, 1);
  for (int n = 0; n < p.r; ++n) {
    if (n > 0) {
      en = V.E * en;
      fn = W.F * fn;
      qn_fact *= qnum(p, n);
      coeff = std::pow(one2, n) / qn_fact * p.qpow(Scalar(n * (n - 1)) / 2.0);
    }
    if (en.isZero(0) || fn.isZero(0)) break;
    sum += coeff * detail::kron(en, fn);
  }
  for (int i = 0; i < V.dim; ++i)
    for (int j = 0; j < W.dim; ++j)
      sum.row(i * W.dim + j) *= p.qpow(V.weights[i] * W.weights[j] / 2.0);
  return sum;
}

/**
 * The braiding c_{V,W} = flip∘R : V⊗W → W⊗V for sign +1, and its two-sided
 * inverse (W⊗V → V⊗W, computed by LU solve) for sign −1.
 */
inline Matrix braiding(const QParams& p, const WeightModule& V,
                       const WeightModule& W, int sign = +1) {
  Matrix r = rmatrix(p, V, W);
  Matrix c(W.dim * V.dim, V.dim * W.dim);
  for (int i = 0; i < V.dim; ++i)
    for (int j = 0; j < W.dim; ++j)
      c.row(j * V.dim + i) = r.row(i * W.dim + j);
  if (sign > 0) return c;
  Eigen::PartialPivLU<Matrix> lu(c);
  Matrix inv = lu.solve(Matrix::Identity(c.rows(), c.cols()));
  if (!((c * inv) - Matrix::Identity(c.rows(), c.cols())).isZero(1e-8))
    throw NumericError("braiding: numeric inversion failed (singular matrix)");
  return inv;
}

/// Closed-form twist scalars: θ_{V_α} = q^{(α²−(r−1)²)/2},
/// θ_{S_i} = (−1)^i q^{(i²+2i)/2}, θ_τ = −i^{−r}.
inline Scalar twist_formula(const QParams& p, const ModuleTag& tag) {
  switch (tag.family) {
    case ModuleFamily::Simple:
      return twist_simple_formula(p, tag.n);
    case ModuleFamily::Typical:
      return p.qpow((tag.alpha * tag.alpha - Scalar((p.r - 1) * (p.r - 1))) / 2.0);
    case ModuleFamily::Tau:
      return -p.qpow(-Scalar(p.r) * Scalar(p.r) / 2.0);
  }
  throw ContractError("twist_formula: unknown module family");
}

/**
 * Coevaluation / evaluation data in the fixed basis {v_i} of V and its dual:
 *   b  : 1 ↦ Σ v_i⊗v_i*            d  : f⊗w ↦ f(w)
 *   b' : 1 ↦ Σ v_i*⊗K^{r−1}v_i     d' : v⊗f ↦ f(K^{1−r}v)
 * V⊗V* and V*⊗V are identified with C^{d²} (first factor most significant).
 */
struct DualityData {
  Vector b, b_prime;
  Eigen::RowVectorXcd d, d_prime;
};

inline DualityData duality_vectors(const QParams&, const WeightModule& V) {
  int n = V.dim;
  DualityData out;
  out.b = Vector::Zero(n * n);
  out.b_prime = Vector::Zero(n * n);
  out.d = Eigen::RowVectorXcd::Zero(n * n);
  out.d_prime = Eigen::RowVectorXcd::Zero(n * n);
  for (int i = 0; i < n; ++i) {
    out.b[i * n + i] = 1.0;
    out.b_prime[i * n + i] = 1.0 / V.pivot(i, i);  // K^{r-1} on v_i
    out.d[i * n + i] = 1.0;
    out.d_prime[i * n + i] = V.pivot(i, i);
  }
  return out;
}

/// Reads the scalar s of an endomorphism expected to be s·Id, guarding with
/// ‖M − s·Id‖∞ ≤ tol·max(1, ‖M‖∞).
inline Scalar scalar_of(const Matrix& m, const char* what, double tol = 1e-8) {
  Scalar s = m(0, 0);
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  double dev = (m - s * Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  if (dev > tol * scale)
    throw NumericError(std::string(what) +
                       ": endomorphism is not a multiple of the identity "
                       "(deviation " + std::to_string(dev) + ")");
  return s;
}

// ---------------------------------------------------------------------------
// Sparse operators on tensor products
// ---------------------------------------------------------------------------

/// A complex linear map between tensor-product spaces, carrying the factor
/// shapes of its domain and codomain.
struct SparseOperator {
  std::vector<int> dims_in, dims_out;
  SparseMatrix mat;  // rows = prod(dims_out), cols = prod(dims_in)

  static long total(const std::vector<int>& dims) {
    long t = 1;
    for (int d : dims) t *= d;
    return t;
  }

  static SparseOperator identity(const std::vector<int>& dims) {
    SparseOperator op;
    op.dims_in = op.dims_out = dims;
    long n = total(dims);
    op.mat = SparseMatrix(n, n);
    op.mat.setIdentity();
    return op;
  }

  /// Embeds a two-site block acting on factors (pos, pos+1) as
  /// Id ⊗ ... ⊗ block ⊗ ... ⊗ Id. The block maps d_a·d_b to d_a'·d_b';
  /// out_a/out_b give the codomain factor dims (swapped for braidings).
  static SparseOperator two_site(const Matrix& block, int pos,
                                 const std::vector<int>& dims, int out_a,
                                 int out_b) {
    int a = dims[pos], b = dims[pos + 1];
    if (block.cols() != a * b || block.rows() != out_a * out_b)
      throw ContractError("SparseOperator::two_site: block shape mismatch");
    SparseOperator op;
    op.dims_in = dims;
    op.dims_out = dims;
    op.dims_out[pos] = out_a;
    op.dims_out[pos + 1] = out_b;
    long left = 1, right = 1;
    for (int j = 0; j < pos; ++j) left *= dims[j];
    for (size_t j = pos + 2; j < dims.size(); ++j) right *= dims[j];
    std::vector<Eigen::Triplet<Scalar>> trip;
    for (int ci = 0; ci < a * b; ++ci)
      for (int ri = 0; ri < out_a * out_b; ++ri) {
        if (block(ri, ci) == Scalar(0)) continue;
        for (long L = 0; L < left; ++L)
          for (long R = 0; R < right; ++R)
            trip.emplace_back((L * (out_a * out_b) + ri) * right + R,
                              (L * (a * b) + ci) * right + R, block(ri, ci));
      }
    op.mat = SparseMatrix(total(op.dims_out), total(op.dims_in));
    op.mat.setFromTriplets(trip.begin(), trip.end());
    return op;
  }

  /// Composition this ∘ rhs.
  SparseOperator operator*(const SparseOperator& rhs) const {
    if (dims_in != rhs.dims_out)
      throw ContractError("SparseOperator: composition shape mismatch");
    SparseOperator op;
    op.dims_in = rhs.dims_in;
    op.dims_out = dims_out;
    op.mat = mat * rhs.mat;
    return op;
  }

  Matrix dense() const { return Matrix(mat); }

  Vector apply(const Vector& v) const { return mat * v; }
};

/**
 * Partial quantum trace: tr over every factor except `keep` of
 * (pivot insertions on the traced factors) ∘ op, i.e. the RT evaluation of
 * closing those strands off to the right. keep = −1 traces everything and
 * returns a 1×1 matrix.
 */
inline Matrix partial_qtrace(const SparseOperator& op,
                             const std::vector<const WeightModule*>& factors,
                             int keep) {
  if (op.dims_in != op.dims_out)
    throw ContractError("partial_qtrace: operator must be an endomorphism");
  int k = static_cast<int>(factors.size());
  int dkeep = keep >= 0 ? factors[keep]->dim : 1;
  Matrix out = Matrix::Zero(dkeep, dkeep);
  std::vector<long> stride(k, 1);
  for (int j = k - 2; j >= 0; --j) stride[j] = stride[j + 1] * op.dims_in[j + 1];
  std::vector<int> ridx(k), cidx(k);
  for (int outer = 0; outer < op.mat.outerSize(); ++outer) {
    for (SparseMatrix::InnerIterator it(op.mat, outer); it; ++it) {
      long row = it.row(), col = it.col();
      for (int j = 0; j < k; ++j) {
        ridx[j] = static_cast<int>(row / stride[j] % op.dims_in[j]);
        cidx[j] = static_cast<int>(col / stride[j] % op.dims_in[j]);
      }
      Scalar w = it.value();
      bool diag = true;
      for (int j = 0; j < k && diag; ++j) {
        if (j == keep) continue;
        if (ridx[j] != cidx[j]) diag = false;
        else w *= factors[j]->pivot(ridx[j], ridx[j]);
      }
      if (diag) out(keep >= 0 ? ridx[keep] : 0, keep >= 0 ? cidx[keep] : 0) += w;
    }
  }
  return out;
}

/**
 * Positive-kink evaluation: closes c_{V,V} with the duality morphisms (a
 * partial trace with the pivot on the second factor) and returns the
 * proportionality scalar. Matches twist_formula for every supported module;
 * throws NumericError if the result is not scalar.
 */
inline Scalar twist_scalar(const QParams& p, const WeightModule& V) {
  Matrix c = braiding(p, V, V, +1);
  Matrix kink = Matrix::Zero(V.dim, V.dim);
  for (int a = 0; a < V.dim; ++a)
    for (int m = 0; m < V.dim; ++m)
      for (int i = 0; i < V.dim; ++i)
        kink(a, m) += c(a * V.dim + i, m * V.dim + i) * V.pivot(i, i);
  return scalar_of(kink, "twist_scalar");
}

// ---------------------------------------------------------------------------
// Braid evaluation
// ---------------------------------------------------------------------------

namespace detail {

struct LetterPlan {
  const Matrix* block;  // (b_out·a_out)×(a_in·b_in) braiding
  long left, right;
  int a_in, b_in;
};

/// Precomputed crossing plan for one braid word with given bottom modules.
struct BraidPlan {
  std::vector<LetterPlan> steps;
  std::vector<const WeightModule*> top;  // modules per position after the word
  long dim_total = 1;
  std::map<std::tuple<const WeightModule*, const WeightModule*, int>, Matrix> cache;
};

inline BraidPlan make_plan(const QParams& p, const BraidWord& word,
                           const std::vector<const WeightModule*>& bottom) {
  if (static_cast<int>(bottom.size()) != word.strands)
    throw ContractError("braid evaluation: one module per strand required");
  BraidPlan plan;
  std::vector<const WeightModule*> cur = bottom;
  for (const WeightModule* m : cur) plan.dim_total *= m->dim;
  for (int l : word.letters) {
    int pos = std::abs(l) - 1;
    int sign = l > 0 ? +1 : -1;
    const WeightModule* A = cur[pos];
    const WeightModule* B = cur[pos + 1];
    // positive: c_{A,B}; negative: c_{B,A}^{-1}. Both map A⊗B -> B⊗A.
    auto key = std::make_tuple(A, B, sign);
    auto it = plan.cache.find(key);
    if (it == plan.cache.end()) {
      Matrix m = sign > 0 ? braiding(p, *A, *B, +1) : braiding(p, *B, *A, -1);
      it = plan.cache.emplace(key, std::move(m)).first;
    }
    LetterPlan step;
    step.block = &it->second;
    step.a_in = A->dim;
    step.b_in = B->dim;
    step.left = 1;
    step.right = 1;
    for (int j = 0; j < pos; ++j) step.left *= cur[j]->dim;
    for (size_t j = pos + 2; j < cur.size(); ++j) step.right *= cur[j]->dim;
    plan.steps.push_back(step);
    std::swap(cur[pos], cur[pos + 1]);
  }
  plan.top = cur;
  return plan;
}

/// Applies the planned word to one basis column, reusing scratch buffers.
inline void apply_plan(const BraidPlan& plan, std::vector<Scalar>& v,
                       std::vector<Scalar>& tmp) {
  for (const LetterPlan& s : plan.steps) {
    long ab = static_cast<long>(s.a_in) * s.b_in;
    std::fill(tmp.begin(), tmp.end(), Scalar(0));
    const Matrix& blk = *s.block;
    for (long L = 0; L < s.left; ++L) {
      long base = L * ab * s.right;
      for (long R = 0; R < s.right; ++R) {
        for (long cij = 0; cij < ab; ++cij) {
          Scalar x = v[base + cij * s.right + R];
          if (x == Scalar(0)) continue;
          for (long rij = 0; rij < ab; ++rij) {
            Scalar c = blk(rij, cij);
            if (c != Scalar(0)) tmp[base + rij * s.right + R] += c * x;
          }
        }
      }
    }
    std::swap(v, tmp);
  }
}

}  // namespace detail

/**
 * Evaluates the braid closure as a partial quantum trace without
 * materializing the full operator: returns
 *   tr_{j≠keep}((pivots) ∘ F(word))
 * as a d_keep×d_keep matrix (keep = −1 gives the full trace, 1×1).
 *
 * Bottom/top modules must agree per position, which holds whenever colors
 * are constant along closure components. Basis columns are streamed in
 * fixed-size chunks; with worker_threads() > 1 chunks run concurrently and
 * are reduced in chunk order, so results stay bit-reproducible.
 */
inline Matrix closed_braid_trace(const QParams& p, const BraidWord& word,
                                 const std::vector<const WeightModule*>& bottom,
                                 int keep) {
  detail::BraidPlan plan = detail::make_plan(p, word, bottom);
  int k = word.strands;
  for (int j = 0; j < k; ++j)
    if (plan.top[j]->dim != bottom[j]->dim)
      throw ContractError(
          "closed_braid_trace: colors are not constant along components");
  long total = plan.dim_total;
  std::vector<long> stride(k, 1);
  for (int j = k - 2; j >= 0; --j) stride[j] = stride[j + 1] * bottom[j + 1]->dim;
  int dkeep = keep >= 0 ? bottom[keep]->dim : 1;
  long keep_stride = keep >= 0 ? stride[keep] : 1;

  // Pivot weight of the traced part of a flat index.
  auto pivot_weight = [&](long idx) {
    Scalar w = 1.0;
    for (int j = 0; j < k; ++j) {
      if (j == keep) continue;
      int ij = static_cast<int>(idx / stride[j] % bottom[j]->dim);
      w *= bottom[j]->pivot(ij, ij);
    }
    return w;
  };

  const long chunk = 256;
  long n_chunks = (total + chunk - 1) / chunk;
  std::vector<Matrix> partial(n_chunks, Matrix::Zero(dkeep, dkeep));

  auto run_chunk = [&](long ci) {
    std::vector<Scalar> v(total), tmp(total);
    Matrix& acc = partial[ci];
    for (long col = ci * chunk; col < std::min(total, (ci + 1) * chunk); ++col) {
      int bk = keep >= 0 ? static_cast<int>(col / keep_stride % dkeep) : 0;
      std::fill(v.begin(), v.end(), Scalar(0));
      v[col] = 1.0;
      detail::apply_plan(plan, v, tmp);
      Scalar w = pivot_weight(col);
      if (keep >= 0) {
        long rest = col - static_cast<long>(bk) * keep_stride;
        for (int a = 0; a < dkeep; ++a)
          acc(a, bk) += w * v[rest + static_cast<long>(a) * keep_stride];
      } else {
        acc(0, 0) += w * v[col];
      }
    }
  };

  int workers = std::max(1, worker_threads());
  if (workers <= 1 || n_chunks <= 1) {
    for (long ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < std::min<long>(workers, n_chunks); ++t)
      pool.emplace_back([&] {
        for (long ci = next.fetch_add(1); ci < n_chunks; ci = next.fetch_add(1))
          run_chunk(ci);
      });
    for (auto& th : pool) th.join();
  }
  Matrix out = Matrix::Zero(dkeep, dkeep);
  for (const Matrix& m : partial) out += m;
  return out;
}

/// Full braid operator as a SparseOperator (small instances / tests).
inline SparseOperator braid_operator(const QParams& p, const BraidWord& word,
                                     const std::vector<const WeightModule*>& bottom) {
  std::vector<int> dims;
  for (const WeightModule* m : bottom) dims.push_back(m->dim);
  SparseOperator op = SparseOperator::identity(dims);
  std::vector<const WeightModule*> cur = bottom;
  for (int l : word.letters) {
    int pos = std::abs(l) - 1;
    const WeightModule* A = cur[pos];
    const WeightModule* B = cur[pos + 1];
    Matrix blk = l > 0 ? braiding(p, *A, *B, +1) : braiding(p, *B, *A, -1);
    op = SparseOperator::two_site(blk, pos, op.dims_out, B->dim, A->dim) * op;
    std::swap(cur[pos], cur[pos + 1]);
  }
  return op;
}

}  // namespace qtop
