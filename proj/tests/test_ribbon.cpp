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

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "qtop/ribbon.hpp"
#include "qtop/skein.hpp"

using namespace qtop;

namespace {

std::mt19937 rng(23);

Scalar rand_alpha() {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  return Scalar(uni(rng), uni(rng) / 4.0);
}

double maxdiff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("rmatrix on S_1 x S_1 matches the truncated closed form") {
  for (int r : {3, 5}) {
    QParams p(r);
    WeightModule s1 = simple_module(p, 1);
    // E^2 = F^2 = 0 on S_1: R = q^{H⊗H/2}(Id + (q−q^{-1})E⊗F)
    Matrix expect = Matrix::Zero(4, 4);
    Matrix ef = Matrix::Zero(4, 4);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            ef(a * 2 + b, i * 2 + j) = s1.E(a, i) * s1.F(b, j);
    Matrix base = Matrix::Identity(4, 4) + (p.qpow(1) - p.qpow(-1)) * ef;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        expect.row(a * 2 + b) =
            p.qpow(s1.weights[a] * s1.weights[b] / 2.0) * base.row(a * 2 + b);
    CHECK(maxdiff(rmatrix(p, s1, s1), expect) < 1e-12);
  }
}

TEST_CASE("braiding and inverse") {
  QParams p(3);
  WeightModule va = typical_module(p, Scalar(0.3));
  WeightModule vb = typical_module(p, Scalar(-1.7));
  Matrix c = braiding(p, va, vb, +1);
  Matrix ci = braiding(p, va, vb, -1);
  CHECK(maxdiff(c * ci, Matrix::Identity(9, 9)) < 1e-10);
  CHECK(maxdiff(ci * c, Matrix::Identity(9, 9)) < 1e-10);
}

TEST_CASE("skein identity on S_1") {
  // q^{1/2}c − q^{−1/2}c^{−1} = (q−q^{−1})·Id
  for (int r : {3, 4, 5}) {
    QParams p(r);
    WeightModule s1 = simple_module(p, 1);
    Matrix c = braiding(p, s1, s1, +1);
    Matrix ci = braiding(p, s1, s1, -1);
    Matrix lhs = p.qpow(0.5) * c - p.qpow(-0.5) * ci;
    Matrix rhs = (p.qpow(1) - p.qpow(-1)) * Matrix::Identity(4, 4);
    CHECK(maxdiff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("tau braiding relations") {
  // crossing a tau strand over V_alpha differs from the inverse crossing by
  // the factor q^{(alpha+r−1)r}
  for (int r : {3, 5}) {
    QParams p(r);
    WeightModule t = tau_module(p);
    Scalar a = rand_alpha();
    WeightModule v = typical_module(p, a);
    Matrix pos = braiding(p, t, v, +1);        // tau⊗V -> V⊗tau
    Matrix neg = braiding(p, v, t, -1);        // tau⊗V -> V⊗tau, negative
    Scalar factor = p.qpow((a + Scalar(r - 1)) * Scalar(r));
    CHECK(maxdiff(pos, factor * neg) < 1e-10);

    // a positive tau-tau crossing acts by i^r on the two vertical strands
    Matrix cc = braiding(p, t, t, +1);
    Scalar ir = p.qpow(Scalar(r) * Scalar(r) / 2.0);  // i^r
    CHECK(std::abs(cc(0, 0) - ir) < 1e-12);
  }
}

TEST_CASE("Yang-Baxter with color bookkeeping") {
  for (int r : {3, 5}) {
    QParams p(r);
    WeightModule A = typical_module(p, rand_alpha());
    WeightModule B = typical_module(p, rand_alpha());
    WeightModule C = typical_module(p, rand_alpha());
    std::vector<int> d0{A.dim, B.dim, C.dim};

    SparseOperator c12 = SparseOperator::two_site(braiding(p, A, B), 0, d0, B.dim, A.dim);
    SparseOperator c23 = SparseOperator::two_site(braiding(p, A, C), 1, c12.dims_out, C.dim, A.dim);
    SparseOperator c12b = SparseOperator::two_site(braiding(p, B, C), 0, c23.dims_out, C.dim, B.dim);
    Matrix lhs = (c12b * (c23 * c12)).dense();

    SparseOperator e23 = SparseOperator::two_site(braiding(p, B, C), 1, d0, C.dim, B.dim);
    SparseOperator e12 = SparseOperator::two_site(braiding(p, A, C), 0, e23.dims_out, C.dim, A.dim);
    SparseOperator e23b = SparseOperator::two_site(braiding(p, A, B), 1, e12.dims_out, B.dim, A.dim);
    Matrix rhs = (e23b * (e12 * e23)).dense();

    INFO("r=" << r);
    CHECK(maxdiff(lhs, rhs) < 1e-8);
  }
}

TEST_CASE("Laurent structure: normalized braiding entries are 2r-periodic") {
  QParams p(3);
  Scalar beta = rand_alpha();
  auto normalized = [&](const Scalar& a) {
    Matrix c = braiding(p, typical_module(p, a), typical_module(p, beta));
    return Matrix(p.qpow(-a * beta / 2.0) *
                  p.qpow(-Scalar(p.r - 1) * (a + beta) / 2.0) * c);
  };
  Scalar a = rand_alpha();
  CHECK(maxdiff(normalized(a), normalized(a + Scalar(2 * p.r))) < 1e-9);
}

TEST_CASE("duality vectors") {
  QParams p(5);
  std::vector<WeightModule> mods;
  mods.push_back(simple_module(p, 1));
  mods.push_back(simple_module(p, 3));
  mods.push_back(typical_module(p, rand_alpha()));
  for (const WeightModule& m : mods) {
    DualityData dual = duality_vectors(p, m);
    int n = m.dim;
    // zigzags (Id⊗d)(b⊗Id) = Id and (d'⊗Id)(Id⊗b') = Id
    Matrix z1 = Matrix::Zero(n, n), z2 = Matrix::Zero(n, n);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          z1(i, v) += dual.b[i * n + j] * dual.d[j * n + v];
          z2(i, v) += dual.d_prime[v * n + j] * dual.b_prime[j * n + i];
        }
    CHECK(maxdiff(z1, Matrix::Identity(n, n)) < 1e-12);
    CHECK(maxdiff(z2, Matrix::Identity(n, n)) < 1e-12);
    // d'∘b is the quantum dimension
    CHECK(std::abs((dual.d_prime * dual.b).value() - qdim(m)) < 1e-12);
  }
  // on typical modules the closed loop vanishes
  CHECK(std::abs(qdim(mods[2])) < 1e-11);
}

TEST_CASE("twist scalars match closed forms") {
  for (int r : {3, 5, 7}) {
    QParams p(r);
    for (int n = 0; n <= r - 1; ++n) {
      WeightModule m = simple_module(p, n);
      INFO("S_" << n << " r=" << r);
      CHECK(std::abs(twist_scalar(p, m) - twist_formula(p, m.tag)) < 1e-10);
    }
    for (int i = 0; i < 20; ++i) {
      WeightModule m = typical_module(p, rand_alpha());
      CHECK(std::abs(twist_scalar(p, m) - twist_formula(p, m.tag)) < 1e-9);
    }
    // V_{r-1} has trivial twist
    CHECK(std::abs(twist_scalar(p, typical_module(p, Scalar(r - 1))) - 1.0) <
          1e-10);
    // S_1 kink = −q^{3/2}
    CHECK(std::abs(twist_scalar(p, simple_module(p, 1)) + p.qpow(1.5)) < 1e-12);
    // positive kink on tau = −i^{−r}
    Scalar expect = -p.qpow(-Scalar(r) * Scalar(r) / 2.0);
    CHECK(std::abs(twist_scalar(p, tau_module(p)) - expect) < 1e-12);
  }
}

TEST_CASE("ribbon identity: twist of a product via double braiding") {
  // θ_{V⊗W} = c_{W,V}∘c_{V,W}∘(θ_V⊗θ_W). With V_α⊗V_β ≅ ⊕_{k∈H_r} V_{α+β+k}
  // the eigenvalues of that operator are the θ_{α+β+k}, each r times.
  for (int r : {3, 5}) {
    QParams p(r);
    Scalar a = rand_alpha(), b = rand_alpha();
    WeightModule va = typical_module(p, a);
    WeightModule vb = typical_module(p, b);
    Matrix dbl = braiding(p, vb, va, +1) * braiding(p, va, vb, +1);
    Matrix prod_twist =
        twist_formula(p, va.tag) * twist_formula(p, vb.tag) * dbl;

    Eigen::ComplexEigenSolver<Matrix> es(prod_twist);
    std::vector<Scalar> got(es.eigenvalues().data(),
                            es.eigenvalues().data() + r * r);
    std::vector<Scalar> expect;
    for (int k : hr_set(p))
      for (int copy = 0; copy < r; ++copy)
        expect.push_back(twist_formula(p, ModuleTag::typical(a + b + Scalar(k))));
    auto lex = [](const Scalar& x, const Scalar& y) {
      return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(got.begin(), got.end(), lex);
    std::sort(expect.begin(), expect.end(), lex);
    double worst = 0;
    for (int i = 0; i < r * r; ++i)
      worst = std::max(worst, std::abs(got[i] - expect[i]));
    INFO("r=" << r);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("two-site embedding equals the explicit kronecker product") {
  QParams p(3);
  WeightModule s1 = simple_module(p, 1);
  WeightModule v = typical_module(p, Scalar(0.4, 0.1));
  Matrix c = braiding(p, s1, v, +1);
  std::vector<int> dims{2, s1.dim, v.dim};  // a 2-dim spectator factor first
  SparseOperator op = SparseOperator::two_site(c, 1, dims, v.dim, s1.dim);
  Matrix id2 = Matrix::Identity(2, 2);
  Matrix expect = Matrix::Zero(2 * 6, 2 * 6);
  for (int i = 0; i < 2; ++i)
    expect.block(i * 6, i * 6, 6, 6) = c;
  CHECK(maxdiff(op.dense(), expect) < 1e-14);

  // composition is associative and identity acts neutrally
  SparseOperator idop = SparseOperator::identity(op.dims_out);
  CHECK(maxdiff((idop * op).dense(), op.dense()) < 1e-14);
  SparseOperator back =
      SparseOperator::two_site(braiding(p, v, s1, +1), 1, op.dims_out, s1.dim, v.dim);
  SparseOperator third =
      SparseOperator::two_site(braiding(p, simple_module(p, 1), s1, +1), 0,
                               back.dims_out, s1.dim, 2);
  CHECK(maxdiff(((third * back) * op).dense(), (third * (back * op)).dense()) <
        1e-12);
}

TEST_CASE("partial quantum trace") {
  QParams p(3);
  WeightModule va = typical_module(p, Scalar(0.37, 0.05));
  WeightModule s1 = simple_module(p, 1);

  // identity braid on V_a⊗S_1, tracing out factor 2 gives qdim(S_1)·Id
  SparseOperator id = SparseOperator::identity({va.dim, s1.dim});
  Matrix tr2 = partial_qtrace(id, {&va, &s1}, 0);
  CHECK(maxdiff(tr2, qdim(s1) * Matrix::Identity(va.dim, va.dim)) < 1e-12);

  // full trace of the identity on S_1 is qdim = −q−q^{−1}
  SparseOperator id1 = SparseOperator::identity({s1.dim});
  Matrix tr = partial_qtrace(id1, {&s1}, -1);
  CHECK(std::abs(tr(0, 0) - (-p.qpow(1) - p.qpow(-1))) < 1e-12);
}

TEST_CASE("hopf closure through partial traces matches the skein value") {
  // full quantum trace of sigma_1^2 on S_1⊗S_1 against the independent
  // Kauffman-bracket recursion
  for (int r : {3, 4, 5}) {
    QParams p(r);
    WeightModule s1 = simple_module(p, 1);
    BraidWord hopf = parse_braid("2: 1 1");
    std::vector<const WeightModule*> bottom{&s1, &s1};
    Scalar via_trace = closed_braid_trace(p, hopf, bottom, -1)(0, 0);
    Scalar via_skein = jones_skein(p, hopf, {1, 1}, {0, 0});
    INFO("r=" << r);
    CHECK(std::abs(via_trace - via_skein) < 1e-10);
  }
}

TEST_CASE("closed_braid_trace matches dense partial trace") {
  QParams p(3);
  WeightModule va = typical_module(p, Scalar(0.3, 0.02));
  BraidWord b;
  b.strands = 2;
  b.letters = {1, 1};
  std::vector<const WeightModule*> bottom{&va, &va};
  Matrix streamed = closed_braid_trace(p, b, bottom, 0);
  Matrix dense = partial_qtrace(braid_operator(p, b, bottom), {&va, &va}, 0);
  CHECK(maxdiff(streamed, dense) < 1e-11);

  Matrix full_streamed = closed_braid_trace(p, b, bottom, -1);
  Matrix full_dense = partial_qtrace(braid_operator(p, b, bottom), {&va, &va}, -1);
  CHECK(std::abs(full_streamed(0, 0) - full_dense(0, 0)) < 1e-11);
}

TEST_CASE("closed_braid_trace is deterministic across thread counts") {
  QParams p(5);
  WeightModule va = typical_module(p, Scalar(0.21, 0.08));
  BraidWord b;
  b.strands = 3;
  b.letters = {1, -2, 1, -2};
  std::vector<const WeightModule*> bottom{&va, &va, &va};
  worker_threads() = 1;
  Matrix one = closed_braid_trace(p, b, bottom, 0);
  worker_threads() = 4;
  Matrix four = closed_braid_trace(p, b, bottom, 0);
  worker_threads() = 1;
  CHECK((one - four).cwiseAbs().maxCoeff() == 0.0);  // bit-identical
}

TEST_CASE("scalar extraction guards non-scalar endomorphisms") {
  Matrix bad = Matrix::Identity(3, 3);
  bad(1, 1) = 2.0;
  CHECK_THROWS_AS(scalar_of(bad, "test"), NumericError);
  Matrix good = Scalar(2.0, 1.0) * Matrix::Identity(3, 3);
  CHECK(std::abs(scalar_of(good, "test") - Scalar(2.0, 1.0)) == 0.0);
}
