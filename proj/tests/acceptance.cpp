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

// Acceptance suite: every end-to-end identity the library promises, with
// fixed tolerances and time budgets. Prints one line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qtop/verify.hpp"

using namespace qtop;

namespace {

struct Criterion {
  std::string label;
  double tolerance;
  double time_budget_s;  // 0 = unbounded
  std::function<double()> run;  // returns max abs error
};

std::mt19937 rng(20260809);

Scalar rand_alpha() {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  return Scalar(uni(rng), uni(rng) / 4.0);
}

double rel_err(const Scalar& a, const Scalar& b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// 1. module relations, zigzag, braiding invertibility, Yang-Baxter
double run_axioms() {
  double worst = 0;
  for (int r : {3, 5, 7}) {
    QParams p(r);
    for (const CheckReport& rep : check_axioms(p)) {
      if (rep.name == "axioms/surgery_constants") continue;  // criterion 3
      worst = std::max(worst, rep.max_abs_error);
    }
  }
  return worst;
}

// 2. jones_rt vs jones_skein over all color vectors with entries <= r-1
double run_jones_equivalence() {
  double worst = 0;
  for (int r : {3, 4, 5}) {
    QParams p(r);
    for (const char* name : {"unknot", "trefoil", "figure8"}) {
      BraidWord k = knot_table(name);
      for (int n = 0; n <= r - 1; ++n)
        worst = std::max(worst, rel_err(jones_rt(p, k, {n}, {0}),
                                        jones_skein(p, k, {n}, {0})));
    }
    BraidWord hopf = knot_table("hopf");
    for (int n1 = 0; n1 <= r - 1; ++n1)
      for (int n2 = 0; n2 <= r - 1; ++n2)
        worst = std::max(worst, rel_err(jones_rt(p, hopf, {n1, n2}, {0, 0}),
                                        jones_skein(p, hopf, {n1, n2}, {0, 0})));
  }
  return worst;
}

// 3. surgery constants: direct summation vs closed forms, conjugacy, nonzero
double run_delta() {
  double worst = 0;
  for (int r : {3, 5, 6, 7}) {
    QParams p(r);
    Scalar dp = delta_so3(p, +1), dm = delta_so3(p, -1);
    if (std::abs(dp) < 1e-9 || std::abs(dm) < 1e-9) return 1.0;
    worst = std::max(worst, std::abs(dm - std::conj(dp)));
    worst = std::max(worst, std::abs(delta_nr(p, +1) / (qnum(p, 1) * Scalar(p.r)) - dp));
    worst = std::max(worst, std::abs(-delta_nr(p, -1) / (qnum(p, 1) * Scalar(p.r)) - dm));
    Scalar rq32 = std::pow(Scalar(p.r) * p.qpow(1), 1.5);
    Scalar table = r % 4 == 1   ? Scalar(0, 1) * rq32
                   : r % 4 == 2 ? Scalar(-1, 1) * rq32
                                : -rq32;
    worst = std::max(worst, std::abs(delta_nr(p, -1) - table) / std::abs(table));
  }
  return worst;
}

// 4. bracket equality of atypical typical colors with simple colors
double run_bracket_symmetry() {
  double worst = 0;
  for (int r : {3, 5}) {
    QParams p(r);
    for (const char* name : {"trefoil", "figure8"}) {
      BraidWord b = knot_table(name);
      CheckReport rep = check_symmetry(p, b);
      worst = std::max(worst, rep.max_abs_error);
    }
  }
  return worst;
}

// 5. r-periodicity of the 0-framed bracket and the framed shift laws
double run_color_shift_laws() {
  double worst = 0;
  BraidWord tre = knot_table("trefoil");
  for (int r : {3, 5}) {
    QParams p(r);
    auto brk = [&](const Scalar& a, int f) {
      return bracket_fixed(p, tre, {ModuleTag::typical(a)}, {f}, 0);
    };
    auto fprime = [&](const Scalar& a, int f) { return mdim(p, a) * brk(a, f); };
    for (int i = 0; i < 10; ++i) {
      Scalar a = rand_alpha();
      worst = std::max(worst, rel_err(brk(a + Scalar(r), 0), brk(a, 0)));
      for (int f : {-1, 0, 1, 2}) {
        worst = std::max(
            worst, rel_err(fprime(a + Scalar(2 * r), f),
                           p.qpow(Scalar(2 * r * f) * a) * fprime(a, f)));
        Scalar iqa = p.qpow(Scalar(r) * Scalar(r) / 2.0) * p.qpow(Scalar(r) * a);
        Scalar phase = Scalar(r % 2 == 0 ? -1.0 : 1.0) * std::pow(iqa, f);
        worst = std::max(worst,
                         rel_err(fprime(a + Scalar(r), f), phase * fprime(a, f)));
      }
    }
  }
  return worst;
}

// 6. residues of F' against colored Jones values
double run_residues() {
  double worst = 0;
  for (int r : {3, 5}) {
    QParams p(r);
    for (const char* name : {"unknot", "trefoil"}) {
      BraidWord k = knot_table(name);
      for (long n : {1L, 2L, -1L, -2L}) {
        if (n % r == 0) continue;
        CheckReport rep = check_residue(p, k, n);
        worst = std::max(worst, rep.max_abs_error);
      }
    }
  }
  return worst;
}

// 7. N0 = |f|·WRT for knot surgeries; cabled-path agreement at generic alpha
double run_knot_theorem() {
  double worst = 0;
  for (int r : {3, 5}) {
    QParams p(r);
    for (const char* name : {"unknot", "trefoil"}) {
      BraidWord k = knot_table(name);
      for (int f : {-2, -1, 1, 2}) {
        for (int omega : {0, 1}) {
          Triple t;
          t.braid = k;
          t.components.push_back({true, Scalar(omega), {}, f});
          worst = std::max(worst, rel_err(nr0_knot(p, k, f, omega),
                                          Scalar(std::abs(f)) * wrt(p, t)));
        }
      }
    }
  }
  // alpha-independence of the cabled path at two generic colors
  QParams p3(3);
  BraidWord tre = knot_table("trefoil");
  Scalar c1 = nr0_knot_cabled(p3, tre, 1, 0, Scalar(0.37, 0.12));
  Scalar c2 = nr0_knot_cabled(p3, tre, 1, 0, Scalar(-0.61, 0.27));
  worst = std::max(worst, rel_err(c1, c2));
  worst = std::max(worst, rel_err(c1, nr0_knot(p3, tre, 1, 0)));
  QParams p5(5);
  worst = std::max(worst, rel_err(nr0_knot_cabled(p5, tre, -1, 1),
                                  nr0_knot(p5, tre, -1, 1)));
  return worst;
}

// 7b. the cabled path on the stabilized 3-strand trefoil: 6 cabled strands,
// tensor dimension 3^6, must agree and finish inside the budget
double run_knot_theorem_big_cable() {
  QParams p(3);
  BraidWord tre3 = parse_braid("3: 1 1 1 2");
  return rel_err(nr0_knot_cabled(p, tre3, 1, 0),
                 nr0_knot(p, knot_table("trefoil"), 1, 0));
}

// 8. f = 0 specialization of the b1 > 0 vanishing
double run_vanishing() {
  double worst = 0;
  QParams p(3);
  for (const char* name : {"unknot", "trefoil"})
    for (int omega : {0, 1})
      worst = std::max(worst,
                       std::abs(nr0_knot_limit(p, knot_table(name), 0, omega)));
  return worst;
}

// 9. Markov-move and Kirby-lift independence of the surgery invariants
double run_well_definedness() {
  double worst = 0;
  BraidWord two = parse_braid("2: 1 1 1");
  BraidWord three = parse_braid("3: 1 1 1 2");
  for (int r : {3, 5}) {
    QParams p(r);
    // WRT across presentations
    Triple t2;
    t2.braid = two;
    t2.components.push_back({true, Scalar(0), {}, 1});
    Triple t3;
    t3.braid = three;
    t3.components.push_back({true, Scalar(0), {}, 1});
    worst = std::max(worst, rel_err(wrt(p, t2), wrt(p, t3)));

    // N_r across presentations and Kirby-color lifts: trefoil surgery with
    // f=3 and the torsion degree 2/3 (a genuine class on the surgered
    // manifold), plus a cargo-carrying triple with a complex degree
    auto make = [&](const BraidWord& b, const Scalar& lift) {
      Triple t;
      t.braid = b;
      t.components.push_back({true, lift, {}, 3});
      return t;
    };
    Scalar g(2.0 / 3.0);
    Scalar v2 = nr(p, make(two, g));
    worst = std::max(worst, rel_err(v2, nr(p, make(three, g))));
    worst = std::max(worst, rel_err(v2, nr(p, make(two, g + Scalar(2)))));

    Scalar a(0.43, 0.21);
    auto hopf_triple = [&](const BraidWord& b, const Scalar& lift) {
      Triple t;
      t.braid = b;
      t.components.push_back({true, lift, {}, 1});
      t.components.push_back({false, {}, ModuleTag::typical(-a), 0});
      return t;
    };
    Scalar h1 = nr(p, hopf_triple(knot_table("hopf"), a));
    worst = std::max(worst, rel_err(h1, nr(p, hopf_triple(parse_braid("3: 1 1 2"), a))));
    worst = std::max(worst, rel_err(h1, nr(p, hopf_triple(knot_table("hopf"), a + Scalar(2)))));

    // the phi-formula across presentations
    worst = std::max(worst, rel_err(nr0_knot(p, two, 1, 0), nr0_knot(p, three, 1, 0)));
  }
  return worst;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {"1. algebra/ribbon axioms (r=3,5,7)", 1e-8, 30, run_axioms},
      {"2. colored Jones: functor path = skein path (r=3,4,5)", 1e-8, 60,
       run_jones_equivalence},
      {"3. surgery constants vs closed forms (r=3,5,6,7)", 1e-10, 0, run_delta},
      {"4. bracket symmetry V_k = S_{r-1-k} (trefoil, figure8; r=3,5)", 1e-8, 0,
       run_bracket_symmetry},
      {"5. color-shift laws of the framed bracket (trefoil; r=3,5)", 1e-7, 0,
       run_color_shift_laws},
      {"6. residues of F' vs colored Jones (unknot, trefoil; r=3,5)", 1e-4, 60,
       run_residues},
      {"7. knot surgeries: N0 = |f|.WRT and cabled-path independence", 1e-7, 0,
       run_knot_theorem},
      {"7b. cabled path on the 3-strand presentation (dimension 3^6)", 1e-7, 120,
       run_knot_theorem_big_cable},
      {"8. vanishing at f=0 (unknot, trefoil; r=3)", 1e-6, 0, run_vanishing},
      {"9. Markov and Kirby-lift independence (r=3,5)", 1e-7, 0,
       run_well_definedness},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    double err = -1;
    std::string note;
    try {
      err = c.run();
    } catch (const std::exception& e) {
      note = std::string(" exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                      .count();
    bool ok = note.empty() && err <= c.tolerance &&
              (c.time_budget_s == 0 || secs <= c.time_budget_s);
    if (!ok) ++failures;
    std::printf("[%s] %s  (max err %.3e, tol %.0e, %.1fs)%s\n",
                ok ? "PASS" : "FAIL", c.label.c_str(), err, c.tolerance, secs,
                note.c_str());
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  else std::printf("all %zu criteria passed\n", criteria.size());
  return failures == 0 ? 0 : 1;
}
