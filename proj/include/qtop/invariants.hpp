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
 * The link and 3-manifold invariants: (1-1)-tangle brackets ⟨T⟩, the
 * functor value F, its modified-dimension extension F′, the colored Jones
 * polynomial along two independent paths, and the surgery invariants
 * N_r, N⁰_r, WRT_r and WRT^SO(3).
 */

#include <optional>
#include <variant>

#include "qtop/ribbon.hpp"
#include "qtop/skein.hpp"

namespace qtop {

/// A component color: a fixed weight module or a formal (Kirby) combination.
using Color = std::variant<ModuleTag, FormalColor>;

/**
 * A braid closure with per-component colors and framings. Components are
 * the cycles of the closure permutation, numbered by smallest strand; `cut`
 * marks the component opened into a (1-1)-tangle for bracket evaluation.
 */
struct ColoredBraidClosure {
  BraidWord braid;
  std::vector<Color> colors;
  std::vector<int> framings;
  std::optional<int> cut;
};

inline LinkingData linking_data(const ColoredBraidClosure& c) {
  return linking_data(closure_components(c.braid), c.framings);
}

namespace detail {

inline Scalar int_pow(const Scalar& z, int n) {
  return std::pow(z, n);
}

/// C/2Z-grading of a module color: the common parity of its weights.
inline Scalar color_grading(const QParams& p, const ModuleTag& tag) {
  switch (tag.family) {
    case ModuleFamily::Simple: return Scalar(tag.n);
    case ModuleFamily::Typical: return tag.alpha + Scalar(p.r - 1);
    case ModuleFamily::Tau: return Scalar(p.r);
  }
  throw ContractError("color_grading: unknown module family");
}

}  // namespace detail

/**
 * The bracket ⟨T⟩: the proportionality scalar of the (1-1)-tangle obtained
 * by cutting the marked component open. All colors must be fixed modules
 * (every constructible color is absolutely irreducible, so F(T) = ⟨T⟩·Id;
 * a non-scalar result raises NumericError). Framing corrections θ^{f−w} are
 * applied for every component, the cut one included.
 */
inline Scalar bracket_fixed(const QParams& p, const BraidWord& braid,
                            const std::vector<ModuleTag>& colors,
                            const std::vector<int>& framings, int cut) {
  ClosureInfo info = closure_components(braid);
  int nc = info.n_components;
  if (static_cast<int>(colors.size()) != nc ||
      static_cast<int>(framings.size()) != nc)
    throw ContractError("bracket: one color and framing per component");
  if (cut < 0 || cut >= nc) throw ContractError("bracket: cut component out of range");

  int pos = 0;
  while (info.comp_of_strand[pos] != cut) ++pos;
  BraidWord word = pos == 0 ? braid : conjugate_to_front(braid, pos);
  std::vector<int> u = conjugator_perm(pos, braid.strands);
  ClosureInfo cinfo = pos == 0 ? info : closure_components(word);

  std::vector<WeightModule> modules;
  modules.reserve(nc);
  for (const ModuleTag& t : colors) modules.push_back(make_module(p, t));
  std::vector<const WeightModule*> bottom(braid.strands);
  for (int j = 0; j < braid.strands; ++j)
    bottom[j] = &modules[info.comp_of_strand[u[j]]];

  Scalar s = scalar_of(closed_braid_trace(p, word, bottom, 0), "bracket");

  // diagram writhes of the (possibly conjugated) word, per original component
  std::vector<int> w(nc, 0);
  for (int j = 0; j < braid.strands; ++j)
    w[info.comp_of_strand[u[j]]] = cinfo.writhe[cinfo.comp_of_strand[j]];
  for (int c = 0; c < nc; ++c)
    s *= detail::int_pow(twist_formula(p, colors[c]), framings[c] - w[c]);
  return s;
}

namespace detail {

/// Expands formal colors multilinearly: calls fn(coefficient, fixed colors)
/// for every assignment, in deterministic term order.
template <typename Fn>
inline void expand_colors(const std::vector<Color>& colors, Fn&& fn) {
  std::vector<ModuleTag> fixed(colors.size());
  std::vector<int> idx(colors.size(), 0);
  while (true) {
    Scalar coeff = 1;
    for (size_t c = 0; c < colors.size(); ++c) {
      if (const ModuleTag* t = std::get_if<ModuleTag>(&colors[c])) {
        fixed[c] = *t;
      } else {
        const FormalColor& fc = std::get<FormalColor>(colors[c]);
        if (fc.terms.empty()) return;  // empty combination: everything is 0
        coeff *= fc.terms[idx[c]].coeff;
        fixed[c] = fc.terms[idx[c]].module;
      }
    }
    fn(coeff, fixed);
    size_t c = 0;
    for (; c < colors.size(); ++c) {
      const FormalColor* fc = std::get_if<FormalColor>(&colors[c]);
      if (!fc) continue;
      if (++idx[c] < static_cast<int>(fc->terms.size())) break;
      idx[c] = 0;
    }
    if (c == colors.size()) break;
  }
}

}  // namespace detail

/// Bracket of a closure whose colors are all fixed modules.
inline Scalar bracket(const QParams& p, const ColoredBraidClosure& c) {
  if (!c.cut) throw ContractError("bracket: a cut component must be marked");
  std::vector<ModuleTag> tags;
  for (const Color& col : c.colors) {
    if (!std::holds_alternative<ModuleTag>(col))
      throw ContractError("bracket: formal colors must be expanded upstream");
    tags.push_back(std::get<ModuleTag>(col));
  }
  return bracket_fixed(p, c.braid, tags, c.framings, *c.cut);
}

/**
 * F of a closed colored link: qdim(color of the cut component)·⟨T⟩, expanded
 * multilinearly over formal colors. The value is independent of the choice
 * of cut; component 0 is used unless c.cut says otherwise.
 */
inline Scalar F_closed(const QParams& p, const ColoredBraidClosure& c) {
  int cut = c.cut.value_or(0);
  if (cut < 0 || cut >= static_cast<int>(c.colors.size()))
    throw ContractError("F: cut component out of range");
  Scalar total = 0;
  detail::expand_colors(c.colors, [&](const Scalar& coeff,
                                      const std::vector<ModuleTag>& fixed) {
    Scalar qd = qdim(make_module(p, fixed[cut]));
    if (std::abs(qd) < 1e-13) return;  // typical cut: the term is exactly 0
    total += coeff * qd * bracket_fixed(p, c.braid, fixed, c.framings, cut);
  });
  return total;
}

/**
 * F′: mdim(α)·⟨T_{V_α}⟩ with the cut on a typical component. If c.cut is
 * set it must be typical in every expanded assignment; otherwise a fixed
 * typical component is preferred, falling back to any component that is
 * typical in the assignment at hand.
 */
inline Scalar F_prime(const QParams& p, const ColoredBraidClosure& c) {
  if (c.cut && (*c.cut < 0 || *c.cut >= static_cast<int>(c.colors.size())))
    throw ContractError("F_prime: cut component out of range");
  int preferred = -1;
  if (!c.cut) {
    for (size_t i = 0; i < c.colors.size() && preferred < 0; ++i)
      if (const ModuleTag* t = std::get_if<ModuleTag>(&c.colors[i]))
        if (is_typical(p, *t)) preferred = static_cast<int>(i);
  }
  Scalar total = 0;
  detail::expand_colors(c.colors, [&](const Scalar& coeff,
                                      const std::vector<ModuleTag>& fixed) {
    int cut = c.cut.value_or(preferred);
    if (cut < 0)
      for (size_t i = 0; i < fixed.size() && cut < 0; ++i)
        if (is_typical(p, fixed[i])) cut = static_cast<int>(i);
    if (cut < 0 || !is_typical(p, fixed[cut]))
      throw ContractError(
          "F_prime: needs a typical component to cut (atypical or integral "
          "colors only)");
    total += coeff * mdim(p, fixed[cut].alpha) *
             bracket_fixed(p, c.braid, fixed, c.framings, cut);
  });
  return total;
}

/// Colored Jones value through the functor: F of the closure with simple
/// colors S_{n_i}.
inline Scalar jones_rt(const QParams& p, const BraidWord& braid,
                       const std::vector<int>& colors,
                       const std::vector<int>& framings) {
  ColoredBraidClosure c{braid, {}, framings, std::nullopt};
  for (int n : colors) {
    if (n < 0 || n > p.r - 1)
      throw ContractError("jones_rt: colors must satisfy 0 <= n <= r-1");
    c.colors.emplace_back(ModuleTag::simple(n));
  }
  return F_closed(p, c);
}

// ---------------------------------------------------------------------------
// Surgery triples and 3-manifold invariants
// ---------------------------------------------------------------------------

/**
 * A surgery presentation of a triple (M, T, ω): a braid closure whose
 * components are either surgery components (carrying an explicit complex
 * lift of their ω-degree) or cargo components (carrying a fixed color).
 */
struct Triple {
  struct Component {
    bool surgery = false;
    Scalar omega{};     // degree lift, surgery components only
    ModuleTag color{};  // cargo components only
    int framing = 0;
  };
  BraidWord braid;
  std::vector<Component> components;
};

namespace detail {

struct TripleInfo {
  ClosureInfo closure;
  std::vector<int> surgery_idx;
  Eigen::MatrixXi lk;      // full linking matrix with framings on diagonal
  int sig_pos = 0, sig_neg = 0;  // signature of the surgery submatrix
};

inline TripleInfo analyze_triple(const Triple& t, bool integral_omega) {
  TripleInfo ti;
  ti.closure = closure_components(t.braid);
  if (static_cast<int>(t.components.size()) != ti.closure.n_components)
    throw ContractError("triple: one component entry per closure component");
  int nc = ti.closure.n_components;
  std::vector<int> framings(nc);
  for (int i = 0; i < nc; ++i) framings[i] = t.components[i].framing;
  ti.lk = ti.closure.cross_sum / 2;
  for (int i = 0; i < nc; ++i) ti.lk(i, i) = framings[i];

  for (int i = 0; i < nc; ++i) {
    const auto& comp = t.components[i];
    if (comp.surgery) {
      if (integral_omega) {
        if (!near_integer(comp.omega))
          throw ContractError("triple: WRT needs omega-degrees in Z/2Z");
      } else if (near_integer(comp.omega)) {
        throw ContractError(
            "triple: computable presentations need surgery degrees outside "
            "Z/2Z (got an integral degree)");
      }
      ti.surgery_idx.push_back(i);
    }
  }

  // Signature of the surgery linking matrix.
  int ns = static_cast<int>(ti.surgery_idx.size());
  if (ns > 0) {
    Eigen::MatrixXd a(ns, ns);
    for (int i = 0; i < ns; ++i)
      for (int j = 0; j < ns; ++j)
        a(i, j) = ti.lk(ti.surgery_idx[i], ti.surgery_idx[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    for (int i = 0; i < ns; ++i) {
      if (es.eigenvalues()[i] > 1e-9) ++ti.sig_pos;
      else if (es.eigenvalues()[i] < -1e-9) ++ti.sig_neg;
    }
  }
  return ti;
}

}  // namespace detail

/**
 * Refined WRT invariant: every surgery component colored by Ω^RT of its
 * ω-parity, cargo colored as given, F of the whole closure divided by
 * (Δ^SO(3)+)^p (Δ^SO(3)−)^s. An empty triple denotes S³ and gives 1.
 */
inline Scalar wrt(const QParams& p, const Triple& t) {
  p.require_not_4z("wrt");
  if (t.components.empty()) return 1.0;
  detail::TripleInfo ti = detail::analyze_triple(t, /*integral_omega=*/true);

  ColoredBraidClosure link;
  link.braid = t.braid;
  for (const auto& comp : t.components) {
    link.framings.push_back(comp.framing);
    if (comp.surgery) {
      long g = std::lround(comp.omega.real());
      link.colors.emplace_back(kirby_rt(p, ((g % 2) + 2) % 2));
    } else {
      if (comp.color.family == ModuleFamily::Typical)
        throw ContractError("wrt: cargo must be colored in the S-family");
      link.colors.emplace_back(comp.color);
    }
  }
  Scalar val = F_closed(p, link);
  val /= detail::int_pow(delta_so3(p, +1), ti.sig_pos);
  val /= detail::int_pow(delta_so3(p, -1), ti.sig_neg);
  return val;
}

/// WRT^SO(3): the refined invariant with every ω-degree zero.
inline Scalar wrt_so3(const QParams& p, Triple t) {
  for (auto& comp : t.components)
    if (comp.surgery) comp.omega = 0.0;
  return wrt(p, t);
}

/**
 * N_r: every surgery component colored by the Kirby color Ω at its degree
 * lift, F′ expanded multilinearly, divided by Δ+^p Δ−^s. Requires a
 * computable presentation of a genuine triple: non-integral surgery
 * degrees (or no surgery components and a typical cargo color), and
 * degrees that extend over the surgery handles to a class ω on M∖T, i.e.
 * Σ_j lk(L_i, ·)·g_j ≡ 0 mod 2 for every surgery component. Without the
 * latter the weighted sum is not slide- or lift-independent.
 */
inline Scalar nr(const QParams& p, const Triple& t) {
  p.require_not_4z("nr");
  detail::TripleInfo ti = detail::analyze_triple(t, /*integral_omega=*/false);

  int nc = static_cast<int>(t.components.size());
  std::vector<Scalar> grading(nc);
  for (int i = 0; i < nc; ++i)
    grading[i] = t.components[i].surgery
                     ? t.components[i].omega
                     : detail::color_grading(p, t.components[i].color);
  for (int i : ti.surgery_idx) {
    Scalar rel = 0;
    for (int j = 0; j < nc; ++j) rel += Scalar(ti.lk(i, j)) * grading[j];
    if (!near_integer(rel / 2.0, nullptr, 1e-7))
      throw ContractError(
          "nr: presentation is not computable (the degrees do not extend to "
          "a cohomology class over the surgery)");
  }

  ColoredBraidClosure link;
  link.braid = t.braid;
  bool has_typical_cargo = false;
  for (const auto& comp : t.components) {
    link.framings.push_back(comp.framing);
    if (comp.surgery) {
      link.colors.emplace_back(kirby_color(p, comp.omega));
    } else {
      link.colors.emplace_back(comp.color);
      if (is_typical(p, comp.color)) has_typical_cargo = true;
    }
  }
  if (ti.surgery_idx.empty() && !has_typical_cargo)
    throw ContractError(
        "nr: presentation is not computable (empty surgery link and no "
        "typical cargo color)");
  Scalar val = F_prime(p, link);
  val /= detail::int_pow(delta_nr(p, +1), ti.sig_pos);
  val /= detail::int_pow(delta_nr(p, -1), ti.sig_neg);
  return val;
}

// ---------------------------------------------------------------------------
// N⁰_r for knot surgeries
// ---------------------------------------------------------------------------

namespace detail {

inline int omega_parity_e(const QParams& p, int omega) {
  if (omega != 0 && omega != 1)
    throw ContractError("nr0: omega must be 0 or 1");
  return ((p.r - 1 + omega) % 2 + 2) % 2;
}

inline void require_knot(const ClosureInfo& info, const char* what) {
  if (info.n_components != 1)
    throw ContractError(std::string(what) + ": surgery braid must close to a knot");
}

}  // namespace detail

/**
 * N⁰_r of the manifold obtained by f-surgery (f ≠ 0) on a knot K, through
 * the closed formula c·Σ_{n=0}^{r−1} φ_e(2n+e) with c = rf/({1}Δ_sign(f))
 * and φ_e(k) = (q^k−q^e)·{k}·⟨T_{V_k}⟩, where ⟨T_{V_k}⟩ is the f-framed
 * bracket of K (the 0-framed bracket times θ_k^f) and ē = r−1+ω in Z/2Z.
 */
inline Scalar nr0_knot(const QParams& p, const BraidWord& knot, int f, int omega) {
  p.require_not_4z("nr0_knot");
  if (f == 0)
    throw ContractError("nr0_knot: framing must be nonzero (see nr0_knot_limit)");
  detail::require_knot(closure_components(knot), "nr0_knot");
  int e = detail::omega_parity_e(p, omega);
  Scalar sum = 0;
  for (int n = 0; n < p.r; ++n) {
    int k = 2 * n + e;
    Scalar qk = qnum(p, k);
    if (std::abs(qk) < 1e-14) continue;  // φ_e(0) = φ_e(r) = 0
    Scalar tk = bracket_fixed(p, knot, {ModuleTag::typical(Scalar(k))}, {f}, 0);
    sum += (p.qpow(k) - p.qpow(e)) * qk * tk;
  }
  Scalar c = Scalar(p.r) * Scalar(f) /
             (qnum(p, 1) * delta_nr(p, f > 0 ? +1 : -1));
  return c * sum;
}

/**
 * The same invariant through its defining presentation: slide the typical
 * unknot across the surgery knot, producing the 2-cable DK with one copy
 * colored V_α and the other carrying the Kirby color Ω_{e−α};
 *   N⁰_r = Σ_{h∈H_r} d(e−α+h)·F′(DK_{(V_α, V_{e−α+h})}) / (Δ_sign(f)·d(α)).
 * The result is independent of the generic α.
 */
inline Scalar nr0_knot_cabled(const QParams& p, const BraidWord& knot, int f,
                              int omega,
                              std::optional<Scalar> alpha_opt = std::nullopt) {
  p.require_not_4z("nr0_knot_cabled");
  if (f == 0) throw ContractError("nr0_knot_cabled: framing must be nonzero");
  ClosureInfo info = closure_components(knot);
  detail::require_knot(info, "nr0_knot_cabled");
  int e = detail::omega_parity_e(p, omega);

  auto degenerate = [&](const Scalar& a) {
    if (near_integer(a, nullptr, 0.02)) return true;
    for (int h : hr_set(p))
      if (near_integer(Scalar(e + h) - a, nullptr, 0.02)) return true;
    return false;
  };
  Scalar alpha;
  if (alpha_opt) {
    alpha = *alpha_opt;
    if (degenerate(alpha))
      throw ContractError("nr0_knot_cabled: alpha is too close to the "
                          "degenerate set X_r");
  } else {
    alpha = Scalar(0.3141, 0.1);
    if (degenerate(alpha)) alpha = Scalar(0.2718, 0.13);
  }

  BraidWord dk = cable2(knot, f - info.writhe[0]);
  Scalar sum = 0;
  for (int h : hr_set(p)) {
    Scalar beta = Scalar(e + h) - alpha;
    ColoredBraidClosure link;
    link.braid = dk;
    link.colors = {Color(ModuleTag::typical(alpha)), Color(ModuleTag::typical(beta))};
    link.framings = {f, f};
    link.cut = 0;
    sum += mdim(p, beta) * F_prime(p, link);
  }
  return sum / (delta_nr(p, f > 0 ? +1 : -1) * mdim(p, alpha));
}

/**
 * ε-limit evaluation of N⁰_r through the continuous extension of
 * P(α) = Σ_{k∈H_r} F′(K_{V_{α+k}}): two-point Richardson extrapolation of
 * S(ε) = Σ_{ℓ∈H_r} q^{ℓ+e} P(ε+ℓ+e). Defined for every framing; for f = 0
 * (a presentation with b₁ > 0) the limit is 0. Verification oracle.
 */
inline Scalar nr0_knot_limit(const QParams& p, const BraidWord& knot, int f,
                             int omega) {
  p.require_not_4z("nr0_knot_limit");
  detail::require_knot(closure_components(knot), "nr0_knot_limit");
  int e = detail::omega_parity_e(p, omega);
  auto P = [&](const Scalar& x) {
    Scalar sum = 0;
    for (int k : hr_set(p)) {
      Scalar a = x + Scalar(k);
      sum += mdim(p, a) *
             bracket_fixed(p, knot, {ModuleTag::typical(a)}, {f}, 0);
    }
    return sum;
  };
  auto S = [&](double eps) {
    Scalar sum = 0;
    for (int l : hr_set(p))
      sum += p.qpow(l + e) * P(Scalar(eps) + Scalar(l + e));
    return sum;
  };
  Scalar s0 = (10.0 * S(1e-4) - S(1e-3)) / 9.0;  // poles are simple
  Scalar divisor = f == 0 ? Scalar(1.0) : delta_nr(p, f > 0 ? +1 : -1);
  return (omega % 2 == 0 ? 1.0 : -1.0) * s0 / divisor;
}

/// Connected sums of knot surgeries multiply; the empty sum is S³.
inline Scalar nr0_connected_sum(
    const QParams& p,
    const std::vector<std::tuple<BraidWord, int, int>>& pieces) {
  Scalar prod = 1.0;
  for (const auto& [knot, f, omega] : pieces)
    prod *= nr0_knot(p, knot, f, omega);
  return prod;
}

}  // namespace qtop
