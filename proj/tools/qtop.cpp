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

// qtop: colored Jones, ADO-type link invariants and surgery invariants of
// 3-manifolds from braid closures, plus the numeric verification suites.
//
// Exit codes: 0 ok, 2 parse error, 3 contract violation, 4 numeric failure.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "qtop/verify.hpp"

using namespace qtop;

namespace {

struct Output {
  std::string path;  // empty = stdout
  void emit(const Json& j) const {
    std::string text = dump_json(j, 2) + "\n";
    if (path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(path);
      if (!f) throw std::runtime_error("cannot write " + path);
      f << text;
    }
  }
};

Scalar parse_scalar(const std::string& text) {
  // "re" or "re,im"
  size_t comma = text.find(',');
  try {
    if (comma == std::string::npos) return Scalar(std::stod(text));
    return Scalar(std::stod(text.substr(0, comma)),
                  std::stod(text.substr(comma + 1)));
  } catch (const std::exception&) {
    throw ParseError("expected a complex number as re[,im], got '" + text + "'");
  }
}

BraidWord braid_arg(const std::string& knot, const std::string& braid) {
  if (!knot.empty() && !braid.empty())
    throw ParseError("give either --knot or --braid, not both");
  if (!knot.empty()) return knot_table(knot);
  if (!braid.empty()) return parse_braid(braid);
  throw ParseError("a link is required (--knot or --braid)");
}

/// "name:framing", e.g. "unknot:+1", "trefoil:-2".
std::pair<BraidWord, int> parse_surgery(const std::string& text) {
  size_t colon = text.rfind(':');
  if (colon == std::string::npos)
    throw ParseError("surgery spec must be name:framing, got '" + text + "'");
  std::string name = text.substr(0, colon);
  int f = 0;
  try {
    f = std::stoi(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ParseError("bad framing in surgery spec '" + text + "'");
  }
  return {knot_table(name), f};
}

Json load_json(const std::string& arg) {
  // inline JSON if it starts with '{', else a file path
  try {
    if (!arg.empty() && arg.front() == '{') return Json::parse(arg);
    std::ifstream f(arg);
    if (!f) throw ParseError("cannot read " + arg);
    return Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("bad JSON: ") + e.what());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"quantum sl2 link and 3-manifold invariants at roots of unity"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  int r = 5;
  int threads = 1;
  Output out;
  app.add_option("--r", r, "order of the root of unity, q = exp(i*pi/r)")
      ->check(CLI::Range(2, 64));
  app.add_option("--threads", threads, "worker cap for trace batches");
  app.add_option("--out", out.path, "write JSON here instead of stdout");

  // ---- jones ----
  auto* jones = app.add_subcommand("jones", "colored Jones value of a framed link");
  std::string j_knot, j_braid, j_json, j_method = "rt";
  std::vector<int> j_colors, j_framings;
  bool j_both = false;
  jones->add_option("--knot", j_knot, "table knot: unknot|trefoil|figure8|hopf");
  jones->add_option("--braid", j_braid, "braid word, e.g. \"2: 1 1 1\"");
  jones->add_option("--json", j_json, "colored closure as JSON (inline or file)");
  jones->add_option("--colors", j_colors, "one color 0..r-1 per component");
  jones->add_option("--framings", j_framings, "framings (default all 0)");
  jones->add_option("--method", j_method, "rt | skein")
      ->check(CLI::IsMember({"rt", "skein"}));
  jones->add_flag("--both", j_both, "evaluate both paths and cross-check");

  // ---- ado ----
  auto* ado = app.add_subcommand("ado", "ADO-type invariant F' of a link");
  std::string a_knot, a_braid, a_json, a_alpha = "0.5", a_grid;
  int a_framing = 0;
  ado->add_option("--knot", a_knot, "table knot");
  ado->add_option("--braid", a_braid, "braid word");
  ado->add_option("--json", a_json, "colored closure as JSON (inline or file)");
  ado->add_option("--alpha", a_alpha, "typical color, re[,im]");
  ado->add_option("--framing", a_framing, "framing of the knot");
  ado->add_option("--grid", a_grid,
                  "sample alpha over start:stop:count (for pole plots)");

  // ---- nr0 ----
  auto* nr0c = app.add_subcommand("nr0", "N0_r of surgery on a framed knot");
  std::string n_knot, n_braid, n_method = "phi", n_alpha;
  int n_f = 1, n_omega = 0;
  nr0c->add_option("--knot", n_knot, "table knot");
  nr0c->add_option("--braid", n_braid, "braid word (must close to a knot)");
  nr0c->add_option("--f", n_f, "surgery framing (nonzero)")->required();
  nr0c->add_option("--omega", n_omega, "class parity 0|1")->check(CLI::Range(0, 1));
  nr0c->add_option("--method", n_method, "phi | cabled | both")
      ->check(CLI::IsMember({"phi", "cabled", "both"}));
  nr0c->add_option("--alpha", n_alpha, "generic color for the cabled path");

  // ---- wrt ----
  auto* wrtc = app.add_subcommand("wrt", "refined WRT invariant of a triple");
  std::string w_surgery, w_link;
  int w_omega = 0;
  bool w_so3 = false;
  wrtc->add_option("--surgery", w_surgery, "knot surgery, name:framing");
  wrtc->add_option("--omega", w_omega, "class parity 0|1 for --surgery")
      ->check(CLI::Range(0, 1));
  wrtc->add_option("--link", w_link, "triple as JSON (inline or file)");
  wrtc->add_flag("--so3", w_so3, "force all degrees to 0 (the SO(3) invariant)");

  // ---- nr ----
  auto* nrc = app.add_subcommand("nr", "N_r of a computable triple");
  std::string q_surgery, q_degree, q_link;
  nrc->add_option("--surgery", q_surgery, "knot surgery, name:framing");
  nrc->add_option("--degree", q_degree, "surgery degree lift, re[,im]");
  nrc->add_option("--link", q_link, "triple as JSON (inline or file)");

  // ---- verify ----
  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string v_suite = "all", v_knot = "trefoil";
  int v_f = 1, v_omega = 0;
  ver->add_option("suite", v_suite,
                  "residue | symmetry | knot-theorem | vanishing | axioms | all")
      ->check(CLI::IsMember(
          {"residue", "symmetry", "knot-theorem", "vanishing", "axioms", "all"}));
  ver->add_option("--knot", v_knot, "knot for the link-level suites");
  ver->add_option("--f", v_f, "framing for the knot-theorem suite");
  ver->add_option("--omega", v_omega, "parity for the knot-theorem suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  worker_threads() = std::max(1, threads);
  QParams p(r);

  if (jones->parsed()) {
    BraidWord b;
    if (!j_json.empty()) {
      ColoredBraidClosure c = closure_from_json(p, load_json(j_json));
      b = c.braid;
      j_framings = c.framings;
      j_colors.clear();
      for (const Color& col : c.colors) {
        const ModuleTag* tag = std::get_if<ModuleTag>(&col);
        if (!tag || tag->family != ModuleFamily::Simple)
          throw ContractError("jones: JSON colors must all be simple modules");
        j_colors.push_back(tag->n);
      }
    } else {
      b = braid_arg(j_knot, j_braid);
    }
    if (j_colors.empty()) throw ParseError("jones: --colors is required");
    ClosureInfo info = closure_components(b);
    if (j_framings.empty()) j_framings.assign(info.n_components, 0);
    Json res;
    if (j_both) {
      Scalar vrt = jones_rt(p, b, j_colors, j_framings);
      Scalar vsk = jones_skein(p, b, j_colors, j_framings);
      if (!approx_equal(vrt, vsk, std::max(1e-8, default_tolerance())))
        throw NumericError("jones: functor and skein paths disagree");
      res = {{"value", to_json(vrt)},
             {"path", "both"},
             {"skein_value", to_json(vsk)}};
    } else if (j_method == "skein") {
      res = {{"value", to_json(jones_skein(p, b, j_colors, j_framings))},
             {"path", "skein"}};
    } else {
      res = {{"value", to_json(jones_rt(p, b, j_colors, j_framings))},
             {"path", "rt"}};
    }
    out.emit(res);
    return 0;
  }

  if (ado->parsed()) {
    if (!a_json.empty()) {
      // general closures: evaluate F' as given (cut honored)
      ColoredBraidClosure c = closure_from_json(p, load_json(a_json));
      out.emit({{"value", to_json(F_prime(p, c))}});
      return 0;
    }
    BraidWord b = braid_arg(a_knot, a_braid);
    ClosureInfo info = closure_components(b);
    if (info.n_components != 1)
      throw ContractError("ado: the braid must close to a knot");
    auto fprime = [&](const Scalar& alpha) {
      ColoredBraidClosure c;
      c.braid = b;
      c.colors = {Color(ModuleTag::typical(alpha))};
      c.framings = {a_framing};
      return F_prime(p, c);
    };
    if (a_grid.empty()) {
      Scalar alpha = parse_scalar(a_alpha);
      out.emit({{"value", to_json(fprime(alpha))}, {"alpha", to_json(alpha)}});
      return 0;
    }
    // grid mode: start:stop:count along the real axis
    double start, stop;
    int count;
    if (std::sscanf(a_grid.c_str(), "%lf:%lf:%d", &start, &stop, &count) != 3 ||
        count < 2)
      throw ParseError("grid must be start:stop:count with count >= 2");
    Json samples = Json::array();
    for (int i = 0; i < count; ++i) {
      Scalar alpha(start + (stop - start) * i / (count - 1));
      Json entry = {{"alpha", to_json(alpha)}};
      try {
        entry["value"] = to_json(fprime(alpha));
      } catch (const ContractError&) {
        entry["value"] = nullptr;  // pole of the modified dimension
      }
      samples.push_back(entry);
    }
    out.emit({{"samples", samples}});
    return 0;
  }

  if (nr0c->parsed()) {
    BraidWord b = braid_arg(n_knot, n_braid);
    Json res{{"f", n_f}, {"omega", n_omega}, {"r", r}};
    if (n_method == "phi" || n_method == "both")
      res["value"] = to_json(nr0_knot(p, b, n_f, n_omega));
    if (n_method == "cabled" || n_method == "both") {
      std::optional<Scalar> alpha;
      if (!n_alpha.empty()) alpha = parse_scalar(n_alpha);
      Scalar cv = nr0_knot_cabled(p, b, n_f, n_omega, alpha);
      res["cabled_value"] = to_json(cv);
      if (n_method == "cabled") res["value"] = to_json(cv);
      if (n_method == "both") {
        Scalar v = scalar_from_json(res["value"]);
        if (!approx_equal(v, cv, std::max(1e-7, default_tolerance())))
          throw NumericError("nr0: phi-formula and cabled paths disagree");
      }
    }
    out.emit(res);
    return 0;
  }

  if (wrtc->parsed()) {
    Triple t;
    if (!w_link.empty()) {
      t = triple_from_json(p, load_json(w_link));
    } else if (!w_surgery.empty()) {
      auto [braid, f] = parse_surgery(w_surgery);
      t.braid = braid;
      t.components.push_back({true, Scalar(w_omega), {}, f});
    }  // neither: the empty triple, S^3
    Scalar v = w_so3 ? wrt_so3(p, t) : wrt(p, t);
    out.emit({{"value", to_json(v)}, {"r", r}});
    return 0;
  }

  if (nrc->parsed()) {
    Triple t;
    if (!q_link.empty()) {
      t = triple_from_json(p, load_json(q_link));
    } else if (!q_surgery.empty()) {
      if (q_degree.empty()) throw ParseError("nr --surgery needs --degree");
      auto [braid, f] = parse_surgery(q_surgery);
      t.braid = braid;
      t.components.push_back({true, parse_scalar(q_degree), {}, f});
    } else {
      throw ParseError("nr needs --link or --surgery");
    }
    out.emit({{"value", to_json(nr(p, t))}, {"r", r}});
    return 0;
  }

  // verify
  BraidWord knot = knot_table(v_knot);
  std::vector<CheckReport> reports;
  bool skipped_3m = false;
  auto want = [&](const char* name) { return v_suite == "all" || v_suite == name; };
  if (want("axioms"))
    for (CheckReport& rep : check_axioms(p)) reports.push_back(std::move(rep));
  if (want("residue")) {
    for (long n : {1L, 2L, -1L, -2L})
      if (n % r != 0) reports.push_back(check_residue(p, knot, n));
  }
  if (want("symmetry")) reports.push_back(check_symmetry(p, knot));
  if (want("knot-theorem")) {
    if (r % 4 == 0) skipped_3m = true;
    else reports.push_back(check_knot_theorem(p, knot, v_f, v_omega));
  }
  if (want("vanishing")) {
    if (r % 4 == 0) skipped_3m = true;
    else reports.push_back(check_vanishing_f0(p, knot, v_omega));
  }
  Json jreports = Json::array();
  bool all_pass = true;
  for (const CheckReport& rep : reports) {
    jreports.push_back(to_json(rep));
    all_pass = all_pass && rep.pass;
    std::fprintf(stderr, "[%s] %-28s max err %.3e (tol %.0e)\n",
                 rep.pass ? "PASS" : "FAIL", rep.name.c_str(), rep.max_abs_error,
                 rep.tolerance);
  }
  if (skipped_3m)
    std::fprintf(stderr,
                 "note: 3-manifold suites skipped, r=%d is divisible by 4\n", r);
  out.emit({{"reports", jreports}, {"pass", all_pass}});
  return all_pass ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
