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
 * JSON forms of the link inputs and outputs.
 *
 * Braid closure:  {"strands": n, "word": [..], "colors": [..],
 *                  "framings": [..], "cut": idx|null}
 * Color:          {"type": "simple", "n": 1} | {"type": "typical",
 *                  "alpha": [re, im]} | {"type": "tau"} |
 *                  {"type": "kirby", "alpha": [re, im]} |
 *                  {"type": "kirby_rt", "parity": 0|1}
 * Triple:         {"strands": n, "word": [..], "components": [
 *                    {"surgery": true, "degree": [re, im], "framing": f} |
 *                    {"surgery": false, "color": {..}, "framing": f}, ..]}
 *
 * Complex numbers serialize as [re, im]; floats print with 17 significant
 * digits so identical jobs give bit-identical output.
 */

#include <cstdio>
#include <json.hpp>

#include "qtop/invariants.hpp"

namespace qtop {

using Json = nlohmann::json;

inline Json to_json(const Scalar& z) { return Json::array({z.real(), z.imag()}); }

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_number()) return Scalar(j.get<double>());
  if (j.is_array() && j.size() == 2)
    return Scalar(j[0].get<double>(), j[1].get<double>());
  throw ParseError("expected a number or [re, im] pair");
}

inline Json to_json(const ModuleTag& t) {
  switch (t.family) {
    case ModuleFamily::Simple: return {{"type", "simple"}, {"n", t.n}};
    case ModuleFamily::Typical: return {{"type", "typical"}, {"alpha", to_json(t.alpha)}};
    case ModuleFamily::Tau: return {{"type", "tau"}};
  }
  throw ContractError("to_json: unknown module family");
}

inline Color color_from_json(const QParams& p, const Json& j) {
  if (j.is_number_integer()) return ModuleTag::simple(j.get<int>());
  if (!j.is_object() || !j.contains("type"))
    throw ParseError("color: expected an object with a \"type\" field");
  std::string type = j.at("type").get<std::string>();
  if (type == "simple") return ModuleTag::simple(j.at("n").get<int>());
  if (type == "typical") return ModuleTag::typical(scalar_from_json(j.at("alpha")));
  if (type == "tau") return ModuleTag::tau();
  if (type == "kirby") return kirby_color(p, scalar_from_json(j.at("alpha")));
  if (type == "kirby_rt") return kirby_rt(p, j.at("parity").get<int>());
  throw ParseError("color: unknown type '" + type + "'");
}

inline Json to_json(const BraidWord& b) {
  return {{"strands", b.strands}, {"word", b.letters}};
}

inline BraidWord braid_from_json(const Json& j) {
  BraidWord b;
  b.strands = j.at("strands").get<int>();
  b.letters = j.at("word").get<std::vector<int>>();
  try {
    b.validate();
  } catch (const ContractError& e) {
    throw ParseError(e.what());
  }
  return b;
}

inline ColoredBraidClosure closure_from_json(const QParams& p, const Json& j) {
  ColoredBraidClosure c;
  c.braid = braid_from_json(j);
  for (const Json& cj : j.at("colors")) c.colors.push_back(color_from_json(p, cj));
  c.framings = j.at("framings").get<std::vector<int>>();
  if (j.contains("cut") && !j.at("cut").is_null())
    c.cut = j.at("cut").get<int>();
  return c;
}

inline Triple triple_from_json(const QParams& p, const Json& j) {
  Triple t;
  t.braid = braid_from_json(j);
  for (const Json& cj : j.at("components")) {
    Triple::Component comp;
    comp.surgery = cj.at("surgery").get<bool>();
    comp.framing = cj.value("framing", 0);
    if (comp.surgery) {
      comp.omega = scalar_from_json(cj.at("degree"));
    } else {
      Color col = color_from_json(p, cj.at("color"));
      if (!std::holds_alternative<ModuleTag>(col))
        throw ParseError("triple: cargo colors must be fixed modules");
      comp.color = std::get<ModuleTag>(col);
    }
    t.components.push_back(comp);
  }
  return t;
}

/// Serializes with every double printed as %.17g (nlohmann's default prints
/// shortest round-trip forms instead).
inline std::string dump_json(const Json& j, int indent = -1, int depth = 0) {
  auto pad = [&](int d) {
    return indent < 0 ? std::string() : "\n" + std::string(d * indent, ' ');
  };
  std::string out;
  switch (j.type()) {
    case Json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
      return buf;
    }
    case Json::value_t::array: {
      out = "[";
      bool first = true;
      for (const auto& el : j) {
        if (!first) out += ",";
        out += pad(depth + 1) + dump_json(el, indent, depth + 1);
        first = false;
      }
      if (!first) out += pad(depth);
      return out + "]";
    }
    case Json::value_t::object: {
      out = "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        out += pad(depth + 1) + Json(it.key()).dump() + (indent < 0 ? ":" : ": ") +
               dump_json(it.value(), indent, depth + 1);
        first = false;
      }
      if (!first) out += pad(depth);
      return out + "}";
    }
    default:
      return j.dump();
  }
}

}  // namespace qtop
