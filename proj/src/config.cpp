// Copyright 2026 The biphoton authors
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

#include "biphoton/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ValidationError("unknown config key '" + key + "' in " + where);
    }
  }
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ValidationError("config: " + where + " requires numeric field '" + key + "'");
  }
  return obj[key].get<double>();
}

}  // namespace

Convention parse_convention(const std::string& name) {
  if (name == "matched") return Convention::matched;
  if (name == "paper-literal") return Convention::paper_literal;
  throw ValidationError("convention must be 'matched' or 'paper-literal', got '" + name + "'");
}

BeamGeometry RunConfig::resolved_geometry() const {
  if (geometry) return *geometry;
  if (crystal) return derive_widths(*crystal);
  throw ValidationError("config provides neither 'crystal' nor 'geometry'");
}

MergedWidths RunConfig::resolved_widths(Convention conv) const {
  if (widths) {
    if (!((*widths)[0] > 0.0) || !((*widths)[1] > 0.0)) {
      throw ValidationError("config: widths a, b must be positive");
    }
    return {(*widths)[0], (*widths)[1], conv};
  }
  return merged_widths(resolved_geometry(), conv);
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config root must be a JSON object");

  reject_unknown_keys(j,
                      {"schema", "crystal", "geometry", "widths", "kind", "grid", "n_max",
                       "convention", "both_conventions", "seed", "tol", "fig4_ratio", "out",
                       "qutrit"},
                      "the top level");
  if (!j.contains("schema") || !j["schema"].is_number_integer() || j["schema"].get<int>() != 1) {
    throw ValidationError("config requires 'schema': 1");
  }

  RunConfig cfg;

  if (j.contains("crystal") && j.contains("geometry")) {
    throw ValidationError("config: 'crystal' and 'geometry' are mutually exclusive");
  }
  if (j.contains("crystal")) {
    const auto& c = j["crystal"];
    reject_unknown_keys(c, {"lambda_p", "n_o", "n_e", "n_0", "L", "d"}, "'crystal'");
    CrystalOpticalParams p{};
    p.lambda_p = require_number(c, "lambda_p", "crystal");
    p.n_o = require_number(c, "n_o", "crystal");
    p.n_e = require_number(c, "n_e", "crystal");
    p.n_0 = require_number(c, "n_0", "crystal");
    p.L = require_number(c, "L", "crystal");
    p.d = require_number(c, "d", "crystal");
    p.validate();
    cfg.crystal = p;
  }
  if (j.contains("geometry")) {
    const auto& g = j["geometry"];
    reject_unknown_keys(g, {"delta_theta_p", "delta_theta_L", "theta_0"}, "'geometry'");
    cfg.geometry = BeamGeometry(require_number(g, "delta_theta_p", "geometry"),
                                require_number(g, "delta_theta_L", "geometry"),
                                require_number(g, "theta_0", "geometry"));
  }
  if (j.contains("widths")) {
    const auto& w = j["widths"];
    reject_unknown_keys(w, {"a", "b"}, "'widths'");
    cfg.widths = {require_number(w, "a", "widths"), require_number(w, "b", "widths")};
  }

  if (j.contains("kind")) {
    cfg.kind = j["kind"].get<std::string>();
    const std::set<std::string> kinds{"two-peak", "gauss-sinc", "exact-sinc", "collinear"};
    if (!kinds.contains(cfg.kind)) {
      throw ValidationError("config: unknown amplitude kind '" + cfg.kind + "'");
    }
  }
  if (j.contains("grid")) {
    if (!j["grid"].is_number_integer()) throw ValidationError("config: 'grid' must be an integer");
    cfg.grid = j["grid"].get<int>();
    if (cfg.grid != 0 && (cfg.grid < 16 || cfg.grid > 4096)) {
      throw ValidationError("config: 'grid' must lie in [16, 4096] (or 0 for the default)");
    }
  }
  if (j.contains("n_max")) {
    if (!j["n_max"].is_number_integer()) throw ValidationError("config: 'n_max' must be an integer");
    cfg.n_max = j["n_max"].get<int>();
    if (cfg.n_max < -1 || cfg.n_max > 256) {
      throw ValidationError("config: 'n_max' must lie in [-1, 256]");
    }
  }
  if (j.contains("convention")) {
    cfg.convention = parse_convention(j["convention"].get<std::string>());
  }
  if (j.contains("both_conventions")) {
    if (!j["both_conventions"].is_boolean()) {
      throw ValidationError("config: 'both_conventions' must be a boolean");
    }
    cfg.both_conventions = j["both_conventions"].get<bool>();
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw ValidationError("config: 'seed' must be a non-negative integer");
    }
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tol")) {
    cfg.tol = require_number(j, "tol", "the top level");
    if (!(cfg.tol > 0.0) || cfg.tol > 1.0) {
      throw ValidationError("config: 'tol' must lie in (0, 1]");
    }
  }
  if (j.contains("fig4_ratio")) {
    cfg.fig4_ratio = require_number(j, "fig4_ratio", "the top level");
    if (!(cfg.fig4_ratio > 0.0) || cfg.fig4_ratio > 2.0) {
      throw ValidationError("config: 'fig4_ratio' must lie in (0, 2]");
    }
  }
  if (j.contains("out")) {
    cfg.out_dir = j["out"].get<std::string>();
  }

  if (j.contains("qutrit")) {
    const auto& q = j["qutrit"];
    reject_unknown_keys(q, {"amplitudes", "counts"}, "'qutrit'");
    if (q.contains("amplitudes") == q.contains("counts")) {
      throw ValidationError("config: 'qutrit' requires exactly one of 'amplitudes' or 'counts'");
    }
    if (q.contains("amplitudes")) {
      const auto& a = q["amplitudes"];
      if (!a.is_array() || a.size() != 3) {
        throw ValidationError("config: qutrit amplitudes must be an array of three [re, im] pairs");
      }
      std::array<std::complex<double>, 3> amps;
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& entry = a[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
            !entry[1].is_number()) {
          throw ValidationError("config: each qutrit amplitude must be an [re, im] pair");
        }
        amps[i] = {entry[0].get<double>(), entry[1].get<double>()};
      }
      cfg.qutrit_amplitudes = amps;
    } else {
      const auto& c = q["counts"];
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_unsigned() ||
          !c[1].is_number_unsigned()) {
        throw ValidationError("config: qutrit counts must be an array [n_hh, n_vv]");
      }
      cfg.qutrit_counts = CountRecord{c[0].get<std::uint64_t>(), c[1].get<std::uint64_t>()};
    }
  }

  return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace biphoton
