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

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "biphoton/config.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/runners.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string out_dir;
  std::string convention;
  int n_max = -2;       // -2 = not given
  int grid = -1;        // -1 = not given
  std::int64_t seed = -1;
  double tol = -1.0;
};

biphoton::RunConfig load_config(const CliOverrides& o) {
  biphoton::RunConfig cfg;
  if (!o.config_path.empty()) {
    cfg = biphoton::parse_config_file(o.config_path);
  }
  if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
  if (!o.convention.empty()) cfg.convention = biphoton::parse_convention(o.convention);
  if (o.n_max != -2) cfg.n_max = o.n_max;
  if (o.grid != -1) cfg.grid = o.grid;
  if (o.seed >= 0) cfg.seed = static_cast<std::uint64_t>(o.seed);
  if (o.tol > 0.0) cfg.tol = o.tol;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Schmidt decompositions and entanglement quantifiers for biphoton states"};
  app.require_subcommand(1);
  app.fallthrough();

  CliOverrides o;
  app.add_option("--config", o.config_path, "JSON run configuration (schema 1)");
  app.add_option("--out", o.out_dir, "output directory (overrides config)");
  app.add_option("--convention", o.convention,
                 "merged-width convention: matched | paper-literal");
  app.add_option("--nmax", o.n_max, "spectrum truncation order (-1 = auto)");
  app.add_option("--grid", o.grid, "grid points per axis");
  app.add_option("--seed", o.seed, "random seed for sampling runners");
  app.add_option("--tol", o.tol, "oracle comparison tolerance");

  auto* cmd_qutrit = app.add_subcommand("qutrit", "polarization qutrit Schmidt data");
  auto* cmd_spectrum = app.add_subcommand("spectrum", "analytic Schmidt spectrum and modes");
  auto* cmd_svd = app.add_subcommand("svd-check", "analytic spectrum vs numeric SVD oracle");
  auto* cmd_figures = app.add_subcommand("figures", "approximation curve and surface data");
  auto* cmd_pipeline = app.add_subcommand("pipeline", "beam-transformation trace and widths");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    biphoton::max_threads();  // validate BIPHOTON_THREADS before any work
    const biphoton::RunConfig cfg = load_config(o);
    if (cmd_qutrit->parsed()) {
      biphoton::run_qutrit(cfg, std::cout);
    } else if (cmd_spectrum->parsed()) {
      biphoton::run_spectrum(cfg, std::cout);
    } else if (cmd_svd->parsed()) {
      return biphoton::run_svd_check(cfg, std::cout);
    } else if (cmd_figures->parsed()) {
      biphoton::run_figures(cfg, std::cout);
    } else if (cmd_pipeline->parsed()) {
      biphoton::run_pipeline(cfg, std::cout);
    }
    return 0;
  } catch (const biphoton::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const biphoton::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const biphoton::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
