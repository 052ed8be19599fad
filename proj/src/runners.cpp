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

#include "biphoton/runners.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/csv.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/pipeline.hpp"
#include "biphoton/svd_oracle.hpp"

namespace biphoton {

namespace {

namespace fs = std::filesystem;

fs::path prepare_out_dir(const RunConfig& cfg) {
  fs::create_directories(cfg.out_dir);
  return cfg.out_dir;
}

int resolve_n_max(const RunConfig& cfg, const MergedWidths& w) {
  return cfg.n_max >= 0 ? cfg.n_max : default_n_max(w);
}

std::string convention_name(Convention c) {
  return c == Convention::matched ? "matched" : "paper-literal";
}

/// Pipeline grid: symmetric window of about theta_0 + 8 max(dtp, dtl^2/t0),
/// with the spacing snapped so that theta_0 is an exact multiple of it. The
/// beam-merging shifts then map grid points onto grid points and the staged
/// spectra stay comparable at any resolution.
Grid1D pipeline_grid(const BeamGeometry& geom, int n_points) {
  const double w = std::max(geom.delta_theta_p(),
                            geom.delta_theta_L() * geom.delta_theta_L() / geom.theta_0());
  const double T_wanted = geom.theta_0() + 8.0 * w;
  const double h0 = 2.0 * T_wanted / (n_points - 1);
  const double k = std::max(1.0, std::round(geom.theta_0() / h0));
  const double h = geom.theta_0() / k;
  return Grid1D::symmetric(0.5 * h * (n_points - 1), n_points);
}

}  // namespace

void run_qutrit(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_out_dir(cfg);

  double lp = 0.0, lm = 0.0, phase = 0.0;
  bool degenerate = false;
  if (cfg.qutrit_amplitudes) {
    const auto& a = *cfg.qutrit_amplitudes;
    const QutritState state = QutritState::normalized(a[0], a[1], a[2]);
    const QutritSchmidt schmidt = schmidt_qutrit(state);
    lp = schmidt.lambda_plus;
    lm = schmidt.lambda_minus;
    phase = schmidt.phase;
    degenerate = schmidt.degenerate;
  } else if (cfg.qutrit_counts) {
    std::tie(lp, lm) = lambdas_from_counts(*cfg.qutrit_counts);
    degenerate = (lp - lm) <= 1e-10;
  } else {
    throw ValidationError("qutrit runner requires 'qutrit.amplitudes' or 'qutrit.counts'");
  }

  const QutritQuantifiers q = quantifiers(lp, lm);
  const std::vector<std::string> cols{"lambda_plus", "lambda_minus", "P", "K",
                                      "C",           "S_r",          "phase", "degenerate"};
  CsvWriter csv(dir / "qutrit.csv", cols);
  csv.row(std::vector<double>{lp, lm, q.P, q.K, q.C, q.S_r, phase, degenerate ? 1.0 : 0.0});

  log << "qutrit: lambda+ = " << lp << ", lambda- = " << lm << "\n"
      << "  P = " << q.P << ", K = " << q.K << ", C = " << q.C << ", S_r = " << q.S_r << " bits\n";
  if (degenerate) log << "  degenerate spectrum (lambda+ = lambda-)\n";
}

void run_spectrum(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_out_dir(cfg);

  std::vector<Convention> conventions{cfg.convention};
  if (cfg.both_conventions) {
    conventions.push_back(cfg.convention == Convention::matched ? Convention::paper_literal
                                                                : Convention::matched);
  }

  const MergedWidths primary = cfg.resolved_widths(cfg.convention);
  const int n_max = resolve_n_max(cfg, primary);
  SchmidtSpectrum spectrum = collinear_spectrum(primary, n_max);
  spectrum.degenerate = true;

  {
    CsvWriter csv(dir / "spectrum.csv",
                  std::vector<std::string>{"n", "lambda_n", "lambda_n_over_2"});
    for (int n = 0; n <= n_max; ++n) {
      const double l = spectrum.lambdas[static_cast<std::size_t>(n)];
      csv.row(std::vector<double>{static_cast<double>(n), l, 0.5 * l});
    }
  }

  {
    const int n_cols = std::min(n_max, 16);
    std::vector<std::string> cols{"theta"};
    for (int n = 0; n <= n_cols; ++n) cols.push_back("psi_" + std::to_string(n));
    CsvWriter csv(dir / "modes.csv", cols);
    const double mode_scale = std::sqrt(primary.a * primary.b / 2.0);
    const double half = mode_scale * (std::sqrt(2.0 * n_cols + 1.0) + 4.0);
    const Grid1D grid = Grid1D::symmetric(half, 1001);
    std::vector<double> row(static_cast<std::size_t>(n_cols) + 2);
    std::vector<HermiteGaussMode> modes;
    for (int n = 0; n <= n_cols; ++n) modes.emplace_back(n, primary.a, primary.b);
    for (int i = 0; i < grid.size(); ++i) {
      row[0] = grid.point(i);
      for (int n = 0; n <= n_cols; ++n) {
        row[static_cast<std::size_t>(n) + 1] = modes[static_cast<std::size_t>(n)](grid.point(i));
      }
      csv.row(row);
    }
  }

  {
    CsvWriter csv(dir / "quantifiers.csv",
                  std::vector<std::string>{"convention", "a", "b", "K", "S_r", "K_collinear"});
    for (Convention conv : conventions) {
      const MergedWidths w = cfg.resolved_widths(conv);
      SchmidtSpectrum s = collinear_spectrum(w, resolve_n_max(cfg, w));
      s.degenerate = true;
      const double K = schmidt_number(s);
      const double S = reduced_entropy(s);
      s.degenerate = false;
      csv.row(convention_name(conv),
              std::vector<double>{w.a, w.b, K, S, schmidt_number(s)});
      log << "spectrum[" << convention_name(conv) << "]: a = " << w.a << ", b = " << w.b
          << ", K = " << K << ", S_r = " << S << " bits\n";
    }
  }
}

int run_svd_check(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_out_dir(cfg);
  const int grid_n = cfg.grid > 0 ? cfg.grid : 1024;

  SchmidtSpectrum analytic;
  NumericSpectrum numeric;
  double pairing_fraction = -1.0;

  if (cfg.kind == "collinear") {
    const MergedWidths w = cfg.resolved_widths(cfg.convention);
    analytic = collinear_spectrum(w, resolve_n_max(cfg, w));
    const CollinearAmplitude amp{w.a, w.b};
    const Grid1D grid = amp.default_grid(grid_n);
    numeric = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
  } else if (cfg.kind == "two-peak") {
    const BeamGeometry geom = cfg.resolved_geometry();
    const MergedWidths w = merged_widths(geom, cfg.convention);
    analytic = collinear_spectrum(w, resolve_n_max(cfg, w));
    analytic.degenerate = true;
    const BiphotonAmplitude amp = BiphotonAmplitude::two_peak(geom);
    const Grid1D grid = amp.default_grid(grid_n);
    numeric = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
    pairing_fraction = detect_degeneracy(numeric).paired_mass_fraction;
  } else {
    throw ValidationError("svd-check supports kinds 'collinear' and 'two-peak'");
  }

  const ComparisonReport rep = compare(analytic, numeric, cfg.tol);

  {
    CsvWriter csv(dir / "svd_spectrum.csv",
                  std::vector<std::string>{"k", "lambda_numeric", "lambda_analytic", "rel_err"});
    const std::vector<double> expected = analytic.effective_weights();
    const std::size_t n = std::min({expected.size(), numeric.lambdas.size(),
                                    rep.rel_errors.size()});
    for (std::size_t k = 0; k < n; ++k) {
      csv.row(std::vector<double>{static_cast<double>(k), numeric.lambdas[k], expected[k],
                                  rep.rel_errors[k]});
    }
  }

  log << "svd-check[" << cfg.kind << "]: K_analytic = " << rep.K_analytic
      << ", K_numeric = " << rep.K_numeric << ", grid = " << grid_n << "^2\n";
  if (pairing_fraction >= 0.0) {
    log << "  degenerate pairing mass fraction = " << pairing_fraction << "\n";
  }
  double worst = 0.0;
  for (double e : rep.abs_errors) worst = std::max(worst, e);
  log << "  max |lambda_numeric - lambda_analytic| = " << worst << " (tol " << cfg.tol << ")\n";
  const bool pass = rep.pass && (pairing_fraction < 0.0 || pairing_fraction > 0.999);
  log << (pass ? "  PASS\n" : "  FAIL\n");
  return pass ? 0 : 4;
}

void run_figures(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_out_dir(cfg);

  {
    CsvWriter csv(dir / "fig3.csv", std::vector<std::string>{"x", "sinc", "gauss"});
    const Grid1D xs = Grid1D::symmetric(6.0, 1201);
    for (int i = 0; i < xs.size(); ++i) {
      const double x = xs.point(i);
      csv.row(std::vector<double>{x, sinc(x), sinc_gauss(x)});
    }
  }

  {
    // Dimensionless difference angle u in units of theta_0.
    CsvWriter csv(dir / "fig4.csv", std::vector<std::string>{"u", "supergauss", "twogauss"});
    const double r = cfg.fig4_ratio;
    const double r4 = r * r * r * r;
    const Grid1D us = Grid1D::symmetric(4.0, 1601);
    for (int i = 0; i < us.size(); ++i) {
      const double u = us.point(i);
      const double super = std::exp(-0.195 * (u * u - 4.0) * (u * u - 4.0) / (4.0 * r4));
      const double two = std::exp(-0.78 * (u - 2.0) * (u - 2.0) / r4) +
                         std::exp(-0.78 * (u + 2.0) * (u + 2.0) / r4);
      csv.row(std::vector<double>{u, super, two});
    }
  }

  {
    const BeamGeometry geom = cfg.resolved_geometry();
    const BiphotonAmplitude amp = BiphotonAmplitude::two_peak(geom);
    const int n = cfg.grid > 0 ? cfg.grid : 256;
    const Grid1D grid = amp.default_grid(n);
    const SampledAmplitude sampled = evaluate_on_grid(amp, grid, grid);
    CsvWriter csv(dir / "fig5.csv", std::vector<std::string>{"theta1", "theta2", "abs_psi"});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        csv.row(std::vector<double>{grid.point(i), grid.point(j),
                                    std::abs(sampled.values(i, j))});
      }
    }
    // Quadrant masses on the default quadrature grid; the plotting grid may
    // be far coarser than the ridge width.
    const Grid1D qgrid = amp.default_grid(1024);
    const SampledAmplitude qsampled = evaluate_on_grid(amp, qgrid, qgrid);
    const double m1 = kernels::weighted_quadrant_mass(qsampled.values, qgrid, qgrid, +1, -1);
    const double m2 = kernels::weighted_quadrant_mass(qsampled.values, qgrid, qgrid, -1, +1);
    log << "figures: fig3/fig4/fig5 written; fig5 quadrant masses " << m1 << " / " << m2 << "\n";
  }
}

void run_pipeline(const RunConfig& cfg, std::ostream& log) {
  const fs::path dir = prepare_out_dir(cfg);
  const BeamGeometry geom = cfg.resolved_geometry();
  const int n = cfg.grid > 0 ? cfg.grid : 513;
  const Grid1D grid = pipeline_grid(geom, n);
  const std::vector<double> jw = joint_weights(grid);

  const std::vector<PipelineStage> stages = run_pipeline_stages(geom);
  {
    std::vector<std::string> cols{"stage", "term_count", "norm"};
    for (int k = 0; k < 8; ++k) cols.push_back("lambda_" + std::to_string(k));
    CsvWriter csv(dir / "pipeline_trace.csv", cols);
    for (const auto& stage : stages) {
      const Eigen::MatrixXd joint = sample_joint(stage.state, grid);
      const NumericSpectrum spec = numeric_schmidt(joint, jw, jw);
      std::vector<double> row{static_cast<double>(stage.state.term_count()),
                              stage.state.total_norm()};
      for (std::size_t k = 0; k < 8; ++k) {
        row.push_back(k < spec.lambdas.size() ? spec.lambdas[k] : 0.0);
      }
      csv.row(stage.name, row);
      log << "pipeline[" << stage.name << "]: terms = " << stage.state.term_count()
          << ", norm = " << stage.state.total_norm() << ", lambda_0 = " << row[2] << "\n";
    }
  }

  {
    CsvWriter csv(dir / "widths.csv",
                  std::vector<std::string>{"quadrant", "width_c", "width_s", "R", "K_part"});
    for (Quadrant q : {Quadrant::theta1_pos_theta2_neg, Quadrant::theta1_neg_theta2_pos}) {
      const WidthReport rep = width_ratio(geom, q);
      const std::string name = q == Quadrant::theta1_pos_theta2_neg ? "theta1_pos_theta2_neg"
                                                                    : "theta1_neg_theta2_pos";
      csv.row(name, std::vector<double>{rep.width_coincidence, rep.width_single, rep.ratio,
                                        rep.k_part});
      log << "widths[" << name << "]: R = " << rep.ratio << ", K_part = " << rep.k_part
          << ", defect = " << rep.defect << "\n";
    }
  }
}

}  // namespace biphoton
