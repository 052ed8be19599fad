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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "biphoton/amplitude.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/pipeline.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/svd_oracle.hpp"
#include "support/oracles.hpp"

using namespace biphoton;

namespace {

// Crystal-free test geometry with well-resolved scales.
BeamGeometry trace_geometry() { return {2e-3, 3.5e-2, 0.1}; }

// Symmetric grid whose spacing divides theta_0, so the merging shifts map
// grid points onto grid points.
Grid1D aligned_grid(const BeamGeometry& g, int half_cells = 256, int cells_per_theta0 = 100) {
  const double h = g.theta_0() / cells_per_theta0;
  return Grid1D::symmetric(h * half_cells, 2 * half_cells + 1);
}

std::vector<double> joint_spectrum(const TaggedAmplitude& state, const Grid1D& grid) {
  const std::vector<double> w = joint_weights(grid);
  return numeric_schmidt(sample_joint(state, grid), w, w).lambdas;
}

}  // namespace

TEST_CASE("gaussian_overlap agrees with a 2D quadrature oracle") {
  const GaussianFactor g1{2e-3, 5e-3, 3e-3, 1.5e-3};
  const GaussianFactor g2{-1e-3, 8e-3, 2.5e-3, 2e-3};
  double acc = 0.0;
  const int n = 801;
  const double T = 0.04;
  const double h = 2.0 * T / (n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double t1 = -T + i * h, t2 = -T + j * h;
      acc += g1.value(t1, t2) * g2.value(t1, t2);
    }
  }
  acc *= h * h;
  CHECK(gaussian_overlap(g1, g2) == doctest::Approx(acc).epsilon(1e-8));
  CHECK(gaussian_overlap(g1, g1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("initial state: two H,H terms, unit norm, equals the two-peak amplitude") {
  const BeamGeometry g = trace_geometry();
  const TaggedAmplitude state = initial_state(g);
  CHECK(state.term_count() == 2);
  CHECK(state.total_norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(state.exchange_symmetric());
  for (const auto& term : state.terms()) {
    CHECK(term.pol1 == PolTag::H);
    CHECK(term.pol2 == PolTag::H);
  }

  const BiphotonAmplitude tp = BiphotonAmplitude::two_peak(g);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  for (int i = 0; i < 1000; ++i) {
    const double t1 = u(gen), t2 = u(gen);
    const double tagged = state.value(t1, t2, PolTag::H, PolTag::H).real();
    CHECK(tagged == doctest::Approx(tp(t1, t2)).epsilon(1e-7));
    CHECK(state.value(t1, t2, PolTag::H, PolTag::V) == std::complex<double>(0.0));
  }

  CHECK_THROWS_AS(initial_state(BeamGeometry(1e-3, 0.095, 0.1)), GeometryError);
}

TEST_CASE("flip: tags follow the -theta_0 channel and the map is an involution") {
  const BeamGeometry g = trace_geometry();
  const double t0 = g.theta_0();
  const TaggedAmplitude flipped = flip_polarization(initial_state(g), t0);
  CHECK(flipped.total_norm() == doctest::Approx(1.0).epsilon(1e-12));

  // Term with the +theta_0 slot first keeps (H, V); the mirror term (V, H).
  bool saw_hv = false, saw_vh = false;
  for (const auto& term : flipped.terms()) {
    const auto centers = term.gaussian.slot_centers();
    if (centers.first > 0) {
      CHECK(term.pol1 == PolTag::H);
      CHECK(term.pol2 == PolTag::V);
      saw_hv = true;
    } else {
      CHECK(term.pol1 == PolTag::V);
      CHECK(term.pol2 == PolTag::H);
      saw_vh = true;
    }
  }
  CHECK(saw_hv);
  CHECK(saw_vh);
  CHECK(flipped.exchange_symmetric());

  const TaggedAmplitude twice = flip_polarization(flipped, t0);
  for (const auto& term : twice.terms()) {
    CHECK(term.pol1 == PolTag::H);
    CHECK(term.pol2 == PolTag::H);
  }

  // A slot centered on the axis is not classifiable.
  const TaggedAmplitude ambiguous(
      {{1.0, GaussianFactor{0.0, 0.0, 1e-3, 1e-3}, PolTag::H, PolTag::H}});
  CHECK_THROWS_AS(flip_polarization(ambiguous, t0), ValidationError);
}

TEST_CASE("merge: single collinear factor with the matched widths and Bell tags") {
  const BeamGeometry g = trace_geometry();
  const double t0 = g.theta_0();
  const MergedWidths w = merged_widths(g, Convention::matched);
  const TaggedAmplitude merged = merge_beams(flip_polarization(initial_state(g), t0), t0);

  CHECK(merged.total_norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(merged.exchange_symmetric());
  for (const auto& term : merged.terms()) {
    CHECK(term.gaussian.sum_center == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(term.gaussian.diff_center == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(term.gaussian.sum_width == doctest::Approx(w.a).epsilon(1e-14));
    CHECK(term.gaussian.diff_width == doctest::Approx(w.b).epsilon(1e-14));
  }
  // (|HV> + |VH>)/sqrt2 structure: symmetric under the polarization swap.
  CHECK(merged.value(1e-3, -2e-3, PolTag::H, PolTag::V) ==
        merged.value(1e-3, -2e-3, PolTag::V, PolTag::H));
  CHECK(std::abs(merged.value(1e-3, -2e-3, PolTag::H, PolTag::H)) < 1e-16);
}

TEST_CASE("split: unsplit diagonal pairs with equal branch weights") {
  const BeamGeometry g = trace_geometry();
  const double t0 = g.theta_0();
  const TaggedAmplitude merged = merge_beams(flip_polarization(initial_state(g), t0), t0);
  const TaggedAmplitude split = split_45(merged);

  CHECK(split.term_count() == 2);
  double w45 = 0.0, w135 = 0.0;
  for (const auto& term : split.terms()) {
    CHECK(term.pol1 == term.pol2);
    if (term.pol1 == PolTag::D45) w45 = std::norm(term.coeff);
    if (term.pol1 == PolTag::D135) w135 = std::norm(term.coeff);
  }
  CHECK(w45 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w135 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(split.total_norm() == doctest::Approx(1.0).epsilon(1e-10));

  // No pair is ever split across the branches.
  CHECK(split.value(2e-3, -1e-3, PolTag::D45, PolTag::D135) == std::complex<double>(0.0));
  CHECK(split.value(2e-3, -1e-3, PolTag::D135, PolTag::D45) == std::complex<double>(0.0));

  // Projecting back onto H/V reproduces the merged state exactly.
  for (double t1 : {-3e-3, 0.0, 2e-3}) {
    for (double t2 : {-1e-3, 1.5e-3}) {
      for (PolTag q1 : {PolTag::H, PolTag::V}) {
        for (PolTag q2 : {PolTag::H, PolTag::V}) {
          CHECK(std::abs(split.value(t1, t2, q1, q2) - merged.value(t1, t2, q1, q2)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("unmerge: co-propagating pairs matching the regrouped decomposition") {
  const BeamGeometry g = trace_geometry();
  const double t0 = g.theta_0();
  const auto stages = run_pipeline_stages(g);
  const TaggedAmplitude& final_state = stages.back().state;

  CHECK(final_state.term_count() == 2);
  for (const auto& term : final_state.terms()) {
    CHECK(term.pol1 == PolTag::H);
    CHECK(term.pol2 == PolTag::H);
    CHECK(std::abs(std::abs(term.gaussian.sum_center) - 2.0 * t0) < 1e-15);
    CHECK(term.gaussian.diff_center == 0.0);
  }

  const NoncollinearDecomposition dec = noncollinear_decomposition(g, 16);
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  for (int i = 0; i < 500; ++i) {
    const double t1 = u(gen), t2 = u(gen);
    const double lhs = final_state.value(t1, t2, PolTag::H, PolTag::H).real();
    CHECK(std::abs(lhs - dec.regrouped(t1, t2)) < 1e-10);
  }
}

TEST_CASE("a = b pipeline reduces to the two balanced product terms") {
  const double t0 = 0.1, dtl = 0.03;
  const double b = dtl * dtl / (t0 * std::sqrt(1.56));
  const BeamGeometry g(b, dtl, t0);
  const auto stages = run_pipeline_stages(g);
  const TaggedAmplitude& final_state = stages.back().state;
  REQUIRE(final_state.term_count() == 2);
  const auto& terms = final_state.terms();
  CHECK(std::abs(terms[0].coeff) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(std::abs(terms[1].coeff) == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-12));
  // Opposite signs: the (|2_{+t0}> - |2_{-t0}>)/sqrt2 structure.
  CHECK((terms[0].coeff * terms[1].coeff).real() ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("every stage preserves norm, exchange symmetry, and the joint spectrum") {
  const BeamGeometry g = trace_geometry();
  const Grid1D grid = aligned_grid(g);
  const auto stages = run_pipeline_stages(g);
  REQUIRE(stages.size() == 5);

  std::vector<double> reference = joint_spectrum(stages.front().state, grid);
  const auto count_above = [](const std::vector<double>& l) {
    return std::count_if(l.begin(), l.end(), [](double v) { return v > 1e-10; });
  };
  const auto n_modes = count_above(reference);
  CHECK(n_modes >= 4);

  for (const auto& stage : stages) {
    CHECK(stage.state.total_norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(stage.state.exchange_symmetric(1e-10));
    const std::vector<double> spec = joint_spectrum(stage.state, grid);
    CHECK(count_above(spec) == n_modes);
    for (std::size_t k = 0; k < 16; ++k) {
      CHECK(std::abs(spec[k] - reference[k]) < 1e-8);
    }
  }
}

TEST_CASE("branch-projected overlaps reproduce lambda_n/2") {
  const BeamGeometry g = trace_geometry();
  const double t0 = g.theta_0();
  const auto stages = run_pipeline_stages(g);
  const TaggedAmplitude& final_state = stages.back().state;
  const NoncollinearDecomposition dec = noncollinear_decomposition(g, 8);

  const Grid1D grid = Grid1D::symmetric(0.25, 1201);
  const auto& w = grid.weights();
  for (int n = 0; n <= 3; ++n) {
    const HermiteGaussMode psi = dec.mode(n, t0);
    // <psi_n(t1 - t0) psi_n(t2 - t0) | Psi_final>, 2D trapezoid.
    kernels::Neumaier acc;
    for (int i = 0; i < grid.size(); ++i) {
      const double p1 = psi(grid.point(i));
      if (p1 == 0.0) continue;
      for (int j = 0; j < grid.size(); ++j) {
        const double val = final_state.value(grid.point(i), grid.point(j), PolTag::H,
                                             PolTag::H)
                               .real();
        acc.add(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] * p1 *
                psi(grid.point(j)) * val);
      }
    }
    const double projected = acc.value() * acc.value();
    CHECK(projected ==
          doctest::Approx(0.5 * dec.spectrum().lambdas[static_cast<std::size_t>(n)])
              .epsilon(1e-6));
  }
}

TEST_CASE("width ratio equals the partial Schmidt number") {
  // a = b: symmetric quadrant, R = K_part = 1.
  {
    const double t0 = 0.1, dtl = 0.03;
    const double b = dtl * dtl / (t0 * std::sqrt(1.56));
    const WidthReport rep = width_ratio(BeamGeometry(b, dtl, t0), Quadrant::theta1_pos_theta2_neg);
    CHECK(rep.k_part == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.ratio == doctest::Approx(1.0).epsilon(1e-6));
  }

  // Five geometries spanning K_part ~ 1.1 .. 5.
  int checked = 0;
  for (const auto& [dtp, dtl, t0] : std::vector<std::array<double, 3>>{
           {2e-3, 3.5e-2, 0.1},
           {1e-3, 2.5e-2, 0.1},
           {4e-3, 3.0e-2, 0.12},
           {8e-4, 1.8e-2, 0.09},
           {3e-3, 4.0e-2, 0.11}}) {
    const BeamGeometry g(dtp, dtl, t0);
    for (Quadrant q : {Quadrant::theta1_pos_theta2_neg, Quadrant::theta1_neg_theta2_pos}) {
      const WidthReport rep = width_ratio(g, q);
      CHECK(rep.width_coincidence > 0.0);
      CHECK(rep.width_single > 0.0);
      CHECK(rep.ratio >= 1.0 - 1e-9);
      CHECK(std::abs(rep.ratio / rep.k_part - 1.0) < 1e-3);
      ++checked;
    }
    // Total K = 2 K_part1: both quadrants contribute equally.
    SchmidtSpectrum s = collinear_spectrum(merged_widths(g, Convention::matched), 0);
    s.degenerate = true;
    const WidthReport part1 = width_ratio(g, Quadrant::theta1_pos_theta2_neg);
    CHECK(std::abs(2.0 * part1.ratio / schmidt_number(s) - 1.0) < 1e-3);
  }
  CHECK(checked == 10);

  CHECK_THROWS_AS(width_ratio(BeamGeometry(1e-3, 0.095, 0.1), Quadrant::theta1_pos_theta2_neg),
                  GeometryError);
}

TEST_CASE("mc_sample: occupancy, moments, conditional width, reproducibility") {
  const BeamGeometry g = trace_geometry();
  const BiphotonAmplitude tp = BiphotonAmplitude::two_peak(g);
  const MergedWidths w = merged_widths(g, Convention::matched);
  const std::size_t n = 100'000;
  const auto samples = mc_sample(tp, n, 20260811);
  REQUIRE(samples.size() == n);

  // Quadrant occupancy: binomial 3-sigma band around n/2.
  std::size_t quadrant1 = 0;
  for (const auto& [t1, t2] : samples) {
    if (t1 > 0 && t2 < 0) ++quadrant1;
  }
  const double sigma = std::sqrt(0.25 * static_cast<double>(n));
  CHECK(std::abs(static_cast<double>(quadrant1) - 0.5 * n) < 3.0 * sigma);

  // Var(theta1 + theta2) = a^2 / 2 under |Psi|^2 ~ exp(-s^2/a^2).
  double mean_s = 0.0;
  for (const auto& [t1, t2] : samples) mean_s += t1 + t2;
  mean_s /= static_cast<double>(n);
  double var_s = 0.0;
  for (const auto& [t1, t2] : samples) {
    const double d = t1 + t2 - mean_s;
    var_s += d * d;
  }
  var_s /= static_cast<double>(n - 1);
  CHECK(var_s == doctest::Approx(0.5 * w.a * w.a).epsilon(0.02));

  // Conditional slice near theta2 = -theta_0: histogram FWHM vs the report.
  const WidthReport rep = width_ratio(g, Quadrant::theta1_pos_theta2_neg);
  const double t0 = g.theta_0();
  const double window = 0.2 * std::max(w.a, w.b);
  std::vector<double> slice;
  for (const auto& [t1, t2] : samples) {
    if (std::abs(t2 + t0) < window) slice.push_back(t1);
  }
  REQUIRE(slice.size() > 2000);
  const int bins = 61;
  const double lo = t0 - 6.0 * w.b, hi = t0 + 6.0 * w.b;
  std::vector<double> hist(bins, 0.0);
  for (double x : slice) {
    const int k = static_cast<int>((x - lo) / (hi - lo) * bins);
    if (k >= 0 && k < bins) hist[static_cast<std::size_t>(k)] += 1.0;
  }
  const double peak = *std::max_element(hist.begin(), hist.end());
  // Crossing positions by linear interpolation on the histogram.
  auto crossing = [&](int from, int step) {
    int i = from;
    while (hist[static_cast<std::size_t>(i)] < 0.5 * peak) i += step;
    const double x1 = lo + (i + 0.5) * (hi - lo) / bins;
    const double x0 = x1 - step * (hi - lo) / bins;
    const double y0 = hist[static_cast<std::size_t>(i - step)];
    const double y1 = hist[static_cast<std::size_t>(i)];
    return x0 + (0.5 * peak - y0) / (y1 - y0) * (x1 - x0);
  };
  const double fwhm = crossing(bins - 1, -1) - crossing(0, +1);
  CHECK(fwhm == doctest::Approx(rep.width_coincidence).epsilon(0.05));

  // Fixed seed, fixed stream.
  const auto again = mc_sample(tp, n, 20260811);
  CHECK(std::equal(samples.begin(), samples.end(), again.begin()));
  const auto other = mc_sample(tp, n, 7);
  CHECK(other != samples);

  // Only the two-peak kind is a finite Gaussian mixture.
  CHECK_THROWS_AS(mc_sample(BiphotonAmplitude::exact(g), 10, 1), ValidationError);
  CHECK_THROWS_AS(mc_sample(BiphotonAmplitude::gauss_sinc(g), 10, 1), ValidationError);

  // Tagged pipeline states sample through the same mixture machinery.
  const auto stages = run_pipeline_stages(g);
  const auto tagged = mc_sample(stages.back().state, 10'000, 5);
  CHECK(tagged.size() == 10'000);
}
