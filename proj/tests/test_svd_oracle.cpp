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

#include <cmath>

#include "biphoton/amplitude.hpp"
#include "biphoton/errors.hpp"
#include "biphoton/hermite.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/schmidt.hpp"
#include "biphoton/svd_oracle.hpp"
#include "support/pinned.hpp"

using namespace biphoton;

namespace {

double defect10(const NumericSpectrum& num, const SchmidtSpectrum& ana) {
  const auto expected = ana.effective_weights();
  double d = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    d += std::abs((k < num.lambdas.size() ? num.lambdas[k] : 0.0) -
                  (k < expected.size() ? expected[k] : 0.0));
  }
  return d;
}

}  // namespace

TEST_CASE("rank-1 product input has a single unit weight") {
  const Grid1D grid = Grid1D::symmetric(8.0, 257);
  const HermiteGaussMode psi(0, 2.0, 1.0);
  const Eigen::MatrixXd values =
      kernels::evaluate_grid(grid, grid, [&](double a, double b) { return psi(a) * psi(b); });
  const NumericSpectrum spec = numeric_schmidt({grid, grid, values});
  CHECK(spec.lambdas[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t k = 1; k < 12; ++k) CHECK(spec.lambdas[k] < 1e-10);
  CHECK(spec.residual < 1e-8);
}

TEST_CASE("numeric_schmidt rejects non-finite and null input") {
  const Grid1D grid = Grid1D::symmetric(1.0, 33);
  Eigen::MatrixXd values = Eigen::MatrixXd::Zero(33, 33);
  CHECK_THROWS_AS(numeric_schmidt({grid, grid, values}), ValidationError);
  values(3, 4) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(numeric_schmidt({grid, grid, values}), ValidationError);
}

TEST_CASE("collinear double Gaussian reproduces the geometric ladder at 1024^2") {
  const MergedWidths w{3e-3, 1e-3, Convention::matched};
  const CollinearAmplitude amp{w.a, w.b};
  const Grid1D grid = amp.default_grid(1024);
  const NumericSpectrum num = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
  CHECK(num.lambdas[0] == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(num.lambdas[1] == doctest::Approx(0.1875).epsilon(1e-6));
  const SchmidtSpectrum ana = collinear_spectrum(w, 10);
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(std::abs(num.lambdas[k] - ana.lambdas[k]) < 1e-6);
  }
}

TEST_CASE("mini (a,b) sweep at 512^2 matches the closed form to 1e-6") {
  for (double a : {0.7e-3, 1.4e-3, 2.8e-3}) {
    for (double b : {0.7e-3, 1.4e-3, 2.8e-3}) {
      const CollinearAmplitude amp{a, b};
      const Grid1D grid = amp.default_grid(512);
      const NumericSpectrum num = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
      const SchmidtSpectrum ana = collinear_spectrum({a, b, Convention::matched}, 10);
      for (std::size_t k = 0; k <= 10; ++k) {
        CHECK(std::abs(num.lambdas[k] - ana.lambdas[k]) < 1e-6);
      }
    }
  }
}

TEST_CASE("grid refinement moves the leading weights by less than 1e-7") {
  const CollinearAmplitude amp{2e-3, 1e-3};
  const Grid1D g1 = amp.default_grid(512);
  const Grid1D g2 = amp.default_grid(1024);
  const NumericSpectrum c = numeric_schmidt(evaluate_on_grid(amp, g1, g1));
  const NumericSpectrum f = numeric_schmidt(evaluate_on_grid(amp, g2, g2));
  for (std::size_t k = 0; k <= 10; ++k) {
    CHECK(std::abs(c.lambdas[k] - f.lambdas[k]) < 1e-7);
  }
}

TEST_CASE("repeated runs are bit-identical") {
  const CollinearAmplitude amp{2e-3, 1e-3};
  const Grid1D grid = amp.default_grid(256);
  const NumericSpectrum first = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
  const NumericSpectrum second = numeric_schmidt(evaluate_on_grid(amp, grid, grid));
  REQUIRE(first.lambdas.size() == second.lambdas.size());
  for (std::size_t k = 0; k < first.lambdas.size(); ++k) {
    CHECK(first.lambdas[k] == second.lambdas[k]);
  }
}

TEST_CASE("two-peak amplitude yields paired weights lambda_n/2") {
  const BeamGeometry g(2e-3, 3.5e-2, 0.1);
  const BiphotonAmplitude tp = BiphotonAmplitude::two_peak(g);
  const Grid1D grid = tp.default_grid(1024);
  const NumericSpectrum num = numeric_schmidt(evaluate_on_grid(tp, grid, grid));

  SchmidtSpectrum ana = collinear_spectrum(merged_widths(g, Convention::matched), 12);
  ana.degenerate = true;
  const auto expected = ana.effective_weights();
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK(std::abs(num.lambdas[k] - expected[k]) < 1e-5);
  }

  const PairingReport pairs = detect_degeneracy(num);
  CHECK(pairs.paired_mass_fraction > 0.999);
  CHECK(pairs.pairs.front() == std::pair<int, int>{0, 1});
}

TEST_CASE("detect_degeneracy pairs and leaves singletons correctly") {
  NumericSpectrum paired;
  paired.lambdas = {0.375, 0.375, 0.09375, 0.09375, 0.03, 0.03, 0.00125, 0.00125};
  const PairingReport full = detect_degeneracy(paired);
  CHECK(full.pairs.size() == 4);
  CHECK(full.paired_mass_fraction == doctest::Approx(1.0).epsilon(1e-12));

  NumericSpectrum single;
  single.lambdas = {1.0, 0.0, 0.0};
  const PairingReport none = detect_degeneracy(single);
  CHECK(none.pairs.empty());
  CHECK(none.paired_mass_fraction == doctest::Approx(0.0));

  // Collinear ladder with a != b: adjacent weights differ by the factor q.
  const SchmidtSpectrum ladder = collinear_spectrum({3e-3, 1e-3, Convention::matched}, 10);
  NumericSpectrum as_numeric;
  as_numeric.lambdas = ladder.lambdas;
  const PairingReport unpaired = detect_degeneracy(as_numeric);
  CHECK(unpaired.paired_mass_fraction < 1e-12);
}

TEST_CASE("compare: equal spectra, tail accounting, and convention arbitration") {
  const MergedWidths w{3e-3, 1e-3, Convention::matched};
  const SchmidtSpectrum ana = collinear_spectrum(w, 10);
  NumericSpectrum self;
  self.lambdas = ana.lambdas;
  const ComparisonReport rep = compare(ana, self, 1e-10);
  CHECK(rep.pass);
  for (double e : rep.abs_errors) CHECK(e == 0.0);
  CHECK(rep.K_numeric ==
        doctest::Approx(1.0 / (2.0 * 3e-3 * 1e-3 / (9e-6 + 1e-6))).epsilon(1e-3));

  // The SVD oracle arbitrates the merged-width conventions: the numeric
  // spectrum of the discretized two-peak amplitude sides with `matched`.
  const BeamGeometry g = derive_widths({405e-9, 1.67, 1.66, 1.66, 2e-3, 1e-4});
  const BiphotonAmplitude tp = BiphotonAmplitude::two_peak(g);
  const Grid1D grid = tp.default_grid(1024);
  const NumericSpectrum num = numeric_schmidt(evaluate_on_grid(tp, grid, grid));

  SchmidtSpectrum matched = collinear_spectrum(merged_widths(g, Convention::matched), 16);
  matched.degenerate = true;
  const ComparisonReport rep_matched = compare(matched, num, 1e-6);
  CHECK(rep_matched.pass);
  CHECK(std::abs(rep_matched.K_numeric / rep_matched.K_analytic - 1.0) < 1e-3);
  CHECK(rep_matched.K_analytic == doctest::Approx(pinned::kExampleKMatched).epsilon(1e-9));

  SchmidtSpectrum literal = collinear_spectrum(merged_widths(g, Convention::paper_literal), 16);
  literal.degenerate = true;
  const ComparisonReport rep_literal = compare(literal, num, 1e-6);
  CHECK_FALSE(rep_literal.pass);
  CHECK(rep_literal.K_analytic == doctest::Approx(pinned::kExampleKPaperLiteral).epsilon(1e-9));
  // The discrepancy factor the arbitration reports: 4% in K.
  CHECK(std::abs(rep_literal.K_numeric / rep_literal.K_analytic - 1.0) > 0.03);
}

TEST_CASE("compare with modes reports tiny overlap defects for the collinear case") {
  const MergedWidths w{3e-3, 1e-3, Convention::matched};
  const CollinearAmplitude amp{w.a, w.b};
  const Grid1D grid = amp.default_grid(512);
  const NumericSchmidtModes modes = numeric_schmidt_with_modes(evaluate_on_grid(amp, grid, grid));
  const ComparisonReport rep = compare(collinear_spectrum(w, 10), modes, grid, 1e-6);
  CHECK(rep.pass);
  CHECK(rep.max_overlap_defect < 1e-8);
}

TEST_CASE("coarse grids fail: the convergence study pins the breakdown") {
  const MergedWidths w{3e-3, 1e-3, Convention::matched};
  const CollinearAmplitude amp{w.a, w.b};
  const SchmidtSpectrum ana = collinear_spectrum(w, 10);

  // 24 points per axis alias the kernel; 64 already reach machine precision.
  const Grid1D coarse = amp.default_grid(24);
  const NumericSpectrum bad = numeric_schmidt(evaluate_on_grid(amp, coarse, coarse));
  CHECK_FALSE(compare(ana, bad, 1e-6).pass);

  const Grid1D fine = amp.default_grid(64);
  const NumericSpectrum good = numeric_schmidt(evaluate_on_grid(amp, fine, fine));
  CHECK(compare(ana, good, 1e-6).pass);
}

TEST_CASE("approximation chain: the Gaussian-peak step improves with separation") {
  // Fixed a/b = 2 isolates the sum-of-two-Gaussians step; its spectral defect
  // falls monotonically as the peaks separate. The exact-sinc chain keeps the
  // scale-invariant sinc->Gaussian floor (~0.275) that separation cannot fix.
  double previous_gs = 1e300;
  for (double ratio : {0.4, 0.3, 0.2, 0.1}) {
    const double t0 = 0.1;
    const double dtl = ratio * t0;
    const double b = dtl * dtl / (t0 * std::sqrt(1.56));
    const BeamGeometry g(2.0 * b, dtl, t0);
    SchmidtSpectrum ana = collinear_spectrum(merged_widths(g, Convention::matched), 16);
    ana.degenerate = true;

    const BiphotonAmplitude gs = BiphotonAmplitude::gauss_sinc(g);
    const Grid1D gg = auto_extended_grid(gs, 1024);
    const double d_gs = defect10(numeric_schmidt(evaluate_on_grid(gs, gg, gg)), ana);
    CHECK(d_gs < previous_gs);
    previous_gs = d_gs;

    const BiphotonAmplitude ex = BiphotonAmplitude::exact(g);
    const Grid1D ge = auto_extended_grid(ex, 1024);
    const double d_ex = defect10(numeric_schmidt(evaluate_on_grid(ex, ge, ge)), ana);
    CHECK(d_ex > d_gs);
    CHECK(d_ex == doctest::Approx(0.275).epsilon(0.05));
  }
}
