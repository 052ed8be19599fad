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

#include "biphoton/svd_oracle.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"

namespace biphoton {

namespace {

NumericSpectrum spectrum_from_singular_values(const Eigen::VectorXd& sigma, int n1, int n2) {
  NumericSpectrum out;
  out.grid_n1 = n1;
  out.grid_n2 = n2;
  double total = 0.0;
  for (int k = 0; k < sigma.size(); ++k) total += sigma(k) * sigma(k);
  if (!(total > 0.0)) {
    throw ValidationError("numeric_schmidt: all singular values vanish");
  }
  out.residual = std::abs(total - 1.0);
  out.lambdas.resize(static_cast<std::size_t>(sigma.size()));
  for (int k = 0; k < sigma.size(); ++k) {
    out.lambdas[static_cast<std::size_t>(k)] = sigma(k) * sigma(k) / total;
  }
  return out;
}

void check_finite(const Eigen::MatrixXd& values) {
  if (!values.allFinite()) {
    throw ValidationError("numeric_schmidt: sampled amplitude contains non-finite entries");
  }
}

}  // namespace

NumericSpectrum numeric_schmidt(const Eigen::MatrixXd& values, std::span<const double> w1,
                                std::span<const double> w2) {
  check_finite(values);
  const Eigen::MatrixXd scaled = kernels::scale_by_sqrt_weights(values, w1, w2);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled);
  return spectrum_from_singular_values(svd.singularValues(), static_cast<int>(values.rows()),
                                       static_cast<int>(values.cols()));
}

NumericSpectrum numeric_schmidt(const SampledAmplitude& sampled) {
  return numeric_schmidt(sampled.values, sampled.grid1.weights(), sampled.grid2.weights());
}

NumericSchmidtModes numeric_schmidt_with_modes(const SampledAmplitude& sampled) {
  check_finite(sampled.values);
  const Eigen::MatrixXd scaled = kernels::scale_by_sqrt_weights(
      sampled.values, sampled.grid1.weights(), sampled.grid2.weights());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
  NumericSchmidtModes out;
  out.spectrum = spectrum_from_singular_values(
      svd.singularValues(), static_cast<int>(sampled.values.rows()),
      static_cast<int>(sampled.values.cols()));
  out.modes1 = svd.matrixU();
  out.modes2 = svd.matrixV();
  const auto& w1 = sampled.grid1.weights();
  const auto& w2 = sampled.grid2.weights();
  for (int i = 0; i < out.modes1.rows(); ++i) {
    out.modes1.row(i) /= std::sqrt(w1[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < out.modes2.rows(); ++i) {
    out.modes2.row(i) /= std::sqrt(w2[static_cast<std::size_t>(i)]);
  }
  return out;
}

PairingReport detect_degeneracy(const NumericSpectrum& spectrum, double rel_tol) {
  PairingReport rep;
  const auto& l = spectrum.lambdas;
  double paired = 0.0;
  double total = 0.0;
  for (double v : l) total += v;
  std::size_t k = 0;
  while (k + 1 < l.size()) {
    const double hi = l[k];
    const double lo = l[k + 1];
    if (hi <= 0.0) break;
    if ((hi - lo) / hi <= rel_tol) {
      rep.pairs.emplace_back(static_cast<int>(k), static_cast<int>(k + 1));
      paired += hi + lo;
      k += 2;
    } else {
      k += 1;
    }
  }
  rep.paired_mass_fraction = total > 0.0 ? paired / total : 0.0;
  return rep;
}

ComparisonReport compare(const SchmidtSpectrum& analytic, const NumericSpectrum& numeric,
                         double tol, int n_compare) {
  ComparisonReport rep;
  const std::vector<double> expected = analytic.effective_weights();
  const std::size_t n = std::min({static_cast<std::size_t>(n_compare), expected.size(),
                                  numeric.lambdas.size()});
  rep.abs_errors.resize(n);
  rep.rel_errors.resize(n);
  bool ok = true;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = expected[k];
    const double d = std::abs(numeric.lambdas[k] - e);
    rep.abs_errors[k] = d;
    rep.rel_errors[k] = e > 0.0 ? d / e : d;
    ok = ok && d < tol;
  }
  // Length mismatch is absorbed into a tail-mass account: both sides carry
  // total mass 1, so the mass outside the aligned head quantifies whatever
  // was not compared entry by entry.
  double expected_head = 0.0;
  for (std::size_t k = 0; k < n; ++k) expected_head += expected[k];
  double numeric_head = 0.0;
  for (std::size_t k = 0; k < n; ++k) numeric_head += numeric.lambdas[k];
  rep.unmatched_tail = std::abs(expected_head - numeric_head);

  rep.K_analytic = schmidt_number(analytic);
  double sum_sq = 0.0;
  for (double v : numeric.lambdas) sum_sq += v * v;
  rep.K_numeric = sum_sq > 0.0 ? 1.0 / sum_sq : 0.0;
  rep.pass = ok;
  return rep;
}

ComparisonReport compare(const SchmidtSpectrum& analytic, const NumericSchmidtModes& numeric,
                         const Grid1D& grid, double tol, int n_compare) {
  ComparisonReport rep = compare(analytic, numeric.spectrum, tol, n_compare);
  if (analytic.degenerate) return rep;  // subspace pairing covered by detect_degeneracy
  const int n_modes = static_cast<int>(
      std::min({static_cast<std::size_t>(n_compare), analytic.lambdas.size(),
                static_cast<std::size_t>(numeric.modes1.cols())}));
  const auto& w = grid.weights();
  double worst = 0.0;
  for (int k = 0; k < n_modes; ++k) {
    HermiteGaussMode psi(k, analytic.widths.a, analytic.widths.b);
    double dot = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      dot += w[static_cast<std::size_t>(i)] * psi(grid.point(i)) * numeric.modes1(i, k);
    }
    worst = std::max(worst, std::abs(1.0 - std::abs(dot)));
  }
  rep.max_overlap_defect = worst;
  return rep;
}

}  // namespace biphoton
