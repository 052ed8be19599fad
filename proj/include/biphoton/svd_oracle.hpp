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

#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <utility>
#include <vector>

#include "biphoton/grid.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

/// Numeric Schmidt weights of a discretized amplitude: squared singular
/// values of the sqrt-weight-scaled sample matrix (Nystrom discretization of
/// the kernel), normalized to sum to 1.
struct NumericSpectrum {
  std::vector<double> lambdas;  ///< descending
  int grid_n1 = 0;
  int grid_n2 = 0;
  double residual = 0.0;  ///< |sum sigma^2 - 1|, the discretization norm defect
};

/// Spectrum plus discrete Schmidt modes. modes1.col(k) holds the k-th left
/// mode at the grid1 points, rescaled by 1/sqrt(w) to unit L^2 quadrature norm.
struct NumericSchmidtModes {
  NumericSpectrum spectrum;
  Eigen::MatrixXd modes1;
  Eigen::MatrixXd modes2;
};

NumericSpectrum numeric_schmidt(const SampledAmplitude& sampled);
NumericSchmidtModes numeric_schmidt_with_modes(const SampledAmplitude& sampled);

/// Bare matrix variant used for joint (angle x polarization) indices; w1/w2
/// are the quadrature weights of the row/column indices.
NumericSpectrum numeric_schmidt(const Eigen::MatrixXd& values, std::span<const double> w1,
                                std::span<const double> w2);

/// Greedy pairing of adjacent weights within rel_tol, descending order.
struct PairingReport {
  std::vector<std::pair<int, int>> pairs;
  double paired_mass_fraction = 0.0;
};

PairingReport detect_degeneracy(const NumericSpectrum& spectrum, double rel_tol = 1e-4);

/// Analytic-vs-numeric comparison. Degenerate analytic spectra are expanded
/// to their lambda_n/2 pairs before aligning. `pass` requires every absolute
/// weight error within the first n_compare entries to stay below tol.
struct ComparisonReport {
  std::vector<double> abs_errors;
  std::vector<double> rel_errors;
  double K_analytic = 0.0;
  double K_numeric = 0.0;
  double max_overlap_defect = 0.0;  ///< filled by the modes overload
  double unmatched_tail = 0.0;      ///< analytic tail + numeric mass beyond the compared range
  bool pass = false;
};

ComparisonReport compare(const SchmidtSpectrum& analytic, const NumericSpectrum& numeric,
                         double tol, int n_compare = 11);

/// Adds mode-overlap defects 1 - |<psi_n | v_n>| for the collinear case.
ComparisonReport compare(const SchmidtSpectrum& analytic, const NumericSchmidtModes& numeric,
                         const Grid1D& grid, double tol, int n_compare = 11);

}  // namespace biphoton
