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
#include <span>
#include <vector>

#include "biphoton/grid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace biphoton {

/// Number of OpenMP threads used by the parallel kernels. Reads the
/// BIPHOTON_THREADS environment variable once per process; an unset variable
/// means the OpenMP default, an unparsable or non-positive value is a
/// ValidationError.
int max_threads();

namespace kernels {

/// Compensated (Neumaier) accumulator.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

/// Chunk length shared by all compensated reductions. Partial sums are formed
/// per fixed chunk and combined in chunk order, so the result is independent
/// of the number of threads, bit for bit.
inline constexpr std::ptrdiff_t kChunk = 4096;

/// Thread-count-invariant compensated sum.
double chunked_sum(std::span<const double> x);

/// sum_ij w1[i] * w2[j] * values(i,j)^2, column partials combined in order.
double weighted_norm_sq(const Eigen::MatrixXd& values, std::span<const double> w1,
                        std::span<const double> w2);

/// Same reduction restricted to sign quadrants of the grid points:
/// predicate (sign1, sign2) selects points with sign1*t1 > 0 and sign2*t2 > 0.
double weighted_quadrant_mass(const Eigen::MatrixXd& values, const Grid1D& g1, const Grid1D& g2,
                              int sign1, int sign2);

/// B(i,j) = sqrt(w1[i] * w2[j]) * values(i,j)  (Nystrom symmetrization).
Eigen::MatrixXd scale_by_sqrt_weights(const Eigen::MatrixXd& values, std::span<const double> w1,
                                      std::span<const double> w2);

/// Fill values(i,j) = f(g1.point(i), g2.point(j)), parallel over columns.
/// Every element is computed by the same expression regardless of the thread
/// count, so the result is bitwise reproducible.
template <class F>
Eigen::MatrixXd evaluate_grid(const Grid1D& g1, const Grid1D& g2, F&& f) {
  const int n1 = g1.size();
  const int n2 = g2.size();
  Eigen::MatrixXd values(n1, n2);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int j = 0; j < n2; ++j) {
    const double t2 = g2.point(j);
    for (int i = 0; i < n1; ++i) {
      values(i, j) = f(g1.point(i), t2);
    }
  }
  return values;
}

/// Plain serial loops, kept as the reference implementations the parallel
/// kernels are tested and benchmarked against.
namespace reference {

double sum(std::span<const double> x);

double weighted_norm_sq(const Eigen::MatrixXd& values, std::span<const double> w1,
                        std::span<const double> w2);

template <class F>
Eigen::MatrixXd evaluate_grid(const Grid1D& g1, const Grid1D& g2, F&& f) {
  Eigen::MatrixXd values(g1.size(), g2.size());
  for (int j = 0; j < g2.size(); ++j) {
    for (int i = 0; i < g1.size(); ++i) {
      values(i, j) = f(g1.point(i), g2.point(j));
    }
  }
  return values;
}

}  // namespace reference

}  // namespace kernels
}  // namespace biphoton
