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
#include <cmath>
#include <cstddef>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

/// Uniform 1D quadrature grid with composite-trapezoid weights.
///
/// Points of a symmetric grid are generated mirror-exact (points[n-1-i] ==
/// -points[i] bitwise), which keeps sampled matrices of symmetric amplitudes
/// exactly centrosymmetric.
class Grid1D {
 public:
  Grid1D(double min, double max, int n_points);

  static Grid1D symmetric(double half_extent, int n_points) {
    return {-half_extent, half_extent, n_points};
  }

  double min() const { return min_; }
  double max() const { return max_; }
  int size() const { return static_cast<int>(points_.size()); }
  double spacing() const { return spacing_; }
  double point(int i) const { return points_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& points() const { return points_; }
  /// Trapezoid weights; positive, summing to (max - min).
  const std::vector<double>& weights() const { return weights_; }

 private:
  double min_, max_, spacing_;
  std::vector<double> points_;
  std::vector<double> weights_;
};

/// A biphoton amplitude sampled on a tensor grid: values(i, j) = Psi(t1_i, t2_j).
struct SampledAmplitude {
  Grid1D grid1;
  Grid1D grid2;
  Eigen::MatrixXd values;
};

}  // namespace biphoton
