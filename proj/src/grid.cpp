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

#include "biphoton/grid.hpp"

#include <cmath>

namespace biphoton {

Grid1D::Grid1D(double min, double max, int n_points) : min_(min), max_(max) {
  if (!(min < max) || !std::isfinite(min) || !std::isfinite(max)) {
    throw ValidationError("Grid1D requires finite min < max");
  }
  if (n_points < 2) {
    throw ValidationError("Grid1D requires at least 2 points");
  }
  const std::size_t n = static_cast<std::size_t>(n_points);
  spacing_ = (max - min) / static_cast<double>(n_points - 1);
  points_.resize(n);
  if (min == -max) {
    // Mirror-exact symmetric grid; center point is exactly 0 for odd n.
    const double c = static_cast<double>(n_points - 1) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      points_[i] = (static_cast<double>(i) - c) * spacing_;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      points_[i] = min + static_cast<double>(i) * spacing_;
    }
  }
  weights_.assign(n, spacing_);
  weights_.front() = 0.5 * spacing_;
  weights_.back() = 0.5 * spacing_;
}

}  // namespace biphoton
