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

#include "biphoton/hermite.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

const double kInvPiQuarter = 1.0 / std::pow(std::numbers::pi, 0.25);

void check_order(int n) {
  if (n < 0 || n > kMaxHermiteOrder) {
    throw ValidationError("Hermite-Gaussian order must lie in [0, 300]");
  }
}

}  // namespace

double hermite_function(int n, double y) {
  check_order(n);
  double h_prev = 0.0;
  double h = kInvPiQuarter * std::exp(-0.5 * y * y);
  for (int k = 0; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double h_next =
        y * std::sqrt(2.0 / (kk + 1.0)) * h - std::sqrt(kk / (kk + 1.0)) * h_prev;
    h_prev = h;
    h = h_next;
  }
  return h;
}

void hermite_functions_upto(int n_max, double y, std::span<double> out) {
  check_order(n_max);
  if (out.size() < static_cast<std::size_t>(n_max) + 1) {
    throw ValidationError("hermite_functions_upto: output span too short");
  }
  double h_prev = 0.0;
  double h = kInvPiQuarter * std::exp(-0.5 * y * y);
  out[0] = h;
  for (int k = 0; k < n_max; ++k) {
    const double kk = static_cast<double>(k);
    const double h_next =
        y * std::sqrt(2.0 / (kk + 1.0)) * h - std::sqrt(kk / (kk + 1.0)) * h_prev;
    h_prev = h;
    h = h_next;
    out[static_cast<std::size_t>(k) + 1] = h;
  }
}

HermiteGaussMode::HermiteGaussMode(int n, double a, double b, double center)
    : n_(n), center_(center) {
  check_order(n);
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ValidationError("HermiteGaussMode requires positive widths");
  }
  const double ab = a * b;
  scale_ = std::sqrt(2.0 / ab);
  prefactor_ = std::sqrt(scale_);
}

double HermiteGaussMode::operator()(double x) const {
  return prefactor_ * hermite_function(n_, scale_ * (x - center_));
}

}  // namespace biphoton
