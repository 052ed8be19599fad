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

#include <span>

namespace biphoton {

/// Largest supported Hermite-Gaussian order.
inline constexpr int kMaxHermiteOrder = 300;

/// Normalized Hermite function h_n(y) = (2^n n! sqrt(pi))^{-1/2} e^{-y^2/2} H_n(y),
/// evaluated by the three-term recurrence on the h_n themselves so that no
/// intermediate can overflow for n <= kMaxHermiteOrder.
double hermite_function(int n, double y);

/// h_0(y) ... h_{n_max}(y) in one recurrence sweep; out.size() == n_max + 1.
void hermite_functions_upto(int n_max, double y, std::span<double> out);

/// Schmidt mode of the double-Gaussian kernel with width product ab:
///   psi_n(x) = (2/(ab))^{1/4} h_n(sqrt(2) (x - center) / sqrt(ab)).
/// Unit L^2 norm for every n.
class HermiteGaussMode {
 public:
  /// n in [0, kMaxHermiteOrder]; larger orders are rejected.
  HermiteGaussMode(int n, double a, double b, double center = 0.0);

  double operator()(double x) const;

  int order() const { return n_; }
  double center() const { return center_; }

 private:
  int n_;
  double center_;
  double scale_;      // sqrt(2/(ab))
  double prefactor_;  // (2/(ab))^{1/4}
};

}  // namespace biphoton
