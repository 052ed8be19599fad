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

#include "biphoton/geometry.hpp"

#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"

namespace biphoton {

void CrystalOpticalParams::validate() const {
  const bool positive = lambda_p > 0 && n_o > 0 && n_e > 0 && n_0 > 0 && L > 0 && d > 0;
  if (!positive || !std::isfinite(lambda_p) || !std::isfinite(L) || !std::isfinite(d)) {
    throw ValidationError("crystal parameters must all be positive and finite");
  }
  if (n_o <= n_e) {
    throw GeometryError("n_o must exceed n_e (otherwise the emission angle is imaginary)");
  }
}

BeamGeometry::BeamGeometry(double delta_theta_p, double delta_theta_L, double theta_0)
    : delta_theta_p_(delta_theta_p), delta_theta_L_(delta_theta_L), theta_0_(theta_0) {
  if (!(delta_theta_p > 0) || !(delta_theta_L > 0) || !(theta_0 > 0) ||
      !std::isfinite(delta_theta_p) || !std::isfinite(delta_theta_L) || !std::isfinite(theta_0)) {
    throw GeometryError("beam geometry requires positive finite angular widths");
  }
  ratio_pump_ = delta_theta_p_ / theta_0_;
  ratio_length_ = delta_theta_L_ / theta_0_;
  strained_ = std::max(ratio_pump_, ratio_length_) > 0.2 || theta_0_ > 0.3;
}

BeamGeometry derive_widths(const CrystalOpticalParams& params) {
  params.validate();
  const double pi = std::numbers::pi;
  const double dtp = params.lambda_p / (pi * params.n_0 * params.d);
  const double dtl = std::sqrt(2.0 * params.lambda_p / (pi * params.n_0 * params.L));
  const double t0 = std::sqrt(2.0 * (params.n_o - params.n_e) / params.n_0);
  return {dtp, dtl, t0};
}

}  // namespace biphoton
