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

namespace biphoton {

/// Physical crystal and pump inputs, SI units throughout.
struct CrystalOpticalParams {
  double lambda_p;  ///< pump wavelength [m]
  double n_o;       ///< ordinary refractive index
  double n_e;       ///< extraordinary refractive index
  double n_0;       ///< refractive index along the pump direction
  double L;         ///< crystal length [m]
  double d;         ///< pump waist [m]

  void validate() const;
};

/// Derived angular scales of the emission, all in radians.
///
/// The narrowness ratios delta_theta/theta_0 are stored; when any of them
/// exceeds 0.2, or theta_0 exceeds 0.3 rad, the small-angle assumptions
/// behind the Gaussian approximations are strained and the geometry carries a
/// warning flag instead of being rejected.
class BeamGeometry {
 public:
  BeamGeometry(double delta_theta_p, double delta_theta_L, double theta_0);

  double delta_theta_p() const { return delta_theta_p_; }
  double delta_theta_L() const { return delta_theta_L_; }
  double theta_0() const { return theta_0_; }

  double ratio_pump() const { return ratio_pump_; }
  double ratio_length() const { return ratio_length_; }
  bool assumption_strained() const { return strained_; }

  bool operator==(const BeamGeometry&) const = default;

 private:
  double delta_theta_p_, delta_theta_L_, theta_0_;
  double ratio_pump_, ratio_length_;
  bool strained_;
};

/// Angular widths from crystal parameters:
///   delta_theta_p = lambda_p / (pi n_0 d)
///   delta_theta_L = sqrt(2 lambda_p / (pi n_0 L))
///   theta_0       = sqrt(2 (n_o - n_e) / n_0)
/// n_o <= n_e is rejected (imaginary emission angle).
BeamGeometry derive_widths(const CrystalOpticalParams& params);

}  // namespace biphoton
