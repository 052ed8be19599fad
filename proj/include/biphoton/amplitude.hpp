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

#include <optional>
#include <vector>

#include "biphoton/geometry.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

/// sin(x)/x with a series branch below |x| = 1e-4 to avoid cancellation.
double sinc(double x);

/// Gaussian stand-in for the sinc main lobe, exp(-0.195 x^2).
double sinc_gauss(double x);

enum class AmplitudeKind { exact_sinc, gauss_sinc, two_peak };

/// Relative overlap mass of the two difference-angle Gaussians of the
/// two-peak form; above 1e-4 the peaks are considered not separated.
double two_peak_cross_mass(const BeamGeometry& geom);

/// Normalized biphoton angular wave function Psi(theta1, theta2).
///
/// exact_sinc: N exp(-(t1+t2)^2/(2 dtp^2)) sinc(((t1-t2)^2 - 4 t0^2)/(2 dtl^2))
/// gauss_sinc: sinc replaced by exp(-0.195 x^2)
/// two_peak:   difference factor replaced by the two displaced Gaussians
///             exp(-0.78 t0^2 (t1-t2 -/+ 2 t0)^2 / dtl^4)
///
/// N is fixed by compensated trapezoid quadrature of |Psi|^2 over the default
/// window; construction verifies quadrature convergence against the
/// half-resolution rule and rejects with the achieved tolerance otherwise.
class BiphotonAmplitude {
 public:
  static BiphotonAmplitude exact(const BeamGeometry& geom, int norm_grid_points = 1024);
  static BiphotonAmplitude gauss_sinc(const BeamGeometry& geom, int norm_grid_points = 1024);
  static BiphotonAmplitude two_peak(const BeamGeometry& geom, int norm_grid_points = 1024);

  double operator()(double t1, double t2) const { return norm_ * unnormalized(t1, t2); }
  double unnormalized(double t1, double t2) const;

  AmplitudeKind kind() const { return kind_; }
  const BeamGeometry& geometry() const { return geom_; }
  double norm_factor() const { return norm_; }
  bool peaks_not_separated() const { return peaks_not_separated_; }

  /// Window half-extent theta_0 + 8 max(dtp, dtl^2/theta_0).
  double default_half_extent() const;
  Grid1D default_grid(int n_points = 1024) const;

  /// Default tolerance for the out-of-window mass check: 1e-8 for the
  /// Gaussian kinds; 1e-3 for exact_sinc, whose |Psi|^2 tails decay only as
  /// the fourth power of the difference angle.
  double default_mass_tolerance() const;

 private:
  BiphotonAmplitude(AmplitudeKind kind, const BeamGeometry& geom, int norm_grid_points);
  AmplitudeKind kind_;
  BeamGeometry geom_;
  double norm_ = 1.0;
  bool peaks_not_separated_ = false;
};

/// Merged collinear double Gaussian
/// sqrt(2/(pi a b)) exp(-(t1+t2)^2/(2a^2)) exp(-(t1-t2)^2/(2b^2)); unit L^2
/// norm in closed form.
struct CollinearAmplitude {
  double a;
  double b;

  double operator()(double t1, double t2) const;

  /// Window sized to hold both the kernel and the Hermite-Gaussian modes that
  /// carry mass above ~1e-12, with enough points to resolve their
  /// oscillations.
  Grid1D default_grid(int n_points = 1024) const;
};

/// Rigorous upper bound on the relative |Psi|^2 mass outside the square
/// window [-half_extent, half_extent]^2.
double out_of_window_mass(const BiphotonAmplitude& amp, double half_extent);

/// Samples the amplitude on the tensor grid after checking that the mass
/// outside the window, estimated by analytic tail bounds, stays below
/// `mass_tol` (the kind default when omitted). Rejects with a suggested
/// extent otherwise.
SampledAmplitude evaluate_on_grid(const BiphotonAmplitude& amp, const Grid1D& g1,
                                  const Grid1D& g2,
                                  std::optional<double> mass_tol = std::nullopt);

/// Default window widened by 25% up to three times until the out-of-window
/// mass bound drops below the tolerance; rejects if it never does.
Grid1D auto_extended_grid(const BiphotonAmplitude& amp, int n_points = 1024,
                          std::optional<double> mass_tol = std::nullopt);

SampledAmplitude evaluate_on_grid(const CollinearAmplitude& amp, const Grid1D& g1,
                                  const Grid1D& g2);

/// Rectangle in the (theta1, theta2) plane.
struct Region {
  double t1_min, t1_max, t2_min, t2_max;
};

/// Pointwise and integral discrepancies between two amplitudes of one
/// geometry, scanned on an n_scan^2 tensor grid over the region.
struct ErrorReport {
  double linf_abs;        ///< max |f - g|
  double linf_rel;        ///< max |f - g| / max |f|
  double l2_rel;          ///< ||f - g||_2 / ||f||_2 (unit-norm inputs)
  double shape_linf;      ///< max |f/max|f| - g/max|g||, normalization-free
  std::vector<double> profile_t1;  ///< max |f - g| per theta_1 row
  std::vector<double> profile_t2;  ///< max |f - g| per theta_2 column
};

ErrorReport approximation_error(const BiphotonAmplitude& f, const BiphotonAmplitude& g,
                                const Region& region, int n_scan = 512);

}  // namespace biphoton
