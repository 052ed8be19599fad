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
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "biphoton/amplitude.hpp"
#include "biphoton/geometry.hpp"
#include "biphoton/grid.hpp"

namespace biphoton {

enum class PolTag { H, V, D45, D135 };

/// <query|tag> in the diagonal-basis convention |D45> = (|H>+|V>)/sqrt2,
/// |D135> = (|H>-|V>)/sqrt2 (all overlaps real).
double pol_overlap(PolTag query, PolTag tag);

/// Unit-L2 double Gaussian in the rotated angles s = t1+t2, v = t1-t2.
struct GaussianFactor {
  double sum_center;
  double diff_center;
  double sum_width;
  double diff_width;

  double value(double t1, double t2) const;
  /// Photon-slot angular centers ((s0+v0)/2, (s0-v0)/2).
  std::pair<double, double> slot_centers() const;
};

/// Closed-form L2 overlap <G1|G2> including displaced centers and unequal widths.
double gaussian_overlap(const GaussianFactor& g1, const GaussianFactor& g2);

struct TaggedTerm {
  std::complex<double> coeff;
  GaussianFactor gaussian;
  PolTag pol1;
  PolTag pol2;
};

/// Finite sum of polarization-tagged double Gaussians; the closed algebra all
/// pipeline transformations act on.
class TaggedAmplitude {
 public:
  explicit TaggedAmplitude(std::vector<TaggedTerm> terms);

  const std::vector<TaggedTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Closed-form total norm, cross terms between same-polarization-pair terms
  /// included.
  double total_norm() const;

  /// Amplitude for detecting polarizations (s1, s2); D-tagged terms project
  /// through pol_overlap.
  std::complex<double> value(double t1, double t2, PolTag s1, PolTag s2) const;

  /// True when the term list is invariant under the simultaneous swap of
  /// angular arguments and polarization slots.
  bool exchange_symmetric(double tol = 1e-12) const;

 private:
  std::vector<TaggedTerm> terms_;
};

/// Type-I two-peak state: both photons H, one Gaussian term per quadrant,
/// normalized in closed form. Rejects geometries with unseparated peaks.
TaggedAmplitude initial_state(const BeamGeometry& geom);

/// H -> V on every photon slot whose angular center lies in the -theta_0
/// channel (center < -theta_0/2); centers near zero are rejected.
TaggedAmplitude flip_polarization(const TaggedAmplitude& state, double theta_0);

/// Mirrors/PBS merge: shifts each classified slot by -/+ theta_0 onto the
/// axis; all terms must land on one common angular factor.
TaggedAmplitude merge_beams(const TaggedAmplitude& state, double theta_0);

/// Rewrites the polarization part in the D45/D135 basis, cancelling
/// cross-branch components exactly.
TaggedAmplitude split_45(const TaggedAmplitude& state);

/// Sends the D45 branch to +theta_0 and the D135 branch to -theta_0 (both
/// photons of a pair together) and restores H tags on both slots.
TaggedAmplitude unmerge(const TaggedAmplitude& state, double theta_0);

struct PipelineStage {
  std::string name;
  TaggedAmplitude state;
};

/// initial -> flip -> merge -> split -> unmerge.
std::vector<PipelineStage> run_pipeline_stages(const BeamGeometry& geom);

/// Discretized joint (angle x polarization) amplitude: rows index
/// (2*i + p) for grid point i and polarization p in {H, V}; coefficients must
/// be real. Paired with joint_weights() it feeds the SVD oracle.
Eigen::MatrixXd sample_joint(const TaggedAmplitude& state, const Grid1D& grid);
std::vector<double> joint_weights(const Grid1D& grid);

enum class Quadrant { theta1_pos_theta2_neg, theta1_neg_theta2_pos };

/// Coincidence/singles width measurement in one occupied quadrant of the
/// two-peak state. FWHMs are read off dense profiles by monotone cubic
/// interpolation; R = width_single / width_coincidence equals
/// K_part = (a^2+b^2)/(2ab) for the double-Gaussian quadrant.
struct WidthReport {
  Quadrant quadrant;
  double width_coincidence;  ///< FWHM of |Psi(theta, partner fixed)|^2 [rad]
  double width_single;       ///< FWHM of the quadrant-restricted marginal [rad]
  double ratio;              ///< width_single / width_coincidence
  double k_part;             ///< (a^2+b^2)/(2ab) from the matched widths
  double defect;             ///< |ratio - k_part|
};

WidthReport width_ratio(const BeamGeometry& geom, Quadrant quadrant);

/// Exact Gaussian-mixture sampling of |Psi|^2. Deterministic for a fixed
/// seed: mt19937_64 streams per 4096-sample chunk, chunk c seeded with
/// splitmix64(seed + c + 1), three uniform draws per sample (component
/// selector + Box-Muller pair), so the output is independent of the thread
/// count. Only the two-peak kind is a finite Gaussian mixture; other kinds
/// are rejected.
std::vector<std::pair<double, double>> mc_sample(const BiphotonAmplitude& amp, std::size_t n,
                                                 std::uint64_t seed);
std::vector<std::pair<double, double>> mc_sample(const TaggedAmplitude& amp, std::size_t n,
                                                 std::uint64_t seed);

}  // namespace biphoton
