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
#include <utility>

namespace biphoton {

/// Normalized polarization two-photon state c1|2H> + c2|1H,1V> + c3|2V>.
class QutritState {
 public:
  using Complex = std::complex<double>;

  /// Requires |c1|^2+|c2|^2+|c3|^2 = 1 within 1e-12.
  QutritState(Complex c1, Complex c2, Complex c3);

  /// Rescales an arbitrary nonzero amplitude triple to unit norm.
  static QutritState normalized(Complex c1, Complex c2, Complex c3);

  Complex c1() const { return c1_; }
  Complex c2() const { return c2_; }
  Complex c3() const { return c3_; }

 private:
  struct Unchecked {};
  QutritState(Complex c1, Complex c2, Complex c3, Unchecked)
      : c1_(c1), c2_(c2), c3_(c3) {}
  Complex c1_, c2_, c3_;
};

/// Schmidt data of a qutrit. Modes are unit vectors over the (H, V) basis
/// with the largest-magnitude component made real positive; `phase` is the
/// phi of the two-term form sqrt(l+)|2+> + e^{2i phi} sqrt(l-)|2->, wrapped to
/// (-pi/2, pi/2]. The reconstruction
///   sqrt(l+) m+ m+^T + e^{2i phase} sqrt(l-) m- m-^T
/// equals the amplitude matrix up to one global phase.
struct QutritSchmidt {
  double lambda_plus;
  double lambda_minus;
  Eigen::Vector2cd mode_plus;
  Eigen::Vector2cd mode_minus;
  double phase;
  bool degenerate;
};

/// Entanglement quantifiers of a qutrit Schmidt pair.
struct QutritQuantifiers {
  double P;    ///< degree of polarization, lambda+ - lambda-
  double K;    ///< Schmidt number, 1/(lambda+^2 + lambda-^2)
  double C;    ///< concurrence, 2 sqrt(lambda+ lambda-)
  double S_r;  ///< reduced entropy in bits
};

/// Detector-pair coincidence counts after the mode-separating stage.
struct CountRecord {
  std::uint64_t n_hh;
  std::uint64_t n_vv;
};

/// Symmetric amplitude matrix: A(H,H)=c1, A(H,V)=A(V,H)=c2/sqrt2, A(V,V)=c3,
/// so that trace(A A^dagger) = 1.
Eigen::Matrix2cd amplitude_matrix(const QutritState& state);

/// Single-photon reduced density matrix A A^dagger.
Eigen::Matrix2cd reduce_density(const QutritState& state);

/// Schmidt decomposition via the symmetric (Takagi) factorization of the
/// amplitude matrix. For a degenerate spectrum the 45/135 diagonal pair is
/// returned whenever it is a valid mode basis for the state.
QutritSchmidt schmidt_qutrit(const QutritState& state);

QutritQuantifiers quantifiers(double lambda_plus, double lambda_minus);

/// (lambda+, lambda-) from detector counts, sorted lambda+ >= lambda-.
std::pair<double, double> lambdas_from_counts(const CountRecord& counts);

/// Amplitudes re-expressed in the diagonal basis |45> = (|H>+|V>)/sqrt2,
/// |135> = (|H>-|V>)/sqrt2 for each photon. This map is an involution.
QutritState rotate_basis_45(const QutritState& state);

}  // namespace biphoton
