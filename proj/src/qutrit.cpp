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

#include "biphoton/qutrit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

using Complex = std::complex<double>;

constexpr double kNormTol = 1e-12;
constexpr double kDegenerateGap = 1e-10;
constexpr double kSqrt1_2 = std::numbers::sqrt2 / 2.0;

/// Phase gamma whose removal makes the largest-magnitude component real
/// positive (ties broken toward the first component).
double canonical_phase(const Eigen::Vector2cd& v) {
  const int idx = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
  const Complex c = v(idx);
  if (std::abs(c) == 0.0) return 0.0;
  return std::arg(c);
}

/// Wrap to (-pi/2, pi/2]; e^{2i phi} has period pi.
double wrap_half_pi(double phi) {
  const double pi = std::numbers::pi;
  while (phi > pi / 2.0) phi -= pi;
  while (phi <= -pi / 2.0) phi += pi;
  return phi;
}

/// Takagi vector from an eigenvector of A A^dagger: A conj(v) = c v with
/// |c| = sigma, and u = e^{i arg(c)/2} v satisfies A conj(u) = sigma u.
Eigen::Vector2cd takagi_align(const Eigen::Matrix2cd& A, const Eigen::Vector2cd& v) {
  const Eigen::Vector2cd w = A * v.conjugate();
  const Complex c = v.dot(w);  // v^dagger w
  if (std::abs(c) < 1e-14) return v;
  return std::polar(1.0, std::arg(c) / 2.0) * v;
}

struct TakagiPair {
  Eigen::Vector2cd u_plus, u_minus;  // A = s+ u+ u+^T + s- u- u-^T
};

/// Degenerate spectrum: A/sigma is a symmetric unitary W, and any U with
/// U U^T = W gives a valid mode pair. The principal square root of W is such
/// a U (functions of a symmetric matrix stay symmetric; of a unitary, unitary).
TakagiPair takagi_degenerate_sqrt(const Eigen::Matrix2cd& A, double sigma) {
  const Eigen::Matrix2cd W = A / sigma;
  const Complex w11 = W(0, 0), w12 = W(0, 1), w22 = W(1, 1);
  const Complex mean = 0.5 * (w11 + w22);
  const Complex disc = std::sqrt(0.25 * (w11 - w22) * (w11 - w22) + w12 * w12);
  const Complex mu1 = mean + disc;
  const Complex mu2 = mean - disc;

  Eigen::Matrix2cd U;
  if (std::abs(mu1 - mu2) < 1e-13) {
    // W = mu * I.
    U = std::sqrt(mu1) * Eigen::Matrix2cd::Identity();
  } else {
    // W is normal, so eigenvectors are orthonormal in the Hermitian sense.
    Eigen::Vector2cd v1(w12, mu1 - w11);
    Eigen::Vector2cd alt(mu1 - w22, w12);
    if (alt.norm() > v1.norm()) v1 = alt;
    v1.normalize();
    const Eigen::Vector2cd v2(-std::conj(v1(1)), std::conj(v1(0)));
    const Eigen::Matrix2cd V = (Eigen::Matrix2cd() << v1, v2).finished();
    U = V * Eigen::Vector2cd(std::sqrt(mu1), std::sqrt(mu2)).asDiagonal() * V.adjoint();
  }
  return {U.col(0), U.col(1)};
}

bool lexicographic_before(const Eigen::Vector2cd& x, const Eigen::Vector2cd& y) {
  for (int i = 0; i < 2; ++i) {
    if (x(i).real() != y(i).real()) return x(i).real() > y(i).real();
    if (x(i).imag() != y(i).imag()) return x(i).imag() > y(i).imag();
  }
  return false;
}

}  // namespace

QutritState::QutritState(Complex c1, Complex c2, Complex c3) : c1_(c1), c2_(c2), c3_(c3) {
  const double n2 = std::norm(c1) + std::norm(c2) + std::norm(c3);
  if (std::abs(n2 - 1.0) > kNormTol) {
    throw ValidationError("qutrit amplitudes are not normalized (|norm^2 - 1| > 1e-12)");
  }
}

QutritState QutritState::normalized(Complex c1, Complex c2, Complex c3) {
  const double n2 = std::norm(c1) + std::norm(c2) + std::norm(c3);
  if (!(n2 > 0.0) || !std::isfinite(n2)) {
    throw ValidationError("qutrit amplitudes must be finite and not all zero");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return {c1 * inv, c2 * inv, c3 * inv, Unchecked{}};
}

Eigen::Matrix2cd amplitude_matrix(const QutritState& state) {
  Eigen::Matrix2cd A;
  const Complex off = state.c2() * kSqrt1_2;
  A << state.c1(), off, off, state.c3();
  return A;
}

Eigen::Matrix2cd reduce_density(const QutritState& state) {
  const Eigen::Matrix2cd A = amplitude_matrix(state);
  return A * A.adjoint();
}

QutritSchmidt schmidt_qutrit(const QutritState& state) {
  const Eigen::Matrix2cd A = amplitude_matrix(state);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(A * A.adjoint());
  // Eigen returns eigenvalues in ascending order.
  const double lm = std::clamp(es.eigenvalues()(0), 0.0, 1.0);
  const double lp = std::clamp(es.eigenvalues()(1), 0.0, 1.0);
  const bool degenerate = (lp - lm) <= kDegenerateGap;

  Eigen::Vector2cd u_plus, u_minus;
  bool reorderable = false;  // the 45/135 pair keeps its Eq.-(6) presentation
  if (!degenerate) {
    u_plus = takagi_align(A, es.eigenvectors().col(1));
    u_minus = takagi_align(A, es.eigenvectors().col(0));
  } else {
    // Prefer the 45/135 diagonal pair; it is valid exactly when the bilinear
    // cross term vanishes, which covers the |1H,1V> case of the 45-degree
    // basis rotation.
    const Eigen::Vector2cd d45(kSqrt1_2, kSqrt1_2);
    const Eigen::Vector2cd d135(kSqrt1_2, -kSqrt1_2);
    const Complex cross = (d45.transpose() * A * d135).value();
    if (std::abs(cross) < 1e-10) {
      const Complex c45 = (d45.transpose() * A * d45).value();
      const Complex c135 = (d135.transpose() * A * d135).value();
      u_plus = std::sqrt(c45 / std::sqrt(lp)) * d45;
      u_minus = std::sqrt(c135 / std::sqrt(lm)) * d135;
    } else {
      auto pair = takagi_degenerate_sqrt(A, std::sqrt(lp));
      u_plus = pair.u_plus;
      u_minus = pair.u_minus;
      reorderable = true;
    }
  }

  const double g_plus = canonical_phase(u_plus);
  const double g_minus = canonical_phase(u_minus);
  QutritSchmidt out;
  out.lambda_plus = lp;
  out.lambda_minus = lm;
  out.mode_plus = std::polar(1.0, -g_plus) * u_plus;
  out.mode_minus = std::polar(1.0, -g_minus) * u_minus;
  out.phase = wrap_half_pi(g_minus - g_plus);
  out.degenerate = degenerate;

  if (reorderable && lexicographic_before(out.mode_minus, out.mode_plus)) {
    std::swap(out.mode_plus, out.mode_minus);
    out.phase = wrap_half_pi(-out.phase);
  }
  return out;
}

QutritQuantifiers quantifiers(double lambda_plus, double lambda_minus) {
  if (!(lambda_plus >= lambda_minus) || !(lambda_minus >= 0.0) ||
      std::abs(lambda_plus + lambda_minus - 1.0) > 1e-9) {
    throw ValidationError("quantifiers require lambda+ >= lambda- >= 0 with lambda+ + lambda- = 1");
  }
  auto xlog2 = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
  QutritQuantifiers q;
  q.P = lambda_plus - lambda_minus;
  q.K = 1.0 / (lambda_plus * lambda_plus + lambda_minus * lambda_minus);
  q.C = 2.0 * std::sqrt(lambda_plus * lambda_minus);
  q.S_r = -xlog2(lambda_plus) - xlog2(lambda_minus);
  return q;
}

std::pair<double, double> lambdas_from_counts(const CountRecord& counts) {
  const std::uint64_t total = counts.n_hh + counts.n_vv;
  if (total == 0) {
    throw ValidationError("count-based estimation requires n_hh + n_vv > 0");
  }
  const double hi = static_cast<double>(std::max(counts.n_hh, counts.n_vv)) /
                    static_cast<double>(total);
  return {hi, 1.0 - hi};
}

QutritState rotate_basis_45(const QutritState& state) {
  const Complex c1 = state.c1(), c2 = state.c2(), c3 = state.c3();
  const Complex r1 = 0.5 * c1 + kSqrt1_2 * c2 + 0.5 * c3;
  const Complex r2 = kSqrt1_2 * (c1 - c3);
  const Complex r3 = 0.5 * c1 - kSqrt1_2 * c2 + 0.5 * c3;
  return QutritState::normalized(r1, r2, r3);
}

}  // namespace biphoton
