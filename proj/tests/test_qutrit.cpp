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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "biphoton/errors.hpp"
#include "biphoton/qutrit.hpp"
#include "support/oracles.hpp"

using namespace biphoton;
using Complex = std::complex<double>;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::Matrix2cd reconstruct(const QutritSchmidt& s) {
  const Complex rot = std::polar(1.0, 2.0 * s.phase);
  return std::sqrt(s.lambda_plus) * (s.mode_plus * s.mode_plus.transpose()) +
         rot * std::sqrt(s.lambda_minus) * (s.mode_minus * s.mode_minus.transpose());
}

/// Frobenius distance between A and B after optimal global phase alignment.
double phase_aligned_distance(const Eigen::Matrix2cd& A, const Eigen::Matrix2cd& B) {
  const Complex inner = (A.adjoint() * B).trace();
  const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : Complex(1.0);
  return (A * phase - B).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("amplitude matrix carries the symmetric c2/sqrt2 convention") {
  const QutritState one_h(1.0, 0.0, 0.0);
  CHECK(amplitude_matrix(one_h)(0, 0) == Complex(1.0));
  CHECK(amplitude_matrix(one_h)(1, 1) == Complex(0.0));

  const QutritState hv(0.0, 1.0, 0.0);
  const Eigen::Matrix2cd a = amplitude_matrix(hv);
  CHECK(a(0, 1).real() == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(a(1, 0) == a(0, 1));

  const QutritState mixed(0.8, 0.0, 0.6);
  const Eigen::Matrix2cd m = amplitude_matrix(mixed);
  CHECK(m(0, 0).real() == doctest::Approx(0.8));
  CHECK(m(1, 1).real() == doctest::Approx(0.6));
  CHECK(std::abs((m * m.adjoint()).trace() - 1.0) < 1e-12);
}

TEST_CASE("state construction normalizes or rejects") {
  CHECK_THROWS_AS(QutritState(0.9, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(QutritState::normalized(0.0, 0.0, 0.0), ValidationError);
  const QutritState s = QutritState::normalized(3.0, 0.0, 4.0);
  CHECK(std::abs(s.c1()) == doctest::Approx(0.6));
  CHECK(std::abs(s.c3()) == doctest::Approx(0.8));
}

TEST_CASE("reduced density matches the closed-form eigen oracle") {
  const QutritState s(0.8, 0.0, 0.6);
  const Eigen::Matrix2cd rho = reduce_density(s);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  const auto [lp, lm] = oracles::eigen2x2(rho(0, 0).real(), rho(0, 1), rho(1, 1).real());
  CHECK(lp == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(lm == doctest::Approx(0.36).epsilon(1e-12));

  const QutritState hv(0.0, 1.0, 0.0);
  const Eigen::Matrix2cd rho_hv = reduce_density(hv);
  CHECK(rho_hv(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rho_hv(1, 1).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(rho_hv(0, 1)) < 1e-14);
}

TEST_CASE("schmidt_qutrit on |1H,1V> returns the diagonal pair with phase pi/2") {
  const QutritState hv(0.0, 1.0, 0.0);
  const QutritSchmidt s = schmidt_qutrit(hv);
  CHECK(s.degenerate);
  CHECK(s.lambda_plus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.lambda_minus == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(s.mode_plus(0) - Complex(kInvSqrt2)) < 1e-12);
  CHECK(std::abs(s.mode_plus(1) - Complex(kInvSqrt2)) < 1e-12);
  CHECK(std::abs(s.mode_minus(0) - Complex(kInvSqrt2)) < 1e-12);
  CHECK(std::abs(s.mode_minus(1) + Complex(kInvSqrt2)) < 1e-12);
  CHECK(std::abs(s.phase) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-10));
  CHECK(phase_aligned_distance(reconstruct(s), amplitude_matrix(hv)) < 1e-10);
}

TEST_CASE("schmidt_qutrit product and diagonal states") {
  const QutritSchmidt prod = schmidt_qutrit(QutritState(1.0, 0.0, 0.0));
  CHECK(prod.lambda_plus == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(prod.lambda_minus == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_FALSE(prod.degenerate);

  const QutritSchmidt diag = schmidt_qutrit(QutritState(0.8, 0.0, 0.6));
  CHECK(diag.lambda_plus == doctest::Approx(0.64).epsilon(1e-12));
  CHECK(diag.lambda_minus == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(phase_aligned_distance(reconstruct(diag), amplitude_matrix(QutritState(0.8, 0.0, 0.6))) <
        1e-10);
}

TEST_CASE("degenerate states beyond the 45/135 family still reconstruct") {
  // diag(1, i)/sqrt2 has a degenerate spectrum but its Takagi basis is H/V
  // with distinct phases; the 45/135 pair cannot represent it.
  const QutritState s(kInvSqrt2, 0.0, Complex(0.0, kInvSqrt2));
  const QutritSchmidt schmidt = schmidt_qutrit(s);
  CHECK(schmidt.degenerate);
  CHECK(phase_aligned_distance(reconstruct(schmidt), amplitude_matrix(s)) < 1e-10);
}

TEST_CASE("quantifiers hit the paper's corner cases") {
  const QutritQuantifiers max_ent = quantifiers(0.5, 0.5);
  CHECK(max_ent.P == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(max_ent.K == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(max_ent.C == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_ent.S_r == doctest::Approx(1.0).epsilon(1e-15));

  const QutritQuantifiers pure = quantifiers(1.0, 0.0);
  CHECK(pure.P == doctest::Approx(1.0));
  CHECK(pure.K == doctest::Approx(1.0));
  CHECK(pure.C == doctest::Approx(0.0));
  CHECK(pure.S_r == doctest::Approx(0.0));

  const QutritQuantifiers q = quantifiers(0.64, 0.36);
  CHECK(q.P == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(q.K == doctest::Approx(1.0 / (0.64 * 0.64 + 0.36 * 0.36)).epsilon(1e-14));
  CHECK(q.K == doctest::Approx(1.8546).epsilon(1e-4));
  CHECK(q.C == doctest::Approx(0.96).epsilon(1e-12));
  CHECK(q.S_r == doctest::Approx(-0.64 * std::log2(0.64) - 0.36 * std::log2(0.36)).epsilon(1e-14));
  CHECK(q.S_r == doctest::Approx(0.9427).epsilon(1e-4));

  CHECK_THROWS_AS(quantifiers(0.4, 0.6), ValidationError);
  CHECK_THROWS_AS(quantifiers(0.7, 0.2), ValidationError);
}

TEST_CASE("count-based estimation sorts and validates") {
  const auto equal = lambdas_from_counts({500, 500});
  CHECK(equal.first == 0.5);
  CHECK(equal.second == 0.5);
  const auto all_h = lambdas_from_counts({1000, 0});
  CHECK(all_h.first == 1.0);
  CHECK(all_h.second == 0.0);
  const auto skew = lambdas_from_counts({640, 360});
  CHECK(skew.first == 0.64);
  CHECK(skew.second == doctest::Approx(0.36).epsilon(1e-15));
  const auto flipped = lambdas_from_counts({360, 640});
  CHECK(flipped.first == 0.64);
  CHECK_THROWS_AS(lambdas_from_counts({0, 0}), ValidationError);
}

TEST_CASE("rotate_basis_45 reproduces the worked examples and is an involution") {
  const QutritState hv(0.0, 1.0, 0.0);
  const QutritState rot = rotate_basis_45(hv);
  CHECK(rot.c1().real() == doctest::Approx(kInvSqrt2).epsilon(1e-14));
  CHECK(std::abs(rot.c2()) < 1e-14);
  CHECK(rot.c3().real() == doctest::Approx(-kInvSqrt2).epsilon(1e-14));

  const QutritState back = rotate_basis_45(rot);
  CHECK(std::abs(back.c1()) < 1e-14);
  CHECK(back.c2().real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(back.c3()) < 1e-14);

  const QutritState two_h(1.0, 0.0, 0.0);
  const QutritState rot_h = rotate_basis_45(two_h);
  CHECK(rot_h.c1().real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rot_h.c2().real() == doctest::Approx(kInvSqrt2).epsilon(1e-14));
  CHECK(rot_h.c3().real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("property: spectrum, reconstruction, and rotation invariance over random states") {
  std::mt19937_64 gen(20260811);
  for (int trial = 0; trial < 10'000; ++trial) {
    const auto c = oracles::random_qutrit(gen);
    const QutritState s = QutritState::normalized(c[0], c[1], c[2]);

    const Eigen::Matrix2cd rho = reduce_density(s);
    const auto [op, om] = oracles::eigen2x2(rho(0, 0).real(), rho(0, 1), rho(1, 1).real());
    CHECK(std::abs(op + om - 1.0) < 1e-12);
    CHECK(op >= -1e-14);
    CHECK(op <= 1.0 + 1e-14);

    const QutritSchmidt schmidt = schmidt_qutrit(s);
    CHECK(std::abs(schmidt.lambda_plus - op) < 1e-12);
    CHECK(std::abs(schmidt.lambda_minus - om) < 1e-12);
    CHECK(std::abs(schmidt.mode_plus.dot(schmidt.mode_minus)) < 1e-10);

    const QutritQuantifiers q = quantifiers(schmidt.lambda_plus, schmidt.lambda_minus);
    CHECK(std::abs(q.P * q.P + q.C * q.C - 1.0) < 1e-10);

    CHECK(phase_aligned_distance(reconstruct(schmidt), amplitude_matrix(s)) < 1e-10);

    const QutritSchmidt rotated = schmidt_qutrit(rotate_basis_45(s));
    CHECK(std::abs(rotated.lambda_plus - schmidt.lambda_plus) < 1e-10);
    CHECK(std::abs(rotated.lambda_minus - schmidt.lambda_minus) < 1e-10);
  }
}
