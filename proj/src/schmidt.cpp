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

#include "biphoton/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "biphoton/amplitude.hpp"
#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

double q_ratio(const MergedWidths& w) {
  const double r = (w.a - w.b) / (w.a + w.b);
  return r * r;
}

double lambda0(const MergedWidths& w) { return 4.0 * w.a * w.b / ((w.a + w.b) * (w.a + w.b)); }

void check_widths(const MergedWidths& w) {
  if (!(w.a > 0.0) || !(w.b > 0.0) || !std::isfinite(w.a) || !std::isfinite(w.b)) {
    throw ValidationError("merged widths must be positive and finite");
  }
}

}  // namespace

MergedWidths merged_widths(const BeamGeometry& geom, Convention convention) {
  const double t0 = geom.theta_0();
  const double dp = geom.delta_theta_p();
  const double dl = geom.delta_theta_L();
  if (convention == Convention::matched) {
    // 1/(2 b^2) = 0.78 theta_0^2 / dl^4  =>  b = dl^2 / (theta_0 sqrt(1.56)).
    return {dp, dl * dl / (t0 * std::sqrt(1.56)), convention};
  }
  return {t0 / dp, 0.8 * t0 * t0 / (dl * dl), convention};
}

double SchmidtSpectrum::tail_mass() const {
  return std::pow(q_ratio(widths), static_cast<double>(n_max) + 1.0);
}

std::vector<double> SchmidtSpectrum::effective_weights() const {
  if (!degenerate) return lambdas;
  std::vector<double> out;
  out.reserve(2 * lambdas.size());
  for (double l : lambdas) {
    out.push_back(0.5 * l);
    out.push_back(0.5 * l);
  }
  return out;
}

int default_n_max(const MergedWidths& widths, double tail_tol) {
  check_widths(widths);
  const double q = q_ratio(widths);
  if (q == 0.0) return 0;
  // tail(N) = q^{N+1}
  const int n = static_cast<int>(std::ceil(std::log(tail_tol) / std::log(q))) - 1;
  return std::clamp(n, 0, 256);
}

SchmidtSpectrum collinear_spectrum(const MergedWidths& widths, int n_max) {
  check_widths(widths);
  if (n_max < 0) throw ValidationError("n_max must be non-negative");
  SchmidtSpectrum s;
  s.widths = widths;
  s.n_max = n_max;
  s.degenerate = false;
  s.lambdas.resize(static_cast<std::size_t>(n_max) + 1);
  const double l0 = lambda0(widths);
  const double q = q_ratio(widths);
  double l = l0;
  for (int n = 0; n <= n_max; ++n) {
    s.lambdas[static_cast<std::size_t>(n)] = l;
    l *= q;
  }
  return s;
}

double schmidt_number(const SchmidtSpectrum& spectrum) {
  const double a = spectrum.widths.a;
  const double b = spectrum.widths.b;
  const double k_part = (a * a + b * b) / (2.0 * a * b);
  return spectrum.degenerate ? 2.0 * k_part : k_part;
}

double reduced_entropy(const SchmidtSpectrum& spectrum) {
  const double q = q_ratio(spectrum.widths);
  const double l0 = lambda0(spectrum.widths);
  double sum = 0.0;
  double l = l0;
  // sum_n lambda_n log2 lambda_n to tail mass < 1e-14.
  while (l > 0.0) {
    sum += l * std::log2(l);
    l *= q;
    if (l < 1e-300) break;
    const double tail = l / (1.0 - q);
    if (tail < 1e-14) {
      // Closed-form geometric remainder sum_{k>=0} l q^k log2(l q^k).
      sum += l / (1.0 - q) * std::log2(l) + l * q * std::log2(q) / ((1.0 - q) * (1.0 - q));
      break;
    }
  }
  return spectrum.degenerate ? 1.0 - sum : 0.0 - sum;
}

NoncollinearDecomposition::NoncollinearDecomposition(SchmidtSpectrum spectrum, double theta_0)
    : spectrum_(std::move(spectrum)), theta_0_(theta_0) {
  spectrum_.degenerate = true;
}

HermiteGaussMode NoncollinearDecomposition::mode(int n, double center) const {
  return {n, spectrum_.widths.a, spectrum_.widths.b, center};
}

double NoncollinearDecomposition::original(double t1, double t2) const {
  const double a = spectrum_.widths.a, b = spectrum_.widths.b;
  const CollinearAmplitude k{a, b};
  return (k(t1 - theta_0_, t2 + theta_0_) + k(t1 + theta_0_, t2 - theta_0_)) /
         std::numbers::sqrt2;
}

double NoncollinearDecomposition::regrouped(double t1, double t2) const {
  const double a = spectrum_.widths.a, b = spectrum_.widths.b;
  const CollinearAmplitude k{a, b};
  return (k(t1 - theta_0_, t2 - theta_0_) - k(t1 + theta_0_, t2 + theta_0_)) /
         std::numbers::sqrt2;
}

double NoncollinearDecomposition::series(double t1, double t2, double sign_second) const {
  const double a = spectrum_.widths.a, b = spectrum_.widths.b;
  const double scale = std::sqrt(2.0 / (a * b));
  const double pref = std::sqrt(scale);  // (2/(ab))^{1/4}
  const double rho = (a - b) / (a + b);
  const double c0 = 2.0 * std::sqrt(a * b) / (a + b);  // sqrt(lambda_0) signed base

  const int n_max = spectrum_.n_max;
  std::vector<double> h1m(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> h1p(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> h2m(static_cast<std::size_t>(n_max) + 1);
  std::vector<double> h2p(static_cast<std::size_t>(n_max) + 1);
  hermite_functions_upto(n_max, scale * (t1 - theta_0_), h1m);
  hermite_functions_upto(n_max, scale * (t1 + theta_0_), h1p);
  hermite_functions_upto(n_max, scale * (t2 - theta_0_), h2m);
  hermite_functions_upto(n_max, scale * (t2 + theta_0_), h2p);

  double sum = 0.0;
  double coeff = c0;
  for (int n = 0; n <= n_max; ++n) {
    const auto k = static_cast<std::size_t>(n);
    // original pairing: (t1-t0, t2+t0) and (t1+t0, t2-t0)
    // regrouped pairing: (t1-t0, t2-t0) and -(t1+t0, t2+t0)
    const double first = (sign_second > 0.0) ? h1m[k] * h2p[k] : h1m[k] * h2m[k];
    const double second = (sign_second > 0.0) ? h1p[k] * h2m[k] : -h1p[k] * h2p[k];
    sum += coeff * (first + second);
    coeff *= rho;
  }
  return pref * pref * sum / std::numbers::sqrt2;
}

double NoncollinearDecomposition::original_series(double t1, double t2) const {
  return series(t1, t2, +1.0);
}

double NoncollinearDecomposition::regrouped_series(double t1, double t2) const {
  return series(t1, t2, -1.0);
}

NoncollinearDecomposition noncollinear_decomposition(const BeamGeometry& geom, int n_max) {
  if (two_peak_cross_mass(geom) > 1e-4) {
    throw GeometryError("two-peak amplitude peaks are not separated");
  }
  const MergedWidths w = merged_widths(geom, Convention::matched);
  SchmidtSpectrum s = collinear_spectrum(w, n_max);
  s.degenerate = true;
  return {std::move(s), geom.theta_0()};
}

}  // namespace biphoton
