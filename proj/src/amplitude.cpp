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

#include "biphoton/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

namespace {

constexpr double kSincGaussCoeff = 0.195;
constexpr double kPeakCoeff = 0.78;  // 4 * 0.195

/// Trapezoid integral of f over [lo, hi] with n points, compensated.
template <class F>
double quad1d(F&& f, double lo, double hi, int n) {
  const Grid1D g(lo, hi, n);
  std::vector<double> terms(static_cast<std::size_t>(n));
  const auto& w = g.weights();
  for (int i = 0; i < n; ++i) {
    terms[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)] * f(g.point(i));
  }
  return kernels::chunked_sum(terms);
}

/// Matched difference-peak width: exp(-u^2/(2 b^2)) == exp(-0.78 t0^2 u^2 / dtl^4).
double matched_peak_width(const BeamGeometry& geom) {
  const double dl2 = geom.delta_theta_L() * geom.delta_theta_L();
  return dl2 / (geom.theta_0() * std::sqrt(1.56));
}

/// |Psi|^2 difference-angle profile, unnormalized.
double v_intensity(AmplitudeKind kind, const BeamGeometry& geom, double v) {
  const double t0 = geom.theta_0();
  const double dl2 = geom.delta_theta_L() * geom.delta_theta_L();
  switch (kind) {
    case AmplitudeKind::exact_sinc: {
      const double x = (v * v - 4.0 * t0 * t0) / (2.0 * dl2);
      const double s = sinc(x);
      return s * s;
    }
    case AmplitudeKind::gauss_sinc: {
      const double x = (v * v - 4.0 * t0 * t0) / (2.0 * dl2);
      const double s = sinc_gauss(x);
      return s * s;
    }
    case AmplitudeKind::two_peak: {
      const double c = kPeakCoeff * t0 * t0 / (dl2 * dl2);
      const double g = std::exp(-c * (v - 2.0 * t0) * (v - 2.0 * t0)) +
                       std::exp(-c * (v + 2.0 * t0) * (v + 2.0 * t0));
      return g * g;
    }
  }
  return 0.0;
}

/// Rigorous upper bound on the |Psi|^2 mass outside the square window
/// [-T, T]^2, using that {|s| <= s_m, |v| <= 2T - s_m} lies inside the square
/// for s = t1 + t2, v = t1 - t2 and any split s_m.
double window_tail_bound(AmplitudeKind kind, const BeamGeometry& geom, double T) {
  const double t0 = geom.theta_0();
  const double a = geom.delta_theta_p();
  if (T <= t0) return 1.0;
  const double s_m = T - t0;
  const double v_m = 2.0 * T - s_m;  // == T + t0 > 2 t0

  const double s_big = std::max(20.0 * a, 2.0 * T);
  const double i_s = quad1d([a](double s) { return std::exp(-s * s / (a * a)); }, -s_big, s_big, 8192);
  const double i_s_in =
      quad1d([a](double s) { return std::exp(-s * s / (a * a)); }, -s_m, s_m, 8192);

  const double b = matched_peak_width(geom);
  const double v_big = std::max({4.0 * T, 2.0 * t0 + 30.0 * b, 2.0 * v_m});
  auto g = [kind, &geom](double v) { return v_intensity(kind, geom, v); };
  const double i_v = quad1d(g, -v_big, v_big, 16384);
  const double i_v_in = quad1d(g, -v_m, v_m, 16384);

  // Remainder of the v-integral beyond v_big.
  double rem_v = 0.0;
  if (kind == AmplitudeKind::exact_sinc) {
    // sinc^2(x) <= 1/x^2 and v^2 - 4 t0^2 >= v^2 (1 - (2 t0 / v_big)^2).
    const double dl2 = geom.delta_theta_L() * geom.delta_theta_L();
    const double shrink = 1.0 - (2.0 * t0 / v_big) * (2.0 * t0 / v_big);
    rem_v = 2.0 * 4.0 * dl2 * dl2 / (3.0 * v_big * v_big * v_big * shrink * shrink);
  } else {
    const double arg = (v_big - 2.0 * t0) / b;
    rem_v = 2.0 * b * std::sqrt(std::numbers::pi) * 0.5 * std::erfc(arg);
  }

  const double total = i_s * (i_v + rem_v);
  const double inside = i_s_in * i_v_in;
  if (!(total > 0.0)) return 1.0;
  return std::max(0.0, 1.0 - inside / total);
}

}  // namespace

double out_of_window_mass(const BiphotonAmplitude& amp, double half_extent) {
  return window_tail_bound(amp.kind(), amp.geometry(), half_extent);
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sinc_gauss(double x) { return std::exp(-kSincGaussCoeff * x * x); }

double two_peak_cross_mass(const BeamGeometry& geom) {
  const double b = matched_peak_width(geom);
  const double t0 = geom.theta_0();
  // <g+|g-> for unit-height Gaussians separated by 4 t0 in the difference angle.
  const double overlap = std::exp(-4.0 * t0 * t0 / (b * b));
  return overlap / (1.0 + overlap);
}

double BiphotonAmplitude::unnormalized(double t1, double t2) const {
  const double s = t1 + t2;
  const double v = t1 - t2;
  const double a = geom_.delta_theta_p();
  const double t0 = geom_.theta_0();
  const double dl2 = geom_.delta_theta_L() * geom_.delta_theta_L();
  const double pump = std::exp(-s * s / (2.0 * a * a));
  switch (kind_) {
    case AmplitudeKind::exact_sinc:
      return pump * sinc((v * v - 4.0 * t0 * t0) / (2.0 * dl2));
    case AmplitudeKind::gauss_sinc:
      return pump * sinc_gauss((v * v - 4.0 * t0 * t0) / (2.0 * dl2));
    case AmplitudeKind::two_peak: {
      const double c = kPeakCoeff * t0 * t0 / (dl2 * dl2);
      return pump * (std::exp(-c * (v - 2.0 * t0) * (v - 2.0 * t0)) +
                     std::exp(-c * (v + 2.0 * t0) * (v + 2.0 * t0)));
    }
  }
  return 0.0;
}

double BiphotonAmplitude::default_half_extent() const {
  const double w = std::max(geom_.delta_theta_p(),
                            geom_.delta_theta_L() * geom_.delta_theta_L() / geom_.theta_0());
  return geom_.theta_0() + 8.0 * w;
}

Grid1D BiphotonAmplitude::default_grid(int n_points) const {
  return Grid1D::symmetric(default_half_extent(), n_points);
}

double BiphotonAmplitude::default_mass_tolerance() const {
  return kind_ == AmplitudeKind::exact_sinc ? 1e-3 : 1e-8;
}

BiphotonAmplitude::BiphotonAmplitude(AmplitudeKind kind, const BeamGeometry& geom,
                                     int norm_grid_points)
    : kind_(kind), geom_(geom) {
  if (norm_grid_points < 64) {
    throw ValidationError("normalization grid needs at least 64 points per axis");
  }
  peaks_not_separated_ = two_peak_cross_mass(geom) > 1e-4;

  auto norm_sq_on = [this](int n) {
    const Grid1D g = default_grid(n);
    const Eigen::MatrixXd values =
        kernels::evaluate_grid(g, g, [this](double t1, double t2) { return unnormalized(t1, t2); });
    return kernels::weighted_norm_sq(values, g.weights(), g.weights());
  };
  // The doubled rule pins the norm; the requested rule only gauges convergence.
  const double fine = norm_sq_on(2 * norm_grid_points);
  const double coarse = norm_sq_on(norm_grid_points);
  if (!(fine > 0.0) || !std::isfinite(fine)) {
    throw NumericalError("amplitude normalization quadrature produced a non-positive norm");
  }
  const double achieved = std::abs(std::sqrt(coarse / fine) - 1.0);
  if (achieved > 1e-6) {
    std::ostringstream msg;
    msg << "amplitude normalization quadrature did not converge: relative change "
        << achieved << " between " << norm_grid_points << " and " << 2 * norm_grid_points
        << " points (want <= 1e-6)";
    throw NumericalError(msg.str());
  }
  norm_ = 1.0 / std::sqrt(fine);
}

BiphotonAmplitude BiphotonAmplitude::exact(const BeamGeometry& geom, int norm_grid_points) {
  return {AmplitudeKind::exact_sinc, geom, norm_grid_points};
}

BiphotonAmplitude BiphotonAmplitude::gauss_sinc(const BeamGeometry& geom, int norm_grid_points) {
  return {AmplitudeKind::gauss_sinc, geom, norm_grid_points};
}

BiphotonAmplitude BiphotonAmplitude::two_peak(const BeamGeometry& geom, int norm_grid_points) {
  return {AmplitudeKind::two_peak, geom, norm_grid_points};
}

double CollinearAmplitude::operator()(double t1, double t2) const {
  const double s = t1 + t2;
  const double v = t1 - t2;
  const double pref = std::sqrt(2.0 / (std::numbers::pi * a * b));
  return pref * std::exp(-s * s / (2.0 * a * a)) * std::exp(-v * v / (2.0 * b * b));
}

Grid1D CollinearAmplitude::default_grid(int n_points) const {
  const MergedWidths w{a, b, Convention::matched};
  const int nm = std::clamp(default_n_max(w, 1e-12), 8, 96);
  const double mode_scale = std::sqrt(a * b / 2.0);
  const double T = std::max(mode_scale * (std::sqrt(2.0 * nm + 1.0) + 6.0),
                            4.0 * std::hypot(a, b));
  return Grid1D::symmetric(T, n_points);
}

SampledAmplitude evaluate_on_grid(const BiphotonAmplitude& amp, const Grid1D& g1,
                                  const Grid1D& g2, std::optional<double> mass_tol) {
  const double tol = mass_tol.value_or(amp.default_mass_tolerance());
  const double T = std::min(std::min(-g1.min(), g1.max()), std::min(-g2.min(), g2.max()));
  double est = window_tail_bound(amp.kind(), amp.geometry(), T);
  if (est > tol) {
    double suggested = T;
    double bound = est;
    for (int i = 0; i < 40 && bound > tol; ++i) {
      suggested *= 1.25;
      bound = window_tail_bound(amp.kind(), amp.geometry(), suggested);
    }
    std::ostringstream msg;
    msg << "grid extent " << T << " rad leaves an estimated relative mass " << est
        << " outside the window (tolerance " << tol << "); suggested half-extent "
        << suggested << " rad";
    throw ValidationError(msg.str());
  }
  Eigen::MatrixXd values =
      kernels::evaluate_grid(g1, g2, [&amp](double t1, double t2) { return amp(t1, t2); });
  return {g1, g2, std::move(values)};
}

Grid1D auto_extended_grid(const BiphotonAmplitude& amp, int n_points,
                          std::optional<double> mass_tol) {
  const double tol = mass_tol.value_or(amp.default_mass_tolerance());
  double T = amp.default_half_extent();
  for (int attempt = 0; attempt < 3; ++attempt) {
    if (window_tail_bound(amp.kind(), amp.geometry(), T) <= tol) break;
    T *= 1.25;
  }
  const double achieved = window_tail_bound(amp.kind(), amp.geometry(), T);
  if (achieved > tol) {
    std::ostringstream msg;
    msg << "window auto-extension exhausted at half-extent " << T
        << " rad with tail bound " << achieved << " (tolerance " << tol << ")";
    throw ValidationError(msg.str());
  }
  return Grid1D::symmetric(T, n_points);
}

SampledAmplitude evaluate_on_grid(const CollinearAmplitude& amp, const Grid1D& g1,
                                  const Grid1D& g2) {
  const double T = std::min(std::min(-g1.min(), g1.max()), std::min(-g2.min(), g2.max()));
  const double out = std::erfc(T / amp.a) + std::erfc(T / amp.b);
  if (out > 1e-8) {
    std::ostringstream msg;
    msg << "collinear grid extent " << T << " rad is too small (tail bound " << out << ")";
    throw ValidationError(msg.str());
  }
  Eigen::MatrixXd values =
      kernels::evaluate_grid(g1, g2, [&amp](double t1, double t2) { return amp(t1, t2); });
  return {g1, g2, std::move(values)};
}

ErrorReport approximation_error(const BiphotonAmplitude& f, const BiphotonAmplitude& g,
                                const Region& region, int n_scan) {
  if (!(f.geometry() == g.geometry())) {
    throw ValidationError("approximation_error requires amplitudes sharing one geometry");
  }
  if (n_scan < 8) throw ValidationError("approximation_error needs n_scan >= 8");
  const Grid1D s1(region.t1_min, region.t1_max, n_scan);
  const Grid1D s2(region.t2_min, region.t2_max, n_scan);
  const Eigen::MatrixXd fv =
      kernels::evaluate_grid(s1, s2, [&f](double a, double b) { return f(a, b); });
  const Eigen::MatrixXd gv =
      kernels::evaluate_grid(s1, s2, [&g](double a, double b) { return g(a, b); });

  ErrorReport rep;
  const Eigen::MatrixXd diff = fv - gv;
  rep.linf_abs = diff.cwiseAbs().maxCoeff();
  const double f_max = fv.cwiseAbs().maxCoeff();
  const double g_max = gv.cwiseAbs().maxCoeff();
  if (!(f_max > 0.0) || !(g_max > 0.0)) {
    throw NumericalError("approximation_error: an amplitude vanishes on the region");
  }
  rep.linf_rel = rep.linf_abs / f_max;
  rep.shape_linf = (fv / f_max - gv / g_max).cwiseAbs().maxCoeff();
  const double diff_norm = kernels::weighted_norm_sq(diff, s1.weights(), s2.weights());
  const double f_norm = kernels::weighted_norm_sq(fv, s1.weights(), s2.weights());
  rep.l2_rel = std::sqrt(diff_norm / f_norm);
  rep.profile_t1.resize(static_cast<std::size_t>(n_scan));
  rep.profile_t2.resize(static_cast<std::size_t>(n_scan));
  for (int i = 0; i < n_scan; ++i) {
    rep.profile_t1[static_cast<std::size_t>(i)] = diff.row(i).cwiseAbs().maxCoeff();
    rep.profile_t2[static_cast<std::size_t>(i)] = diff.col(i).cwiseAbs().maxCoeff();
  }
  return rep;
}

}  // namespace biphoton
