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

#include "biphoton/pipeline.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "biphoton/errors.hpp"
#include "biphoton/kernels.hpp"
#include "biphoton/rng.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

namespace {

constexpr double kSqrt1_2 = std::numbers::sqrt2 / 2.0;

std::array<double, 2> pol_components(PolTag tag) {
  switch (tag) {
    case PolTag::H:
      return {1.0, 0.0};
    case PolTag::V:
      return {0.0, 1.0};
    case PolTag::D45:
      return {kSqrt1_2, kSqrt1_2};
    case PolTag::D135:
      return {kSqrt1_2, -kSqrt1_2};
  }
  return {0.0, 0.0};
}

bool is_hv(PolTag tag) { return tag == PolTag::H || tag == PolTag::V; }

/// Channel of an angular slot center: -1 for the -theta_0 beam, +1 for the
/// +theta_0 beam; centers near the axis are not classifiable.
int classify_channel(double center, double theta_0) {
  if (center < -0.5 * theta_0) return -1;
  if (center > 0.5 * theta_0) return +1;
  std::ostringstream msg;
  msg << "photon slot center " << center << " rad is within theta_0/2 of the axis; "
      << "channel assignment would be a guess";
  throw ValidationError(msg.str());
}

bool gaussians_equal(const GaussianFactor& x, const GaussianFactor& y, double tol) {
  return std::abs(x.sum_center - y.sum_center) <= tol &&
         std::abs(x.diff_center - y.diff_center) <= tol &&
         std::abs(x.sum_width - y.sum_width) <= tol &&
         std::abs(x.diff_width - y.diff_width) <= tol;
}

}  // namespace

double pol_overlap(PolTag query, PolTag tag) {
  const auto q = pol_components(query);
  const auto t = pol_components(tag);
  return q[0] * t[0] + q[1] * t[1];
}

double GaussianFactor::value(double t1, double t2) const {
  const double s = t1 + t2;
  const double v = t1 - t2;
  const double pref = std::sqrt(2.0 / (std::numbers::pi * sum_width * diff_width));
  const double es = (s - sum_center) / sum_width;
  const double ev = (v - diff_center) / diff_width;
  return pref * std::exp(-0.5 * es * es) * std::exp(-0.5 * ev * ev);
}

std::pair<double, double> GaussianFactor::slot_centers() const {
  return {0.5 * (sum_center + diff_center), 0.5 * (sum_center - diff_center)};
}

double gaussian_overlap(const GaussianFactor& g1, const GaussianFactor& g2) {
  auto axis = [](double c1, double w1, double c2, double w2) {
    const double wsq = w1 * w1 + w2 * w2;
    const double d = c1 - c2;
    return std::sqrt(2.0 * w1 * w2 / wsq) * std::exp(-d * d / (2.0 * wsq));
  };
  return axis(g1.sum_center, g1.sum_width, g2.sum_center, g2.sum_width) *
         axis(g1.diff_center, g1.diff_width, g2.diff_center, g2.diff_width);
}

TaggedAmplitude::TaggedAmplitude(std::vector<TaggedTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("TaggedAmplitude requires at least one term");
  for (const auto& t : terms_) {
    if (!(t.gaussian.sum_width > 0.0) || !(t.gaussian.diff_width > 0.0)) {
      throw ValidationError("TaggedAmplitude term has non-positive widths");
    }
  }
}

double TaggedAmplitude::total_norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const double pol = pol_overlap(terms_[i].pol1, terms_[j].pol1) *
                         pol_overlap(terms_[i].pol2, terms_[j].pol2);
      if (pol == 0.0) continue;
      const double g = gaussian_overlap(terms_[i].gaussian, terms_[j].gaussian);
      acc += (std::conj(terms_[i].coeff) * terms_[j].coeff).real() * pol * g;
    }
  }
  return std::sqrt(std::max(acc, 0.0));
}

std::complex<double> TaggedAmplitude::value(double t1, double t2, PolTag s1, PolTag s2) const {
  std::complex<double> acc = 0.0;
  for (const auto& t : terms_) {
    const double pol = pol_overlap(s1, t.pol1) * pol_overlap(s2, t.pol2);
    if (pol == 0.0) continue;
    acc += t.coeff * pol * t.gaussian.value(t1, t2);
  }
  return acc;
}

bool TaggedAmplitude::exchange_symmetric(double tol) const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
      const auto& a = terms_[i];
      const auto& b = terms_[j];
      const GaussianFactor mirror{b.gaussian.sum_center, -b.gaussian.diff_center,
                                  b.gaussian.sum_width, b.gaussian.diff_width};
      if (gaussians_equal(a.gaussian, mirror, tol) && a.pol1 == b.pol2 && a.pol2 == b.pol1 &&
          std::abs(a.coeff - b.coeff) <= tol) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

TaggedAmplitude initial_state(const BeamGeometry& geom) {
  if (two_peak_cross_mass(geom) > 1e-4) {
    throw GeometryError("two-peak amplitude peaks are not separated");
  }
  const MergedWidths w = merged_widths(geom, Convention::matched);
  const double t0 = geom.theta_0();
  const GaussianFactor plus{0.0, 2.0 * t0, w.a, w.b};
  const GaussianFactor minus{0.0, -2.0 * t0, w.a, w.b};
  const double overlap = gaussian_overlap(plus, minus);
  const double c = 1.0 / std::sqrt(2.0 * (1.0 + overlap));
  return TaggedAmplitude({{c, plus, PolTag::H, PolTag::H}, {c, minus, PolTag::H, PolTag::H}});
}

TaggedAmplitude flip_polarization(const TaggedAmplitude& state, double theta_0) {
  std::vector<TaggedTerm> out = state.terms();
  for (auto& t : out) {
    if (!is_hv(t.pol1) || !is_hv(t.pol2)) {
      throw ValidationError("flip_polarization expects H/V tags");
    }
    const auto centers = t.gaussian.slot_centers();
    if (classify_channel(centers.first, theta_0) < 0) {
      t.pol1 = t.pol1 == PolTag::H ? PolTag::V : PolTag::H;
    }
    if (classify_channel(centers.second, theta_0) < 0) {
      t.pol2 = t.pol2 == PolTag::H ? PolTag::V : PolTag::H;
    }
  }
  return TaggedAmplitude(std::move(out));
}

TaggedAmplitude merge_beams(const TaggedAmplitude& state, double theta_0) {
  std::vector<TaggedTerm> out = state.terms();
  for (auto& t : out) {
    const auto centers = t.gaussian.slot_centers();
    const double shift1 = classify_channel(centers.first, theta_0) * theta_0;
    const double shift2 = classify_channel(centers.second, theta_0) * theta_0;
    t.gaussian.sum_center -= shift1 + shift2;
    t.gaussian.diff_center -= shift1 - shift2;
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!gaussians_equal(out[i].gaussian, out[0].gaussian, 1e-12)) {
      throw ValidationError("merge_beams: shifted terms do not share one angular factor");
    }
  }
  return TaggedAmplitude(std::move(out));
}

TaggedAmplitude split_45(const TaggedAmplitude& state) {
  const auto& terms = state.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (!is_hv(terms[i].pol1) || !is_hv(terms[i].pol2)) {
      throw ValidationError("split_45 expects H/V tags");
    }
    if (!gaussians_equal(terms[i].gaussian, terms[0].gaussian, 1e-12)) {
      throw ValidationError("split_45 expects a merged state with one angular factor");
    }
  }
  // H = (D45 + D135)/sqrt2, V = (D45 - D135)/sqrt2.
  auto expansion = [](PolTag p) -> std::array<std::pair<PolTag, double>, 2> {
    const double sign = p == PolTag::H ? 1.0 : -1.0;
    return {{{PolTag::D45, kSqrt1_2}, {PolTag::D135, sign * kSqrt1_2}}};
  };
  // Accumulate onto the 2x2 D-basis coefficient table.
  std::array<std::array<std::complex<double>, 2>, 2> coeff{};
  for (const auto& t : terms) {
    for (const auto& [p1, f1] : expansion(t.pol1)) {
      for (const auto& [p2, f2] : expansion(t.pol2)) {
        coeff[p1 == PolTag::D135 ? 1 : 0][p2 == PolTag::D135 ? 1 : 0] += t.coeff * f1 * f2;
      }
    }
  }
  const std::array<PolTag, 2> tags{PolTag::D45, PolTag::D135};
  std::vector<TaggedTerm> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(coeff[i][j]) < 1e-14) continue;
      out.push_back({coeff[i][j], terms[0].gaussian, tags[static_cast<std::size_t>(i)],
                     tags[static_cast<std::size_t>(j)]});
    }
  }
  return TaggedAmplitude(std::move(out));
}

TaggedAmplitude unmerge(const TaggedAmplitude& state, double theta_0) {
  std::vector<TaggedTerm> out = state.terms();
  for (auto& t : out) {
    if (t.pol1 != t.pol2 || is_hv(t.pol1)) {
      throw ValidationError("unmerge expects unsplit D45/D135 photon pairs");
    }
    const double direction = t.pol1 == PolTag::D45 ? 1.0 : -1.0;
    t.gaussian.sum_center += 2.0 * direction * theta_0;
    t.pol1 = PolTag::H;
    t.pol2 = PolTag::H;
  }
  return TaggedAmplitude(std::move(out));
}

std::vector<PipelineStage> run_pipeline_stages(const BeamGeometry& geom) {
  const double t0 = geom.theta_0();
  std::vector<PipelineStage> stages;
  stages.push_back({"initial", initial_state(geom)});
  stages.push_back({"flip", flip_polarization(stages.back().state, t0)});
  stages.push_back({"merge", merge_beams(stages.back().state, t0)});
  stages.push_back({"split", split_45(stages.back().state)});
  stages.push_back({"unmerge", unmerge(stages.back().state, t0)});
  return stages;
}

Eigen::MatrixXd sample_joint(const TaggedAmplitude& state, const Grid1D& grid) {
  const int n = grid.size();
  struct RealTerm {
    double coeff;
    GaussianFactor gaussian;
    std::array<double, 2> u1, u2;
  };
  std::vector<RealTerm> terms;
  for (const auto& t : state.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-12 * std::abs(t.coeff)) {
      throw ValidationError("sample_joint supports real coefficients only");
    }
    terms.push_back({t.coeff.real(), t.gaussian, pol_components(t.pol1), pol_components(t.pol2)});
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * n, 2 * n);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      for (const auto& t : terms) {
        const double g = t.coeff * t.gaussian.value(grid.point(i), grid.point(j));
        for (int p = 0; p < 2; ++p) {
          if (t.u1[static_cast<std::size_t>(p)] == 0.0) continue;
          for (int q = 0; q < 2; ++q) {
            M(2 * i + p, 2 * j + q) +=
                g * t.u1[static_cast<std::size_t>(p)] * t.u2[static_cast<std::size_t>(q)];
          }
        }
      }
    }
  }
  return M;
}

std::vector<double> joint_weights(const Grid1D& grid) {
  std::vector<double> w(2 * static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    w[2 * static_cast<std::size_t>(i)] = grid.weights()[static_cast<std::size_t>(i)];
    w[2 * static_cast<std::size_t>(i) + 1] = grid.weights()[static_cast<std::size_t>(i)];
  }
  return w;
}

namespace {

/// Fritsch-Carlson monotone slope at an interior sample of a uniform grid.
double pchip_slope(double delta_left, double delta_right) {
  if (delta_left * delta_right <= 0.0) return 0.0;
  const double mean = 0.5 * (delta_left + delta_right);
  const double cap = 3.0 * std::min(std::abs(delta_left), std::abs(delta_right));
  return std::copysign(std::min(std::abs(mean), cap), mean);
}

/// x where the monotone cubic through (x0,y0,d0)-(x1,y1,d1) crosses `target`.
double hermite_crossing(double x0, double x1, double y0, double y1, double d0, double d1,
                        double target) {
  const double h = x1 - x0;
  auto eval = [&](double t) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
  };
  double lo = 0.0, hi = 1.0;
  const bool rising = y1 > y0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if ((eval(mid) < target) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return x0 + 0.5 * (lo + hi) * h;
}

/// FWHM of a single-peaked profile by monotone cubic interpolation around the
/// half-max brackets. Profiles crossing half-max more than twice are rejected.
double fwhm_from_profile(const Grid1D& x, const std::vector<double>& y) {
  const int n = x.size();
  int imax = 0;
  for (int i = 1; i < n; ++i) {
    if (y[static_cast<std::size_t>(i)] > y[static_cast<std::size_t>(imax)]) imax = i;
  }
  const double half = 0.5 * y[static_cast<std::size_t>(imax)];
  if (!(half > 0.0)) throw NumericalError("width profile has no positive maximum");

  std::vector<int> brackets;
  for (int i = 0; i + 1 < n; ++i) {
    const double a = y[static_cast<std::size_t>(i)] - half;
    const double b = y[static_cast<std::size_t>(i) + 1] - half;
    if (a == 0.0) continue;
    if (a * b < 0.0 || (b == 0.0 && a != 0.0 && i + 2 < n &&
                        (y[static_cast<std::size_t>(i) + 2] - half) * a < 0.0)) {
      brackets.push_back(i);
    }
  }
  if (brackets.size() != 2) {
    std::ostringstream msg;
    msg << "width profile crosses half-maximum " << brackets.size()
        << " times; expected a single-peaked slice";
    throw GeometryError(msg.str());
  }

  auto crossing = [&](int i) {
    const double h = x.spacing();
    auto yy = [&](int k) { return y[static_cast<std::size_t>(std::clamp(k, 0, n - 1))]; };
    const double dl = (yy(i) - yy(i - 1)) / h;
    const double dm = (yy(i + 1) - yy(i)) / h;
    const double dr = (yy(i + 2) - yy(i + 1)) / h;
    const double d0 = i == 0 ? dm : pchip_slope(dl, dm);
    const double d1 = i + 2 >= n ? dm : pchip_slope(dm, dr);
    return hermite_crossing(x.point(i), x.point(i + 1), yy(i), yy(i + 1), d0, d1, half);
  };
  return crossing(brackets[1]) - crossing(brackets[0]);
}

}  // namespace

WidthReport width_ratio(const BeamGeometry& geom, Quadrant quadrant) {
  if (two_peak_cross_mass(geom) > 1e-4) {
    throw GeometryError("width_ratio requires separated two-peak quadrants");
  }
  const MergedWidths w = merged_widths(geom, Convention::matched);
  const double a = w.a, b = w.b;
  const double t0 = geom.theta_0();
  const double sign = quadrant == Quadrant::theta1_pos_theta2_neg ? 1.0 : -1.0;

  const double c_coeff = 0.78 * t0 * t0 /
                         (geom.delta_theta_L() * geom.delta_theta_L() * geom.delta_theta_L() *
                          geom.delta_theta_L());
  auto intensity = [&](double t1, double t2) {
    const double s = t1 + t2;
    const double v = t1 - t2;
    const double pump = std::exp(-s * s / (2.0 * a * a));
    const double peaks = std::exp(-c_coeff * (v - 2.0 * t0) * (v - 2.0 * t0)) +
                         std::exp(-c_coeff * (v + 2.0 * t0) * (v + 2.0 * t0));
    const double psi = pump * peaks;
    return psi * psi;
  };

  // theta_1 scans around sign*t0; the partner detector sits at -sign*t0 and
  // the singles marginal integrates theta_2 over the quadrant's half-line.
  const double sigma_s = std::sqrt((a * a + b * b) / 8.0);
  const int n_scan = 4097;
  const Grid1D scan(sign * t0 - 12.0 * sigma_s, sign * t0 + 12.0 * sigma_s, n_scan);

  std::vector<double> coincidence(static_cast<std::size_t>(n_scan));
  std::vector<double> singles(static_cast<std::size_t>(n_scan));
  const double partner = -sign * t0;
  const double W = 12.0 * std::max(a, b);
  const double p_lo = sign > 0 ? partner - W : 0.0;
  const double p_hi = sign > 0 ? 0.0 : partner + W;
  const Grid1D pgrid(p_lo, p_hi, 2049);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int i = 0; i < n_scan; ++i) {
    const double t = scan.point(i);
    coincidence[static_cast<std::size_t>(i)] = intensity(t, partner);
    kernels::Neumaier acc;
    for (int k = 0; k < pgrid.size(); ++k) {
      acc.add(pgrid.weights()[static_cast<std::size_t>(k)] * intensity(t, pgrid.point(k)));
    }
    singles[static_cast<std::size_t>(i)] = acc.value();
  }

  WidthReport rep;
  rep.quadrant = quadrant;
  rep.width_coincidence = fwhm_from_profile(scan, coincidence);
  rep.width_single = fwhm_from_profile(scan, singles);
  rep.ratio = rep.width_single / rep.width_coincidence;
  rep.k_part = (a * a + b * b) / (2.0 * a * b);
  rep.defect = std::abs(rep.ratio - rep.k_part);
  return rep;
}

namespace {

struct MixtureComponent {
  double weight;
  double s0, v0;
  double s_sigma, v_sigma;
};

constexpr std::size_t kMcChunk = 4096;

std::vector<std::pair<double, double>> sample_mixture(const std::vector<MixtureComponent>& comps,
                                                      std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("mc_sample requires n > 0");
  double total = 0.0;
  for (const auto& c : comps) total += c.weight;
  std::vector<double> cumulative;
  cumulative.reserve(comps.size());
  double run = 0.0;
  for (const auto& c : comps) {
    run += c.weight / total;
    cumulative.push_back(run);
  }
  cumulative.back() = 1.0;

  std::vector<std::pair<double, double>> out(n);
  const std::ptrdiff_t n_chunks =
      static_cast<std::ptrdiff_t>((n + kMcChunk - 1) / kMcChunk);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (std::ptrdiff_t c = 0; c < n_chunks; ++c) {
    Rng rng(splitmix64(seed + static_cast<std::uint64_t>(c) + 1));
    const std::size_t lo = static_cast<std::size_t>(c) * kMcChunk;
    const std::size_t hi = std::min(n, lo + kMcChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const double u = rng.uniform01();
      std::size_t k = 0;
      while (k + 1 < cumulative.size() && u >= cumulative[k]) ++k;
      double z0 = 0.0, z1 = 0.0;
      rng.normal_pair(z0, z1);
      const double s = comps[k].s0 + comps[k].s_sigma * z0;
      const double v = comps[k].v0 + comps[k].v_sigma * z1;
      out[i] = {0.5 * (s + v), 0.5 * (s - v)};
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<double, double>> mc_sample(const BiphotonAmplitude& amp, std::size_t n,
                                                 std::uint64_t seed) {
  if (amp.kind() != AmplitudeKind::two_peak) {
    throw ValidationError("mc_sample: only the two-peak kind is a finite Gaussian mixture");
  }
  const BeamGeometry& geom = amp.geometry();
  if (two_peak_cross_mass(geom) > 1e-10) {
    throw ValidationError("mc_sample: overlapping peaks make the mixture inexact");
  }
  const MergedWidths w = merged_widths(geom, Convention::matched);
  const double t0 = geom.theta_0();
  const double ssig = w.a / std::numbers::sqrt2;
  const double vsig = w.b / std::numbers::sqrt2;
  return sample_mixture({{0.5, 0.0, 2.0 * t0, ssig, vsig}, {0.5, 0.0, -2.0 * t0, ssig, vsig}}, n,
                        seed);
}

std::vector<std::pair<double, double>> mc_sample(const TaggedAmplitude& amp, std::size_t n,
                                                 std::uint64_t seed) {
  const auto& terms = amp.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const double pol = pol_overlap(terms[i].pol1, terms[j].pol1) *
                         pol_overlap(terms[i].pol2, terms[j].pol2);
      if (std::abs(pol * gaussian_overlap(terms[i].gaussian, terms[j].gaussian)) > 1e-10) {
        throw ValidationError("mc_sample: terms are not orthogonal; not an exact mixture");
      }
    }
  }
  std::vector<MixtureComponent> comps;
  comps.reserve(terms.size());
  for (const auto& t : terms) {
    comps.push_back({std::norm(t.coeff), t.gaussian.sum_center, t.gaussian.diff_center,
                     t.gaussian.sum_width / std::numbers::sqrt2,
                     t.gaussian.diff_width / std::numbers::sqrt2});
  }
  return sample_mixture(comps, n, seed);
}

}  // namespace biphoton
