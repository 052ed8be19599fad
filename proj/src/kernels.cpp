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

#include "biphoton/kernels.hpp"

#include <cctype>
#include <cstdlib>
#include <string>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

int resolve_max_threads() {
  const char* env = std::getenv("BIPHOTON_THREADS");
  if (env == nullptr || *env == '\0') {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
  }
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  while (end != nullptr && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == nullptr || *end != '\0' || v < 1 || v > 1024) {
    throw ValidationError("BIPHOTON_THREADS must be an integer in [1, 1024], got '" +
                          std::string(env) + "'");
  }
  return static_cast<int>(v);
}

}  // namespace

int max_threads() {
  static const int cached = resolve_max_threads();
  return cached;
}

namespace kernels {

double chunked_sum(std::span<const double> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
  const std::ptrdiff_t n_chunks = (n + kChunk - 1) / kChunk;
  if (n_chunks <= 1) {
    Neumaier acc;
    for (double v : x) acc.add(v);
    return acc.value();
  }
  std::vector<double> partial(static_cast<std::size_t>(n_chunks));
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (std::ptrdiff_t c = 0; c < n_chunks; ++c) {
    Neumaier acc;
    const std::ptrdiff_t hi = std::min(n, (c + 1) * kChunk);
    for (std::ptrdiff_t i = c * kChunk; i < hi; ++i) {
      acc.add(x[static_cast<std::size_t>(i)]);
    }
    partial[static_cast<std::size_t>(c)] = acc.value();
  }
  Neumaier total;
  for (double v : partial) total.add(v);
  return total.value();
}

double weighted_norm_sq(const Eigen::MatrixXd& values, std::span<const double> w1,
                        std::span<const double> w2) {
  const int n1 = static_cast<int>(values.rows());
  const int n2 = static_cast<int>(values.cols());
  if (static_cast<int>(w1.size()) != n1 || static_cast<int>(w2.size()) != n2) {
    throw ValidationError("weighted_norm_sq: weight lengths do not match matrix");
  }
  std::vector<double> col(static_cast<std::size_t>(n2));
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int j = 0; j < n2; ++j) {
    Neumaier acc;
    for (int i = 0; i < n1; ++i) {
      const double v = values(i, j);
      acc.add(w1[static_cast<std::size_t>(i)] * v * v);
    }
    col[static_cast<std::size_t>(j)] = acc.value();
  }
  Neumaier total;
  for (int j = 0; j < n2; ++j) {
    total.add(w2[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(j)]);
  }
  return total.value();
}

double weighted_quadrant_mass(const Eigen::MatrixXd& values, const Grid1D& g1, const Grid1D& g2,
                              int sign1, int sign2) {
  const int n1 = g1.size();
  const int n2 = g2.size();
  const auto& w1 = g1.weights();
  const auto& w2 = g2.weights();
  std::vector<double> col(static_cast<std::size_t>(n2), 0.0);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int j = 0; j < n2; ++j) {
    if (g2.point(j) * sign2 <= 0.0) continue;
    Neumaier acc;
    for (int i = 0; i < n1; ++i) {
      if (g1.point(i) * sign1 <= 0.0) continue;
      const double v = values(i, j);
      acc.add(w1[static_cast<std::size_t>(i)] * v * v);
    }
    col[static_cast<std::size_t>(j)] = acc.value();
  }
  Neumaier total;
  for (int j = 0; j < n2; ++j) {
    total.add(w2[static_cast<std::size_t>(j)] * col[static_cast<std::size_t>(j)]);
  }
  return total.value();
}

Eigen::MatrixXd scale_by_sqrt_weights(const Eigen::MatrixXd& values, std::span<const double> w1,
                                      std::span<const double> w2) {
  const int n1 = static_cast<int>(values.rows());
  const int n2 = static_cast<int>(values.cols());
  if (static_cast<int>(w1.size()) != n1 || static_cast<int>(w2.size()) != n2) {
    throw ValidationError("scale_by_sqrt_weights: weight lengths do not match matrix");
  }
  std::vector<double> s1(static_cast<std::size_t>(n1)), s2(static_cast<std::size_t>(n2));
  for (int i = 0; i < n1; ++i) s1[static_cast<std::size_t>(i)] = std::sqrt(w1[static_cast<std::size_t>(i)]);
  for (int j = 0; j < n2; ++j) s2[static_cast<std::size_t>(j)] = std::sqrt(w2[static_cast<std::size_t>(j)]);
  Eigen::MatrixXd out(n1, n2);
#pragma omp parallel for schedule(static) num_threads(biphoton::max_threads())
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      out(i, j) = s1[static_cast<std::size_t>(i)] * values(i, j) * s2[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

namespace reference {

double sum(std::span<const double> x) {
  Neumaier acc;
  for (double v : x) acc.add(v);
  return acc.value();
}

double weighted_norm_sq(const Eigen::MatrixXd& values, std::span<const double> w1,
                        std::span<const double> w2) {
  Neumaier total;
  for (int j = 0; j < values.cols(); ++j) {
    for (int i = 0; i < values.rows(); ++i) {
      const double v = values(i, j);
      total.add(w1[static_cast<std::size_t>(i)] * w2[static_cast<std::size_t>(j)] * v * v);
    }
  }
  return total.value();
}

}  // namespace reference

}  // namespace kernels
}  // namespace biphoton
