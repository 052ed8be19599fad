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

#include <cstdint>
#include <random>

namespace biphoton {

/// SplitMix64 finalizer; used to derive independent per-chunk seeds.
std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible random source. The generator is pinned by construction:
/// std::mt19937_64 (bit-exact per the C++ standard), uniform doubles via the
/// top 53 bits, normals via the explicit Box-Muller transform. No
/// implementation-defined std::*_distribution is used, so streams only depend
/// on the seed and the libm in the build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal pair (Box-Muller); consumes exactly two uniforms.
  void normal_pair(double& z0, double& z1);

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace biphoton
