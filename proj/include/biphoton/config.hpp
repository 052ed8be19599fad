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

#include <array>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "biphoton/geometry.hpp"
#include "biphoton/qutrit.hpp"
#include "biphoton/schmidt.hpp"

namespace biphoton {

/// Validated run configuration. Parsed from a versioned JSON file
/// (schema: 1); unknown keys anywhere are errors, not warnings. All physical
/// quantities are SI (meters, radians), no implicit conversions.
struct RunConfig {
  int schema = 1;

  std::optional<CrystalOpticalParams> crystal;
  std::optional<BeamGeometry> geometry;   ///< direct widths; exclusive with crystal
  std::optional<std::array<double, 2>> widths;  ///< direct (a, b) for collinear checks

  std::string kind = "two-peak";  ///< two-peak | gauss-sinc | exact-sinc | collinear
  int grid = 0;                   ///< 0 = runner-specific default
  int n_max = -1;                 ///< -1 = smallest order with tail mass < 1e-10
  Convention convention = Convention::matched;
  bool both_conventions = false;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  double fig4_ratio = 0.53;
  std::filesystem::path out_dir = ".";

  std::optional<std::array<std::complex<double>, 3>> qutrit_amplitudes;
  std::optional<CountRecord> qutrit_counts;

  /// Geometry resolved from whichever source was given.
  BeamGeometry resolved_geometry() const;
  /// Merged widths from `widths` if given, else from the geometry.
  MergedWidths resolved_widths(Convention conv) const;
};

RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

Convention parse_convention(const std::string& name);

}  // namespace biphoton
