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

#include <stdexcept>
#include <string>

namespace biphoton {

/// Bad user input: malformed config, non-normalizable state, invalid counts.
/// The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physically inadmissible geometry (imaginary emission angle, non-positive
/// widths, unseparated peaks where separation is a precondition). Exit code 3.
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Internal numerical failure (non-convergent quadrature, singular input to
/// the SVD, non-finite intermediate). Exit code 5.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace biphoton
