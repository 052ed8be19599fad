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

#include <iosfwd>

#include "biphoton/config.hpp"

namespace biphoton {

/// Experiment runners behind the CLI subcommands. Each emits bit-stable CSV
/// files into cfg.out_dir and a short human-readable summary to `log`.

void run_qutrit(const RunConfig& cfg, std::ostream& log);
void run_spectrum(const RunConfig& cfg, std::ostream& log);
/// Returns 0 when the oracle comparison passes at cfg.tol, 4 otherwise.
int run_svd_check(const RunConfig& cfg, std::ostream& log);
void run_figures(const RunConfig& cfg, std::ostream& log);
void run_pipeline(const RunConfig& cfg, std::ostream& log);

}  // namespace biphoton
