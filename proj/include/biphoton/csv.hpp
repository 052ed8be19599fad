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

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

namespace biphoton {

/// 17-significant-digit scientific notation ("%.16e"): the fixed numeric
/// format of every emitted CSV, chosen so files are byte-identical across
/// runs and thread counts.
std::string format_sci17(double x);

/// CSV emitter: header row, LF line endings, binary stream.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::span<const std::string> columns);

  void row(std::span<const double> values);
  /// Mixed row: a leading label cell followed by numeric cells.
  void row(const std::string& label, std::span<const double> values);

  ~CsvWriter();

 private:
  std::ofstream out_;
  std::size_t n_columns_;
};

}  // namespace biphoton
