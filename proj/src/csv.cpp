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

#include "biphoton/csv.hpp"

#include <cstdio>

#include "biphoton/errors.hpp"

namespace biphoton {

std::string format_sci17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::span<const std::string> columns)
    : out_(path, std::ios::binary), n_columns_(columns.size()) {
  if (!out_) {
    throw ValidationError("cannot open output file " + path.string());
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << columns[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
  if (values.size() != n_columns_) {
    throw ValidationError("CSV row width does not match header");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out_ << ',';
    out_ << format_sci17(values[i]);
  }
  out_ << '\n';
}

void CsvWriter::row(const std::string& label, std::span<const double> values) {
  if (values.size() + 1 != n_columns_) {
    throw ValidationError("CSV row width does not match header");
  }
  out_ << label;
  for (double v : values) {
    out_ << ',' << format_sci17(v);
  }
  out_ << '\n';
}

CsvWriter::~CsvWriter() { out_.flush(); }

}  // namespace biphoton
