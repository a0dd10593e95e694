// Copyright 2026 The levarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Minimal CSV output (and input, for round-trip checks).
#pragma once

#include <cstdio>
#include <string>
#include <variant>
#include <vector>

namespace levarray::runner {

using Cell = std::variant<double, long long, std::string>;

/// Formats a number with 12 significant digits.
std::string format_number(double value);

class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> header);
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;
  ~CsvWriter();

  void row(const std::vector<Cell>& cells);
  /// Flushes and closes; throws Failure(LEVARRAY_E_IO) on any write error.
  void close();

  std::size_t columns() const { return header_.size(); }

 private:
  void write_line(const std::string& line);

  std::string path_;
  std::vector<std::string> header_;
  std::FILE* file_ = nullptr;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace levarray::runner
