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


#include "csv.hpp"

#include <fstream>
#include <stdexcept>

#include "api.hpp"

namespace levarray::runner {

std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header)
    : path_(std::move(path)), header_(std::move(header)) {
  file_ = std::fopen(path_.c_str(), "wb");
  if (file_ == nullptr) throw Failure(LEVARRAY_E_IO, "cannot open '" + path_ + "' for writing");
  std::string line;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i > 0) line += ',';
    line += header_[i];
  }
  write_line(line);
}

CsvWriter::~CsvWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size()) {
    throw Failure(LEVARRAY_E_INTERNAL, "row width " + std::to_string(cells.size()) + " does not match header of '" +
                                           path_ + "'");
  }
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) line += ',';
    const Cell& c = cells[i];
    if (const auto* d = std::get_if<double>(&c)) {
      line += format_number(*d);
    } else if (const auto* n = std::get_if<long long>(&c)) {
      line += std::to_string(*n);
    } else {
      line += std::get<std::string>(c);
    }
  }
  write_line(line);
}

void CsvWriter::write_line(const std::string& line) {
  if (std::fputs(line.c_str(), file_) < 0 || std::fputc('\n', file_) == EOF) {
    throw Failure(LEVARRAY_E_IO, "write to '" + path_ + "' failed");
  }
}

void CsvWriter::close() {
  if (file_ == nullptr) return;
  const bool ok = std::fflush(file_) == 0 && !std::ferror(file_);
  const bool closed = std::fclose(file_) == 0;
  file_ = nullptr;
  if (!ok || !closed) throw Failure(LEVARRAY_E_IO, "write to '" + path_ + "' failed");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw std::out_of_range("no column '" + name + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(LEVARRAY_E_IO, "cannot read '" + path + "'");
  CsvTable table;
  std::string line;
  if (std::getline(in, line)) table.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.rows.push_back(split(line));
  }
  return table;
}

}  // namespace levarray::runner
