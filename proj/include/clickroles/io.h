// Copyright 2026 The clickroles Authors.
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

#ifndef CLICKROLES_IO_H_
#define CLICKROLES_IO_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clickroles {

// Reads lines from a plain or gzip-compressed file. Trailing '\n' and
// '\r' are stripped. Missing files raise DataError naming the path.
class LineReader {
 public:
  explicit LineReader(const std::string& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Returns false at end of input.
  bool Next(std::string* line);
  uint64_t line_number() const { return line_number_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  void* handle_ = nullptr;  // gzFile
  std::vector<char> buffer_;
  uint64_t line_number_ = 0;
};

std::vector<std::string_view> SplitTabs(std::string_view line);

// Strict decimal parse of the whole field; no sign, no whitespace.
std::optional<uint64_t> ParseUnsigned(std::string_view field);
std::optional<int64_t> ParseSigned(std::string_view field);
std::optional<double> ParseDouble(std::string_view field);

// Shortest round-trip representation of a double.
std::string FormatDouble(double v);

// A tab-separated table whose first line names its columns.
struct HeaderTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Index of a column, or DataError naming the file and column.
  size_t Column(std::string_view name, const std::string& source) const;
  bool HasColumn(std::string_view name) const;
};

HeaderTable ReadHeaderTable(const std::string& path);

// Writes `contents` to `path`, creating parent directories.
void WriteFile(const std::string& path, std::string_view contents);

std::string ReadFile(const std::string& path);

// Lowercase hex SHA-256 of a file's bytes.
std::string Sha256File(const std::string& path);
std::string Sha256Hex(std::string_view bytes);

}  // namespace clickroles

#endif  // CLICKROLES_IO_H_
