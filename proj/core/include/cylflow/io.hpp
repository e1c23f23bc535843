// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cylflow::io {

/// Writes `data` to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view data);

/// Reads a whole file; throws std::runtime_error on failure.
std::string read_file(const std::filesystem::path& path);

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

/// Minimal CSV table (no quoting; fields must not contain commas).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void add_numeric_row(const std::vector<double>& row);
  std::string str() const;
  /// Column index by name; throws if absent.
  std::size_t column(std::string_view name) const;
  std::vector<double> numeric_column(std::string_view name) const;

  static CsvTable parse(std::string_view text);
};

}  // namespace cylflow::io
