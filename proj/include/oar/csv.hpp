#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "oar/linalg.hpp"

namespace oar::csv {

/// Comma-separated table with a mandatory header row. No quoting support.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based line number in the source file for each entry of `rows`.
  std::vector<std::size_t> line_numbers;

  /// Index of a header column, or throws DataError naming the column.
  std::size_t column(std::string_view name) const;
};

Table read(const std::filesystem::path& path);

/// Parses a finite double. `where` is used in the error message.
double parse_double(std::string_view text, const std::string& where);

/// Shortest-round-trip-safe decimal text: 17 significant digits.
std::string format_double(double value);

/// Writes `values` under `header` (one column name per matrix column).
void write_matrix(const std::filesystem::path& path,
                  const std::vector<std::string>& header, const Matrix& values);

/// Default column names x0..x{n-1}.
std::vector<std::string> default_header(std::size_t n, std::string_view prefix = "x");

}  // namespace oar::csv
