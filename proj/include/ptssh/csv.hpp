#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ptssh::csv {

/// Shortest decimal representation that round-trips to the same double.
/// Infinities serialize as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

/// Inverse of format_double. Throws std::invalid_argument on garbage.
double parse_double(std::string_view s);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Writes header + rows as comma-separated lines (LF endings, no quoting:
/// values in this project never contain commas).
void write(const std::string& path, const Table& table);

/// Reads a file written by write().
Table read(const std::string& path);

}  // namespace ptssh::csv
