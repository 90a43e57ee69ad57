#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace srdsm::csv {

/// Shortest "%.17g" rendering; parses back to the identical double.
std::string format(double value);

std::vector<std::string> split(std::string_view line);

/// Parses one cell; throws parse_error carrying the row/column location.
double parse_cell(std::string_view cell, std::size_t row, std::string_view column);

std::string join(const std::vector<std::string>& cells);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table read(const std::filesystem::path& path);
void write(const std::filesystem::path& path, const Table& table);

}  // namespace srdsm::csv
