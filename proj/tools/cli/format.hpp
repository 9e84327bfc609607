#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace wfdrift::cli {

/// Shortest-round-trip is not enough for the file contract: every number is
/// written with 17 significant digits.
std::string format_double(double v);

/// Writes a CSV with one header row. Throws std::runtime_error on I/O failure.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Parses a CSV written by write_csv back into its header and numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace wfdrift::cli
