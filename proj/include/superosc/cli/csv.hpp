#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace superosc::cli {

/// Column-major numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  [[nodiscard]] std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  /// Throws std::out_of_range for unknown names.
  [[nodiscard]] const std::vector<double>& column(const std::string& name) const;
  void add(std::string name, std::vector<double> values);
};

/// 17 significant digits, scientific notation.
std::string format_number(double x);

/// Throws std::runtime_error when the file cannot be written, std::invalid_argument on ragged columns.
void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace superosc::cli
