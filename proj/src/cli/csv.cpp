#include "superosc/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace superosc::cli {

const std::vector<double>& CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw std::out_of_range("no CSV column named '" + name + "'");
}

void CsvTable::add(std::string name, std::vector<double> values) {
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (table.header.size() != table.columns.size()) throw std::invalid_argument("CSV header/column count mismatch");
  for (const auto& col : table.columns) {
    if (col.size() != table.rows()) throw std::invalid_argument("CSV columns differ in length");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  for (std::size_t j = 0; j < table.header.size(); ++j) out << (j ? "," : "") << table.header[j];
  out << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) out << (j ? "," : "") << format_number(table.columns[j][i]);
    out << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' has no header row");
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) table.add(cell, {});
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream rs(line);
    std::size_t j = 0;
    for (std::string cell; std::getline(rs, cell, ','); ++j) {
      if (j >= table.columns.size()) throw std::runtime_error("ragged row in '" + path.string() + "'");
      table.columns[j].push_back(std::stod(cell));
    }
    if (j != table.columns.size()) throw std::runtime_error("ragged row in '" + path.string() + "'");
  }
  return table;
}

}  // namespace superosc::cli
