#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace softiga::experiments {

/// A header row plus string cells. Numbers are written with 17 significant
/// digits so they re-read bit-exactly.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells);
  void add_numeric_row(const std::vector<double>& values);

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, std::size_t col) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

std::string format_number(double v);
double parse_number(const std::string& cell);

void write_csv(const std::filesystem::path& path, const CsvTable& table);
/// Throws Error when the file cannot be read or a row has the wrong width.
CsvTable read_csv(const std::filesystem::path& path);

} // namespace softiga::experiments
