#include "softiga/experiments/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "softiga/error.hpp"

namespace softiga::experiments {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ','))
    cells.push_back(cell);
  if (!line.empty() && line.back() == ',')
    cells.emplace_back();
  return cells;
}

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].find_first_of(",\n\r") != std::string::npos)
      throw InvalidArgument("csv cell contains a separator: " + cells[i]);
    out << (i ? "," : "") << cells[i];
  }
  out << '\n';
}

} // namespace

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& cell) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || end != cell.c_str() + cell.size())
    throw Error("csv: not a number: '" + cell + "'");
  return v;
}

void CsvTable::add_row(std::vector<std::string> cells) {
  if (cells.size() != header.size())
    throw InvalidArgument("csv row width does not match the header");
  rows.push_back(std::move(cells));
}

void CsvTable::add_numeric_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values)
    cells.push_back(format_number(v));
  add_row(std::move(cells));
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name)
      return i;
  throw InvalidArgument("csv has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  return parse_number(rows.at(row).at(col));
}

std::vector<double> CsvTable::numeric_column(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    out.push_back(number(r, c));
  return out;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out)
    throw Error("cannot write " + path.string());
  write_line(out, table.header);
  for (const auto& row : table.rows)
    write_line(out, row);
  if (!out)
    throw Error("error writing " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read " + path.string());
  CsvTable t;
  std::string line;
  if (!std::getline(in, line))
    throw Error(path.string() + ": empty csv");
  t.header = split(line);
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw Error(path.string() + ": row width does not match the header");
    t.rows.push_back(std::move(cells));
  }
  return t;
}

} // namespace softiga::experiments
