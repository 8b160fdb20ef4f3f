#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace contractlab {

// Numeric cell rendering used everywhere CSV is written: 12 significant
// digits, C locale, no trailing noise ("%.12g").
std::string format_cell(double v);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const CsvTable& t);
void write_csv_file(const std::string& path, const CsvTable& t);
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

}  // namespace contractlab
