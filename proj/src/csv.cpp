#include "contractlab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "contractlab/errors.hpp"

namespace contractlab {

std::string format_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const CsvTable& t) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_csv(os, t);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (std::getline(is, line)) t.columns = split_line(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    t.rows.push_back(split_line(line));
  }
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path);
  return read_csv(is);
}

}  // namespace contractlab
