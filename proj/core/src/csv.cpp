#include "sphmax/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "sphmax/util.hpp"

namespace sphmax::report {

CsvWriter::CsvWriter(std::string config_echo) {
  buf_ += "# sphmax ";
  buf_ += kVersion;
  buf_ += "\n# config: ";
  buf_ += config_echo;
  buf_ += "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) buf_ += ",";
    buf_ += names[i];
  }
  buf_ += "\n";
}

std::string CsvWriter::format(double v) {
  char tmp[40];
  std::snprintf(tmp, sizeof(tmp), "%.12g", v);
  return tmp;
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buf_ += ",";
    buf_ += format(values[i]);
  }
  buf_ += "\n";
}

void CsvWriter::raw_row(const std::string& line) {
  buf_ += line;
  buf_ += "\n";
}

void CsvWriter::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << buf_;
}

}  // namespace sphmax::report
