#pragma once

#include <string>
#include <vector>

namespace sphmax::report {

// CSV with '#'-prefixed header lines carrying the tool version and a config
// echo; numeric formatting is fixed so identical runs are byte-identical.
class CsvWriter {
 public:
  explicit CsvWriter(std::string config_echo);

  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

  const std::string& str() const { return buf_; }
  void write_file(const std::string& path) const;

  static std::string format(double v);

 private:
  std::string buf_;
};

}  // namespace sphmax::report
