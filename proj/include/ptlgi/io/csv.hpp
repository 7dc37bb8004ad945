#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ptlgi {
namespace io {

// 9 significant digits, the precision contract of every CSV number
std::string format_number(double x);

// comma separated output with '#'-prefixed metadata comments and '\n' line
// endings; no quoting (no emitted field ever contains a comma)
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void numeric_row(const std::vector<double>& cells);

 private:
  std::ostream& out_;
};

}  // namespace io
}  // namespace ptlgi
