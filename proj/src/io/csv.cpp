#include "ptlgi/io/csv.hpp"

#include <cstdio>

namespace ptlgi {
namespace io {

std::string format_number(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out_ << ',';
    }
    out_ << cells[i];
  }
  out_ << "\n";
}

void CsvWriter::numeric_row(const std::vector<double>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) {
      out_ << ',';
    }
    out_ << format_number(cells[i]);
  }
  out_ << "\n";
}

}  // namespace io
}  // namespace ptlgi
