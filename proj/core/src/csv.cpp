#include "wpd/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace wpd {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

CsvCell::CsvCell(double v) : text_(format_number(v)) {}
CsvCell::CsvCell(int v) : text_(std::to_string(v)) {}
CsvCell::CsvCell(std::size_t v) : text_(std::to_string(v)) {}
CsvCell::CsvCell(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) {
    text_ = v;
    return;
  }
  text_ = "\"";
  for (char c : v) {
    if (c == '"') text_ += '"';
    text_ += c;
  }
  text_ += '"';
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) body_ += ',';
    body_ += header_[i];
  }
  body_ += '\n';
}

void CsvTable::add_row(std::initializer_list<CsvCell> cells) { add_row(std::vector<CsvCell>(cells)); }

void CsvTable::add_row(const std::vector<CsvCell>& cells) {
  if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) body_ += ',';
    body_ += cells[i].text();
  }
  body_ += '\n';
  ++rows_;
}

}  // namespace wpd
