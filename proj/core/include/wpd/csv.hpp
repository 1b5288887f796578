#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace wpd {

/// A CSV cell. Numbers are formatted once, with a fixed format, so equal
/// values always produce equal bytes.
class CsvCell {
 public:
  CsvCell(double v);
  CsvCell(int v);
  CsvCell(std::size_t v);
  CsvCell(std::string_view v);
  CsvCell(const char* v) : CsvCell(std::string_view(v)) {}
  CsvCell(const std::string& v) : CsvCell(std::string_view(v)) {}
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

/// In-memory CSV table, written out in one piece.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add_row(std::initializer_list<CsvCell> cells);
  void add_row(const std::vector<CsvCell>& cells);
  std::size_t rows() const noexcept { return rows_; }
  std::size_t columns() const noexcept { return header_.size(); }
  const std::string& str() const noexcept { return body_; }

 private:
  std::vector<std::string> header_;
  std::string body_;
  std::size_t rows_ = 0;
};

/// Shortest round-trip-safe rendering used by CsvCell ("%.17g" trimmed).
std::string format_number(double v);

}  // namespace wpd
