#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace mttdl {

/// Empty cell, text, integer or real.
using Cell = std::variant<std::monostate, std::string, std::int64_t, double>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// Real numbers as shortest-round-trip-safe text with 17 significant digits.
std::string format_real(double x);

/// Quotes a field when it holds a comma, quote, CR or LF; quotes are doubled.
std::string csv_escape(const std::string& field);

/// Header line then one line per row, LF terminated.
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);

}  // namespace mttdl
