#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace specband {

// 17 significant digits with a . decimal point.
std::string format_real(double value);

using Cell = std::variant<std::monostate, double, long long, std::string>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  // Throws std::runtime_error on a non-finite numeric cell.
  std::string csv() const;
  nlohmann::json json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Writes bytes verbatim (LF line endings), creating parent directories.
void write_file(const std::string& path, const std::string& contents);

}  // namespace specband
