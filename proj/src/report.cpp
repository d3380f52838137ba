#include "specband/report.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace specband {

std::string format_real(double value) {
  if (!std::isfinite(value)) throw std::runtime_error("report: non-finite value");
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::invalid_argument("report: row width does not match the header");
  rows_.push_back(std::move(row));
}

namespace {

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return format_real(std::get<double>(c));
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<std::string>(c)) {
    const std::string& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  return "";
}

nlohmann::json cell_json(const Cell& c) {
  if (std::holds_alternative<double>(c)) {
    const double v = std::get<double>(c);
    if (!std::isfinite(v)) throw std::runtime_error("report: non-finite value");
    return v;
  }
  if (std::holds_alternative<long long>(c)) return std::get<long long>(c);
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  return nullptr;
}

}  // namespace

std::string Table::csv() const {
  std::string out;
  for (std::size_t k = 0; k < columns_.size(); ++k) out += (k ? "," : "") + columns_[k];
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += cell_text(row[k]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json Table::json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rows_) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t k = 0; k < row.size(); ++k) obj[columns_[k]] = cell_json(row[k]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_file(const std::string& path, const std::string& contents) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace specband
