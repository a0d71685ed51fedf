#include "qwalk/table.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qwalk/state.hpp"

namespace qwalk {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("row width does not match the table columns");
  rows.push_back(std::move(row));
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  std::size_t index = columns.size();
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) index = i;
  if (index == columns.size()) throw std::out_of_range("no column named " + name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    const Cell& c = row[index];
    if (const auto* d = std::get_if<double>(&c)) {
      out.push_back(*d);
    } else if (const auto* i = std::get_if<long long>(&c)) {
      out.push_back(static_cast<double>(*i));
    } else {
      out.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

namespace {

struct CsvCell {
  std::ostream& out;
  void operator()(std::monostate) const {}
  void operator()(long long v) const { out << v; }
  void operator()(double v) const { out << format_double(v); }
  void operator()(const std::string& v) const { out << v; }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return nullptr;
    return v;
  }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
};

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(CsvCell{out}, row[i]);
    }
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    auto column = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) column.push_back(std::visit(JsonCell{}, row[c]));
    j[table.columns[c]] = std::move(column);
  }
  return j;
}

}  // namespace qwalk
