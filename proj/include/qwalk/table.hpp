#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qwalk {

/// Empty cells mark missing data points.
using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument if the row width differs from the column count.
  void add_row(std::vector<Cell> row);
  /// Column values as doubles; missing cells become NaN. Throws std::out_of_range
  /// for an unknown column.
  std::vector<double> numeric_column(const std::string& name) const;
};

/// Header line, then one line per row; doubles as %.17g, missing cells empty.
void write_csv(std::ostream& out, const Table& table);

/// {"column": [values...], ...} with null for missing cells.
nlohmann::ordered_json to_json(const Table& table);

}  // namespace qwalk
