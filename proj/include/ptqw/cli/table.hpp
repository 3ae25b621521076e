#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ptqw::cli {

using Cell = std::variant<double, long long, std::string>;

struct Column {
  std::string name;
  /// Fixed decimals for CSV output; negative means 17 significant digits.
  int decimals = -1;
};

struct Table {
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
};

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_double(double value, int decimals = -1);

void write_csv(std::ostream& out, const Table& table);

/// {"run": metadata, "columns": [...], "data": {column: [values]}}.
/// Non-finite doubles become null.
void write_json(std::ostream& out, const Table& table, const nlohmann::json& metadata);

}  // namespace ptqw::cli
