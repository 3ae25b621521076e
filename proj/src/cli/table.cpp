#include "ptqw/cli/table.hpp"

#include <cmath>
#include <cstdio>

namespace ptqw::cli {

std::string format_double(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // -0 prints as 0
  char buffer[64];
  if (decimals >= 0) {
    std::snprintf(buffer, sizeof buffer, "%.*f", decimals, value);
    std::string text = buffer;
    // A value that rounds to zero prints without a sign.
    if (text.find_first_not_of("-0.") == std::string::npos && text.front() == '-') text.erase(0, 1);
    return text;
  }
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i].name;
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out << format_double(v, table.columns[i].decimals);
            } else {
              out << v;
            }
          },
          row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const nlohmann::json& metadata) {
  nlohmann::json document;
  document["run"] = metadata;
  nlohmann::json names = nlohmann::json::array();
  nlohmann::json data = nlohmann::json::object();
  for (const Column& column : table.columns) {
    names.push_back(column.name);
    data[column.name] = nlohmann::json::array();
  }
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      auto& target = data[table.columns[i].name];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              if (std::isfinite(v)) {
                target.push_back(v);
              } else {
                target.push_back(nullptr);
              }
            } else {
              target.push_back(v);
            }
          },
          row[i]);
    }
  }
  document["columns"] = names;
  document["data"] = data;
  out << document.dump(2) << '\n';
}

}  // namespace ptqw::cli
