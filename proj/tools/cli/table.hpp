#ifndef DNML_CLI_TABLE_HPP
#define DNML_CLI_TABLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace dnml::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

// Shortest decimal that round-trips.
std::string format_double(double x);
std::string to_string(const Cell& cell);

// A named table plus key=value metadata. CSV and JSON renderings carry the
// same fields: metadata becomes a leading comment line in CSV and top-level
// keys in JSON; rows become CSV lines and an array of objects.
struct Table {
  std::string schema;
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& out) const;
  nlohmann::ordered_json to_json() const;
};

}  // namespace dnml::cli

#endif  // DNML_CLI_TABLE_HPP
