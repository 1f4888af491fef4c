#pragma once

// Tabular output shared by all subcommands: CSV with '#' metadata lines, or JSON.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace multisink::cli {

/// Shortest decimal string that round-trips to the same double.
std::string format_number(double value);

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& out) const;
  nlohmann::ordered_json to_json() const;
};

/// JSON number, or null for NaN and infinities.
nlohmann::ordered_json json_number(double value);

}  // namespace multisink::cli
