#pragma once

// Result tables and their CSV / JSON emission.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace pseudosym::bench {

inline constexpr const char* kVersion = "1.0.0";

using Cell = std::variant<double, std::int64_t, std::string>;

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

struct Failure {
  std::string method;
  double tau = 0;
  std::string message;
};

struct Snapshot {
  std::string name;
  std::string text;  // "x value_re value_im" rows
};

struct PresetResult {
  std::string preset;
  std::vector<ResultTable> tables;
  std::vector<Snapshot> snapshots;
  std::vector<Failure> failures;
  nlohmann::json metadata;  // config echo, version, precision, notes
  std::size_t cells = 0;    // (method, tau) cells attempted

  bool all_failed() const { return cells > 0 && failures.size() == cells; }
};

/// "%.16e", or "nan" / "inf" / "-inf".
std::string format_double(double value);

void write_csv(std::ostream& out, const ResultTable& table);

/// Writes <dir>/<table>.csv for each table, <dir>/<snapshot>.txt for each
/// snapshot and <dir>/<preset>.json. Throws std::runtime_error on I/O failure.
void emit(const PresetResult& result, const std::string& directory);

}  // namespace pseudosym::bench
