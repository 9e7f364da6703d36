#include "pseudosym/bench/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pseudosym::bench {

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("table " + name + ": row has " + std::to_string(row.size()) +
                           " cells, expected " + std::to_string(columns.size()));
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

namespace {

std::string format_cell(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
  return std::get<std::string>(cell);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

void write_csv(std::ostream& out, const ResultTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_cell(row[i]);
    out << '\n';
  }
}

void emit(const PresetResult& result, const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  nlohmann::json sidecar = result.metadata;
  sidecar["preset"] = result.preset;
  sidecar["version"] = kVersion;
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : result.failures)
    failures.push_back({{"method", f.method}, {"tau", f.tau}, {"message", f.message}});
  sidecar["failures"] = failures;
  nlohmann::json files = nlohmann::json::array();

  for (const auto& table : result.tables) {
    std::ostringstream csv;
    write_csv(csv, table);
    write_file(dir / (table.name + ".csv"), csv.str());
    files.push_back(table.name + ".csv");
  }
  for (const auto& snap : result.snapshots) {
    write_file(dir / (snap.name + ".txt"), snap.text);
    files.push_back(snap.name + ".txt");
  }
  sidecar["files"] = files;
  write_file(dir / (result.preset + ".json"), sidecar.dump(2) + "\n");
}

}  // namespace pseudosym::bench
