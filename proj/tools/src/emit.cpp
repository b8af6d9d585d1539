#include "coe_cli/emit.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#ifndef COE_GIT_DESCRIBE
#define COE_GIT_DESCRIBE "unknown"
#endif

namespace coe::cli {

namespace {

std::string format_cell(const nlohmann::json& cell) {
  if (cell.is_number_integer() || cell.is_number_unsigned()) return cell.dump();
  if (cell.is_number()) return format_number(cell.get<double>());
  if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
  std::string s = cell.is_string() ? cell.get<std::string>() : cell.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void check_shape(const Table& table) {
  if (table.columns.empty() || table.rows.empty()) {
    throw ValidationError("emit: nothing to write (empty table)");
  }
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ValidationError("emit: row width does not match the header");
    }
  }
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << payload;
  file.flush();
  if (!file) throw IoError("write to " + path + " failed");
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  check_shape(table);
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json provenance() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return {{"git_describe", COE_GIT_DESCRIBE}, {"timestamp", stamp}};
}

nlohmann::json table_to_json(const Table& table, const nlohmann::json& config) {
  check_shape(table);
  nlohmann::json doc;
  doc["config"] = config;
  doc["columns"] = table.columns;
  doc["rows"] = table.rows;
  doc["provenance"] = provenance();
  if (!table.summary.is_null()) doc["summary"] = table.summary;
  return doc;
}

void emit(const Table& table, OutputFormat format, const std::string& path,
          const nlohmann::json& config, std::ostream& out) {
  const bool to_stdout = path.empty() || path == "-";
  if (format == OutputFormat::json) {
    const std::string payload = table_to_json(table, config).dump(2) + "\n";
    if (to_stdout) {
      out << payload;
    } else {
      write_file(path, payload);
    }
    return;
  }
  const std::string payload = to_csv(table);
  if (to_stdout) {
    out << payload;
    return;
  }
  write_file(path, payload);
  nlohmann::json meta{{"config", config}, {"columns", table.columns}, {"provenance", provenance()}};
  if (!table.summary.is_null()) meta["summary"] = table.summary;
  write_file(path + ".meta.json", meta.dump(2) + "\n");
}

}  // namespace coe::cli
