#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace coe::cli {

enum class OutputFormat { csv, json };

/// Thrown for bad user input; maps to exit status 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an artifact cannot be written; maps to exit status 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows of numbers or strings under a fixed header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::json>> rows;
  nlohmann::json summary;  // optional extra results; null when absent
};

/// Number formatted with 12 significant digits.
std::string format_number(double v);

/// Header line plus one line per row, '\n' terminated.
std::string to_csv(const Table& table);

/// {config, columns, rows, provenance[, summary]}.
nlohmann::json table_to_json(const Table& table, const nlohmann::json& config);

nlohmann::json provenance();

/// Writes the table to `path`, or to `out` when path is empty or "-".
/// CSV files get a sidecar `<path>.meta.json` with the config and provenance.
/// Throws ValidationError for an empty or ragged table, IoError on write failure.
void emit(const Table& table, OutputFormat format, const std::string& path,
          const nlohmann::json& config, std::ostream& out);

}  // namespace coe::cli
