#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "coe_cli/emit.hpp"

namespace coe::cli {

enum class Command {
  page_curve,
  coefficient,
  variance,
  convergence,
  syk2_mc,
  deficit,
  kdf_eval,
  crosscheck,
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
  Command command = Command::coefficient;
  int total = 0;      // --V; 0 when unset
  int subsystem = 0;  // --VA; 0 when unset
  std::vector<int> totals;  // --V-list
  std::vector<double> f_values;  // --f, possibly repeated
  double f_min = 0.0;
  double f_max = 0.0;
  int f_steps = 0;
  double x = 0.0;  // kdf-eval arguments
  double y = 0.0;
  double tol = 1e-12;
  std::size_t max_terms = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::size_t realizations = 100;
  std::size_t states = 1000;
  bool half_filled = true;
  unsigned threads = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
};

std::string command_name(Command c);

/// The config as embedded in every artifact.
nlohmann::json config_to_json(const RunConfig& config);

/// Throws ValidationError when a field is outside the command's domain.
void validate(const RunConfig& config);

/// Runs the command and writes its artifact. Returns an exit status; on
/// failure a one-line JSON error record goes to `err`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coe::cli
