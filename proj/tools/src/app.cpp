#include <CLI11.hpp>

#include <map>
#include <ostream>
#include <sstream>

#include "coe_cli/app.hpp"

namespace coe::cli {

namespace {

struct CommandInfo {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandInfo kCommands[] = {
    {Command::page_curve, "page-curve", "Normalized finite-V average capacity for V_A = 1..V-1"},
    {Command::coefficient, "coefficient", "Volume-law coefficients (capacity, EE, RE2) on an f grid"},
    {Command::variance, "variance", "Mean and standard deviation of the capacity over V-list at f"},
    {Command::convergence, "convergence", "Partial sums and tail bounds of the coefficient series"},
    {Command::syk2_mc, "syk2-mc", "Monte Carlo average over random quadratic Hamiltonians"},
    {Command::deficit, "deficit", "Monte Carlo deficits over V-list and the a0/V^2 + a1 fit"},
    {Command::kdf_eval, "kdf-eval", "Evaluate the double hypergeometric series of the closed form"},
    {Command::crosscheck, "crosscheck", "Route-agreement checks with a pass/fail table"},
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Capacity of entanglement for fermionic Gaussian states and the quadratic SYK model",
               "coe"};
  app.set_config("--config", "", "Flat key=value file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}};
  app.add_option("--V", config.total, "Total number of modes");
  app.add_option("--VA", config.subsystem, "Subsystem size (overrides --f for syk2-mc)");
  app.add_option("--V-list", config.totals, "Comma-separated system sizes")->delimiter(',');
  app.add_option("--f", config.f_values, "Subsystem fraction; repeat or comma-separate for a grid")
      ->delimiter(',');
  app.add_option("--f-min", config.f_min, "Grid start");
  app.add_option("--f-max", config.f_max, "Grid end");
  app.add_option("--f-steps", config.f_steps, "Number of grid points");
  app.add_option("--x", config.x, "kdf-eval first argument (default 4f(1-f))");
  app.add_option("--y", config.y, "kdf-eval second argument (default 4f(1-f))");
  app.add_option("--tol", config.tol, "Absolute tolerance for series")->capture_default_str();
  app.add_option("--max-terms", config.max_terms, "Series term budget (convergence: terms listed)");
  app.add_option("--seed", config.seed, "Master random seed")->capture_default_str();
  app.add_option("--realizations", config.realizations, "Hamiltonian realizations")
      ->capture_default_str();
  app.add_option("--states", config.states,
                 "Eigenstates per realization (crosscheck: Haar draws)")
      ->capture_default_str();
  app.add_flag("--half-filled,!--no-half-filled", config.half_filled,
               "Sample only half-filled eigenstates")
      ->capture_default_str();
  app.add_option("--threads", config.threads, "Worker threads for Monte Carlo")
      ->capture_default_str();
  app.add_option("--out", config.output_path, "Output file (default stdout)");
  app.add_option("--format", config.format, "csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->capture_default_str();

  for (const auto& info : kCommands) {
    app.add_subcommand(info.name, info.help)->callback([&config, c = info.command] {
      config.command = c;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream msg;
    app.exit(e, msg, err);
    out << msg.str();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", {{"kind", "validation"}, {"message", e.what()}}},
                          {"exit_code", kExitValidation}}
               .dump()
        << '\n';
    return kExitValidation;
  }
  return dispatch(config, out, err);
}

}  // namespace coe::cli
