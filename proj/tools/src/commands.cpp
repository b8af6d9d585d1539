#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "coe/errors.hpp"
#include "coe/gaussian.hpp"
#include "coe/specfun.hpp"
#include "coe/syk2_analytic.hpp"
#include "coe/syk2_numeric.hpp"
#include "coe_cli/app.hpp"

namespace coe::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kDefaultSeriesTerms = 100'000;
constexpr std::size_t kDefaultTraceTerms = 1000;

int total_or(const RunConfig& c, int fallback) { return c.total > 0 ? c.total : fallback; }

double single_f(const RunConfig& c, double fallback) {
  return c.f_values.empty() ? fallback : c.f_values.front();
}

std::vector<double> f_grid(const RunConfig& c) {
  if (!c.f_values.empty()) return c.f_values;
  std::vector<double> grid;
  if (c.f_steps > 0) {
    for (int i = 0; i < c.f_steps; ++i) {
      const double t = c.f_steps == 1 ? 0.0 : static_cast<double>(i) / (c.f_steps - 1);
      grid.push_back(c.f_min + t * (c.f_max - c.f_min));
    }
    return grid;
  }
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  return grid;
}

std::vector<int> totals_or(const RunConfig& c, std::vector<int> fallback) {
  return c.totals.empty() ? fallback : c.totals;
}

int subsystem_for(int total, double f) {
  const int va = static_cast<int>(std::lround(f * total));
  if (va < 1 || va > total) {
    throw ValidationError("f = " + std::to_string(f) + " gives no valid subsystem at V = " +
                          std::to_string(total));
  }
  return va;
}

json stats_json(const syk2::EnsembleStats& s) {
  return {{"mean", s.mean},
          {"variance", s.variance},
          {"std_error", s.std_error},
          {"n_realizations", s.n_realizations},
          {"n_states", s.n_states},
          {"seed", s.seed}};
}

Table page_curve_table(const RunConfig& c) {
  const auto curve = gaussian::page_curve(total_or(c, 30));
  Table t{{"V_A", "f", "coe_density"}, {}, {}};
  for (std::size_t i = 0; i < curve.f_grid.size(); ++i) {
    t.rows.push_back({static_cast<int>(i + 1), curve.f_grid[i], curve.coe[i]});
  }
  return t;
}

Table coefficient_table(const RunConfig& c) {
  const std::size_t terms = c.max_terms > 0 ? c.max_terms : kDefaultSeriesTerms;
  Table t{{"f", "coe", "ee", "renyi2"}, {}, {}};
  for (double f : f_grid(c)) {
    const double coe =
        f == 0.5 ? syk2::half_filling_coefficient() : syk2::coefficient_series(f, c.tol, terms).value;
    const auto e = syk2::entropy_coefficients(f);
    t.rows.push_back({f, coe, e.ee, e.renyi2});
  }
  return t;
}

Table variance_table(const RunConfig& c) {
  const double f = single_f(c, 0.5);
  Table t{{"V", "f", "mean", "std"}, {}, {}};
  for (int total : totals_or(c, {16, 20, 24, 28, 32})) {
    const gaussian::Bipartition bp(total, subsystem_for(total, f));
    const double var = gaussian::variance_coe(bp);
    t.rows.push_back({total, bp.fraction(), gaussian::avg_coe_exact(bp), std::sqrt(std::max(var, 0.0))});
  }
  return t;
}

Table convergence_table(const RunConfig& c) {
  const double f = single_f(c, 0.5);
  const std::size_t n = c.max_terms > 0 ? c.max_terms : kDefaultTraceTerms;
  Table t{{"k", "term", "partial_sum", "tail_bound"}, {}, {}};
  for (const auto& p : syk2::coefficient_trace(f, n)) {
    t.rows.push_back({p.k, p.term, p.partial_sum, p.tail_bound});
  }
  const auto report = syk2::convergence_report(f, n);
  t.summary = {{"f", f},
               {"n", n},
               {"ratio_limit", report.ratio_limit},
               {"raabe_statistic", report.raabe_statistic},
               {"suppression_ratio", report.suppression_ratio},
               {"expected_ratio_limit", 4.0 * f * (1.0 - f)}};
  return t;
}

Table syk2_mc_table(const RunConfig& c) {
  const int total = total_or(c, 100);
  const double f_in = single_f(c, 0.5);
  const int va = c.subsystem > 0 ? c.subsystem : subsystem_for(total, f_in);
  const double f = static_cast<double>(va) / total;
  const auto res = syk2::ensemble_average(total, va, c.realizations, c.states, c.half_filled,
                                          c.seed, c.threads);
  const double reference = syk2::coefficient(f);
  const double deficit = std::abs(reference - res.coe.mean / va);
  Table t{{"V", "f", "coe_mean", "coe_stderr", "ee_mean", "renyi2_mean", "deficit"}, {}, {}};
  t.rows.push_back({total, f, res.coe.mean / va, res.coe.std_error / va, res.ee.mean / va,
                    res.renyi2.mean / va, deficit});
  t.summary = {{"V", total},
               {"VA", va},
               {"coe", stats_json(res.coe)},
               {"ee", stats_json(res.ee)},
               {"renyi2", stats_json(res.renyi2)},
               {"analytic_coefficient", reference},
               {"deficit", deficit}};
  return t;
}

Table deficit_table(const RunConfig& c) {
  const double f = single_f(c, 0.5);
  std::vector<std::pair<int, syk2::EnsembleStats>> points;
  for (int total : totals_or(c, {50, 60, 70, 80, 90, 100})) {
    const int va = subsystem_for(total, f);
    const auto res =
        syk2::ensemble_average(total, va, c.realizations, c.states, c.half_filled, c.seed, c.threads);
    points.emplace_back(total, res.coe);
  }
  const auto fit = syk2::deficit_and_fit(points, f);
  Table t{{"V", "inv_V2", "deficit"}, {}, {}};
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = points[i].first;
    t.rows.push_back({points[i].first, 1.0 / (v * v), fit.deficits[i]});
  }
  t.summary = {{"f", f}, {"a0", fit.a0}, {"a1", fit.a1}};
  return t;
}

Table kdf_table(const RunConfig& c) {
  const double f = single_f(c, 0.25);
  const double arg = 4.0 * f * (1.0 - f);
  const double x = c.x != 0.0 ? c.x : arg;
  const double y = c.y != 0.0 ? c.y : arg;
  specfun::KdfParams params;
  params.a_top = {2.0, 2.5};
  params.b_row = {1.0, 0.5};
  params.c_row = {1.0};
  params.alpha_bot = {3.0, 4.0};
  params.beta_bot = {1.5};
  const auto r = specfun::kdf(params, x, y, c.tol, c.max_terms > 0 ? c.max_terms : kDefaultSeriesTerms);
  Table t{{"x", "y", "value", "shells", "tail_bound", "converged"}, {}, {}};
  t.rows.push_back({x, y, r.value, r.terms_used, r.tail_bound, r.converged});
  return t;
}

struct Check {
  std::string name;
  double value;
  double reference;
  double tolerance;
};

Table crosscheck_table(const RunConfig& c, bool& all_passed) {
  std::vector<Check> checks;
  double series_gap = 0.0;
  double closed_gap = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double f = 0.05 * i;
    const double q = syk2::coefficient_quadrature(f);
    series_gap = std::max(series_gap, std::abs(syk2::coefficient_series(f).value - q));
    closed_gap = std::max(closed_gap, std::abs(syk2::coefficient_closed_form(f) - q));
  }
  checks.push_back({"series_vs_quadrature_max_gap", series_gap, 0.0, 1e-8});
  checks.push_back({"closed_form_vs_quadrature_max_gap", closed_gap, 0.0, 1e-8});
  checks.push_back({"quadrature_at_half", syk2::coefficient_quadrature(0.5),
                    syk2::half_filling_coefficient(), 1e-8});
  checks.push_back({"replica_at_half", syk2::replica_coefficient_half(),
                    syk2::half_filling_coefficient(), 1e-8});

  const int v_max = total_or(c, 12);
  double finite_gap = 0.0;
  for (int total = 2; total <= v_max; ++total) {
    for (int va = 1; 2 * va <= total; ++va) {
      const gaussian::Bipartition bp(total, va);
      finite_gap = std::max(finite_gap,
                            std::abs(gaussian::avg_coe_exact(bp) - gaussian::avg_coe_oracle(bp)));
    }
  }
  checks.push_back({"finite_sum_vs_quadrature_max_gap", finite_gap, 0.0, 1e-8});

  // Haar draws against the finite sum; tolerance is three standard errors.
  const gaussian::Bipartition bp(10, 5);
  const std::size_t draws = c.states;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < draws; ++i) {
    const double x = gaussian::spectrum_capacity(gaussian::haar_sample_spectrum(bp, c.seed + i));
    const double d = x - mean;
    mean += d / (i + 1.0);
    m2 += d * (x - mean);
  }
  const double haar_se = std::sqrt(m2 / (draws - 1.0) / draws);
  checks.push_back({"haar_mean_V10_VA5", mean, gaussian::avg_coe_exact(bp), 3.0 * haar_se});

  Table t{{"check", "value", "reference", "difference", "tolerance", "status"}, {}, {}};
  all_passed = true;
  for (const auto& ck : checks) {
    const double diff = std::abs(ck.value - ck.reference);
    const bool ok = diff <= ck.tolerance;
    all_passed = all_passed && ok;
    t.rows.push_back({ck.name, ck.value, ck.reference, diff, ck.tolerance, ok ? "pass" : "fail"});
  }
  return t;
}

void error_record(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump()
      << '\n';
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::page_curve: return "page-curve";
    case Command::coefficient: return "coefficient";
    case Command::variance: return "variance";
    case Command::convergence: return "convergence";
    case Command::syk2_mc: return "syk2-mc";
    case Command::deficit: return "deficit";
    case Command::kdf_eval: return "kdf-eval";
    case Command::crosscheck: return "crosscheck";
  }
  return "unknown";
}

nlohmann::json config_to_json(const RunConfig& c) {
  return {{"command", command_name(c.command)},
          {"V", c.total},
          {"VA", c.subsystem},
          {"V_list", c.totals},
          {"f", c.f_values},
          {"f_min", c.f_min},
          {"f_max", c.f_max},
          {"f_steps", c.f_steps},
          {"x", c.x},
          {"y", c.y},
          {"tol", c.tol},
          {"max_terms", c.max_terms},
          {"seed", c.seed},
          {"realizations", c.realizations},
          {"states", c.states},
          {"half_filled", c.half_filled},
          {"threads", c.threads},
          {"out", c.output_path},
          {"format", c.format == OutputFormat::csv ? "csv" : "json"}};
}

void validate(const RunConfig& c) {
  auto fail = [](const std::string& m) { throw ValidationError(m); };
  for (double f : c.f_values) {
    if (!(f > 0.0 && f < 1.0)) fail("--f must lie in (0, 1)");
  }
  if (c.f_steps < 0) fail("--f-steps must be non-negative");
  if (c.f_steps > 0 && !(c.f_min > 0.0 && c.f_max < 1.0 && c.f_min <= c.f_max)) {
    fail("--f-min/--f-max must satisfy 0 < f-min <= f-max < 1");
  }
  if (c.total < 0 || c.subsystem < 0) fail("--V and --VA must be positive");
  if (c.subsystem > 0 && c.total > 0 && c.subsystem > c.total) fail("--VA must not exceed --V");
  for (int v : c.totals) {
    if (v < 2) fail("--V-list entries must be at least 2");
  }
  if (!(c.tol > 0.0)) fail("--tol must be positive");
  if (c.realizations == 0 || c.states == 0) fail("--realizations and --states must be positive");
  if (c.threads == 0) fail("--threads must be positive");

  switch (c.command) {
    case Command::page_curve:
      if (c.total == 1) fail("page-curve needs --V >= 2");
      break;
    case Command::convergence:
      if (!c.f_values.empty() && c.f_values.front() > 0.5) fail("convergence needs f <= 1/2");
      if (c.max_terms > 0 && c.max_terms < 10) fail("convergence needs --max-terms >= 10");
      break;
    case Command::syk2_mc:
    case Command::deficit: {
      const int total = c.command == Command::syk2_mc ? total_or(c, 100) : 0;
      if (c.half_filled && total % 2 != 0) fail("--half-filled needs an even --V");
      if (c.half_filled) {
        for (int v : c.totals) {
          if (v % 2 != 0) fail("--half-filled needs even --V-list entries");
        }
      }
      break;
    }
    case Command::crosscheck:
      if (c.states < 2) fail("crosscheck needs --states >= 2");
      break;
    default:
      break;
  }
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    Table table;
    bool passed = true;
    switch (config.command) {
      case Command::page_curve: table = page_curve_table(config); break;
      case Command::coefficient: table = coefficient_table(config); break;
      case Command::variance: table = variance_table(config); break;
      case Command::convergence: table = convergence_table(config); break;
      case Command::syk2_mc: table = syk2_mc_table(config); break;
      case Command::deficit: table = deficit_table(config); break;
      case Command::kdf_eval: table = kdf_table(config); break;
      case Command::crosscheck: table = crosscheck_table(config, passed); break;
    }
    emit(table, config.format, config.output_path, config_to_json(config), out);
    if (config.format == OutputFormat::csv && !table.summary.is_null()) {
      out << table.summary.dump() << '\n';
    }
    if (!passed) {
      error_record(err, "numerical", "crosscheck: at least one check failed", kExitNumerical);
      return kExitNumerical;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    error_record(err, "validation", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const DomainError& e) {
    error_record(err, "validation", e.what(), kExitValidation);
    return kExitValidation;
  } catch (const NumericalError& e) {
    error_record(err, "numerical", e.what(), kExitNumerical);
    return kExitNumerical;
  } catch (const IoError& e) {
    error_record(err, "io", e.what(), kExitIo);
    return kExitIo;
  }
}

}  // namespace coe::cli
