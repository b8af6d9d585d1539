#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "coe/curve.hpp"
#include "coe/specfun.hpp"

namespace coe::syk2 {

/// Diagnostics for the coefficient series a_k.
struct ConvergenceReport {
  double f = 0.0;
  std::vector<double> terms;  // a_0 .. a_n
  double ratio_limit = 0.0;   // a_{n+1} / a_n
  double raabe_statistic = 0.0;  // n (a_n / a_{n+1} - 1)
  double suppression_ratio = 0.0;  // a_n(f) / a_n(1/2)
};

/// One row of a partial-sum trace of the coefficient series.
struct SeriesTracePoint {
  std::size_t k = 0;
  double term = 0.0;         // prefactor times a_k
  double partial_sum = 0.0;  // through k
  double tail_bound = 0.0;   // remainder estimate after k
};

struct EntropyCoefficients {
  double ee = 0.0;
  double renyi2 = 0.0;
};

/// pi^2/8 - 1, the coefficient at half filling.
double half_filling_coefficient();

/// Limiting eigenvalue density of the restricted correlation matrix,
/// supported on [1/2 - sqrt(f(1-f)), 1/2 + sqrt(f(1-f))]. Requires 0 < f <= 1/2.
double jacobi_density(double u, double f);

/// k-th series term 4^k Gamma(k+3/2) H_k (f(1-f))^k / ((k+1) Gamma(k+3)),
/// with H_k = script_h(k). Terms are generated by recurrence.
std::vector<double> series_terms(double f, std::size_t count);

/// (4 / sqrt(pi)) f (1-f)^2, the factor in front of the series.
double series_prefactor(double f);

/// Partial sums of the series for 0 < f <= 1/2 through k = n - 1.
std::vector<SeriesTracePoint> coefficient_trace(double f, std::size_t n);

/// Volume-law coefficient <C_A>/V_A by partial sums of the series.
/// For f < 1/2 the remainder is bounded geometrically; at f = 1/2 the
/// series converges only algebraically and converged may come back false.
/// f > 1/2 is reflected onto the complement: ((1-f)/f) s(1-f).
specfun::SeriesEvaluation coefficient_series(double f, double tol = 1e-12,
                                             std::size_t max_terms = specfun::kDefaultTermBudget);

/// Same coefficient from the integral of ln^2 against the semicircle-like
/// weight, edge-substituted.
double coefficient_quadrature(double f);

/// Same coefficient from two 3F2 values and one Kampé de Fériet function.
/// Valid for 0 < f < 1/2; throws RegionError at f = 1/2.
double coefficient_closed_form(double f);

/// Preferred evaluation: the exact value at f = 1/2, the series elsewhere.
double coefficient(double f);

/// Entanglement entropy and second Renyi entropy per subsystem mode.
EntropyCoefficients entropy_coefficients(double f);

/// pi^2/8 - 1 from the replica integral, differentiated under the integral sign.
double replica_coefficient_half();

/// Requires 0 < f <= 1/2 and n >= 10.
ConvergenceReport convergence_report(double f, std::size_t n);

/// V f (1-f) beta^2 for a Hamiltonian with a Gaussian density of states.
double chaotic_coe(int total, double f, double beta);

/// coe, ee and renyi2 coefficients on the given grid of fractions.
CoefficientCurve coefficient_curve(std::span<const double> f_grid);

}  // namespace coe::syk2
