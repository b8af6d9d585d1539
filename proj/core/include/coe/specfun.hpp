#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coe::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kDefaultTol = 1e-10;
inline constexpr std::size_t kDefaultTermBudget = 100'000;

/// Result of summing an infinite series.
struct SeriesEvaluation {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // estimated absolute truncation error, >= 0
  bool converged = false;
};

/// Parameter rows of a Kampé de Fériet function
///   F^{p:q:k}_{l:m:n}[(a):(b);(c) / (alpha):(beta);(gamma) | x, y].
struct KdfParams {
  std::vector<double> a_top;      // (a_p), Pochhammer index r+s
  std::vector<double> b_row;      // (b_q), index r
  std::vector<double> c_row;      // (c_k), index s
  std::vector<double> alpha_bot;  // (alpha_l), index r+s
  std::vector<double> beta_bot;   // (beta_m), index r
  std::vector<double> gamma_bot;  // (gamma_n), index s
};

double log_gamma(double x);

/// Digamma (order 0) and trigamma (order 1).
double polygamma(int order, double x);

double harmonic(std::size_t n);

/// H_{2k+2} - H_{k+1}/2.
double script_h(std::size_t k);

/// Jacobi polynomial P_n^{(alpha,beta)}(x) by the three-term recurrence.
double jacobi_p(std::size_t n, double alpha, double beta, double x);

/// Fills out[0..n] with P_0..P_n at x. Cheaper than n separate calls.
void jacobi_p_all(std::size_t n, double alpha, double beta, double x, std::span<double> out);

/// Generalized hypergeometric series pFq(a; b; z).
SeriesEvaluation hyp_pfq(std::span<const double> a, std::span<const double> b, double z,
                         double tol = kDefaultTol, std::size_t max_terms = kDefaultTermBudget);

/// Kampé de Fériet double series, summed over square shells max(r, s) = N.
/// Throws RegionError when (x, y) is not strictly inside the region of
/// convergence given by the parameter counts.
SeriesEvaluation kdf(const KdfParams& params, double x, double y, double tol = kDefaultTol,
                     std::size_t max_shells = kDefaultTermBudget);

}  // namespace coe::specfun
