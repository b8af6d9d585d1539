#include "coe/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <string>

#include "coe/errors.hpp"
#include "summation.hpp"

namespace coe::specfun {

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  }
  return boost::math::lgamma(x);
}

namespace {

// Shift x upward until the asymptotic expansions are accurate to ~1e-15.
constexpr double kAsymptoticThreshold = 8.0;

double digamma_asymptotic(double x) {
  const double r = 1.0 / (x * x);
  // Bernoulli-number coefficients B_{2k}/(2k).
  const double series =
      r * (1.0 / 12 -
           r * (1.0 / 120 -
                r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return std::log(x) - 0.5 / x - series;
}

double trigamma_asymptotic(double x) {
  const double r = 1.0 / (x * x);
  const double series =
      1.0 / 6 -
      r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * (5.0 / 66 - r * (691.0 / 2730 - r * 7.0 / 6)))));
  return 1.0 / x + 0.5 * r + series * r / x;
}

}  // namespace

double polygamma(int order, double x) {
  if (order != 0 && order != 1) {
    throw DomainError("polygamma: only orders 0 and 1 are supported, got " + std::to_string(order));
  }
  if (!(x > 0.0)) {
    throw DomainError("polygamma: argument must be positive, got " + std::to_string(x));
  }
  double shift = 0.0;
  if (order == 0) {
    while (x < kAsymptoticThreshold) {
      shift -= 1.0 / x;
      x += 1.0;
    }
    return shift + digamma_asymptotic(x);
  }
  while (x < kAsymptoticThreshold) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  return shift + trigamma_asymptotic(x);
}

double harmonic(std::size_t n) {
  if (n <= 256) {
    double h = 0.0;
    for (std::size_t j = n; j >= 1; --j) h += 1.0 / static_cast<double>(j);
    return h;
  }
  return polygamma(0, static_cast<double>(n) + 1.0) + kEulerGamma;
}

double script_h(std::size_t k) { return harmonic(2 * k + 2) - 0.5 * harmonic(k + 1); }

namespace {

void check_jacobi_params(double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("jacobi_p: parameters must exceed -1");
  }
}

}  // namespace

void jacobi_p_all(std::size_t n, double alpha, double beta, double x, std::span<double> out) {
  check_jacobi_params(alpha, beta);
  if (out.size() < n + 1) {
    throw DomainError("jacobi_p_all: output span too short");
  }
  out[0] = 1.0;
  if (n == 0) return;
  const double ab = alpha + beta;
  out[1] = (alpha + 1.0) + (ab + 2.0) * (x - 1.0) / 2.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    const double denom = 2.0 * (kk + 1.0) * (kk + ab + 1.0) * s;
    const double c1 = (s + 1.0) * ((s + 2.0) * s * x + alpha * alpha - beta * beta);
    const double c2 = 2.0 * (kk + alpha) * (kk + beta) * (s + 2.0);
    out[k + 1] = (c1 * out[k] - c2 * out[k - 1]) / denom;
  }
}

double jacobi_p(std::size_t n, double alpha, double beta, double x) {
  check_jacobi_params(alpha, beta);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) / 2.0;
  const double ab = alpha + beta;
  for (std::size_t k = 1; k < n; ++k) {
    const double kk = static_cast<double>(k);
    const double s = 2.0 * kk + ab;
    const double denom = 2.0 * (kk + 1.0) * (kk + ab + 1.0) * s;
    const double c1 = (s + 1.0) * ((s + 2.0) * s * x + alpha * alpha - beta * beta);
    const double c2 = 2.0 * (kk + alpha) * (kk + beta) * (s + 2.0);
    const double next = (c1 * cur - c2 * prev) / denom;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace coe::specfun
