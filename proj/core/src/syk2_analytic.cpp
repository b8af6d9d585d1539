#include "coe/syk2_analytic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "coe/errors.hpp"
#include "coe/quadrature.hpp"
#include "summation.hpp"

namespace coe::syk2 {

namespace {

using std::numbers::pi;

void require_open_unit(double f, const char* who) {
  if (!(f > 0.0 && f < 1.0)) {
    throw DomainError(std::string(who) + ": f must lie in (0, 1), got " + std::to_string(f));
  }
}

void require_lower_half(double f, const char* who) {
  if (!(f > 0.0 && f <= 0.5)) {
    throw DomainError(std::string(who) + ": f must lie in (0, 1/2], got " + std::to_string(f));
  }
}

// Reflection onto the complement for f > 1/2, per subsystem mode.
template <class Fn>
double reflected(double f, Fn&& per_mode) {
  if (f > 0.5) return (1.0 - f) / f * per_mode(1.0 - f);
  return per_mode(f);
}

// Integrates g(u) against the limiting density with u = 1/2 + sqrt(z) sin(theta).
// g receives u and 1 - u, both computed without cancellation.
template <class Fn>
double integrate_against_density(double f, Fn&& g, double tol) {
  const double z = f * (1.0 - f);
  const double sz = std::sqrt(z);
  const double gap = (0.5 - f) * (0.5 - f);  // 1/4 - z
  const double edge = gap / (0.5 + sz);      // 1/2 - sqrt(z)
  auto integrand = [&](double theta) {
    const double c = std::cos(theta);
    const double h = std::sin(0.25 * pi - 0.5 * theta);
    const double g_h = std::sin(0.25 * pi + 0.5 * theta);
    const double upper = edge + 2.0 * sz * h * h;   // 1 - u
    const double lower = edge + 2.0 * sz * g_h * g_h;  // u
    const double weight = z * c * c / (gap + z * c * c);
    return weight * g(lower, upper);
  };
  return quadrature::integrate_1d(integrand, -0.5 * pi, 0.5 * pi, tol).value / (2.0 * pi * f);
}

// Remainder after the term with index k, given the next term. Beyond k the
// ratio of consecutive terms stays below 4f(1-f). At f = 1/2 the terms fall
// like k^{-5/2} log k and the remainder is about next * k / (3/2).
double remainder_estimate(double ratio_limit, std::size_t k, double next) {
  if (ratio_limit >= 1.0 - 1e-15) return next * (k + 1.0) / 1.5;
  return next / (1.0 - ratio_limit);
}

double series_value(double f, double tol, std::size_t max_terms, specfun::SeriesEvaluation& out) {
  const double ratio_limit = 4.0 * f * (1.0 - f);
  const double prefactor = series_prefactor(f);

  detail::CompensatedSum sum;
  double t = 0.25 * std::sqrt(pi);  // Gamma(3/2) / Gamma(3)
  double h2 = 1.5;                   // H_{2k+2}
  double h1 = 1.0;                   // H_{k+1}
  std::size_t k = 0;
  double tail = 0.0;
  bool converged = false;
  while (k < max_terms) {
    sum.add(t * (h2 - 0.5 * h1) / (k + 1.0));
    ++k;
    t *= ratio_limit * (k + 0.5) / (k + 2.0);
    h2 += 1.0 / (2.0 * k + 1.0) + 1.0 / (2.0 * k + 2.0);
    h1 += 1.0 / (k + 1.0);
    tail = remainder_estimate(ratio_limit, k, t * (h2 - 0.5 * h1) / (k + 1.0));
    if (prefactor * tail <= tol) {
      converged = true;
      break;
    }
  }
  out.terms_used = k;
  out.tail_bound = prefactor * tail;
  out.converged = converged;
  return prefactor * sum.value();
}

}  // namespace

double half_filling_coefficient() { return pi * pi / 8.0 - 1.0; }

double jacobi_density(double u, double f) {
  require_lower_half(f, "jacobi_density");
  const double z = f * (1.0 - f);
  const double s = u * (1.0 - u) + z - 0.25;
  if (s <= 0.0 || u <= 0.0 || u >= 1.0) return 0.0;
  return std::sqrt(s) / (u * (1.0 - u)) / (2.0 * pi * f);
}

std::vector<double> series_terms(double f, std::size_t count) {
  require_lower_half(f, "series_terms");
  const double ratio_limit = 4.0 * f * (1.0 - f);
  std::vector<double> terms;
  terms.reserve(count);
  double t = 0.25 * std::sqrt(pi);
  double h2 = 1.5;
  double h1 = 1.0;
  for (std::size_t k = 0; k < count; ++k) {
    terms.push_back(t * (h2 - 0.5 * h1) / (k + 1.0));
    t *= ratio_limit * (k + 1.5) / (k + 3.0);
    h2 += 1.0 / (2.0 * k + 3.0) + 1.0 / (2.0 * k + 4.0);
    h1 += 1.0 / (k + 2.0);
  }
  return terms;
}

double series_prefactor(double f) { return 4.0 / std::sqrt(pi) * f * (1.0 - f) * (1.0 - f); }

std::vector<SeriesTracePoint> coefficient_trace(double f, std::size_t n) {
  require_lower_half(f, "coefficient_trace");
  const double ratio_limit = 4.0 * f * (1.0 - f);
  const double prefactor = series_prefactor(f);
  const auto terms = series_terms(f, n + 1);
  std::vector<SeriesTracePoint> out;
  out.reserve(n);
  detail::CompensatedSum sum;
  for (std::size_t k = 0; k < n; ++k) {
    sum.add(terms[k]);
    out.push_back({k, prefactor * terms[k], prefactor * sum.value(),
                   prefactor * remainder_estimate(ratio_limit, k + 1, terms[k + 1])});
  }
  return out;
}

specfun::SeriesEvaluation coefficient_series(double f, double tol, std::size_t max_terms) {
  require_open_unit(f, "coefficient_series");
  if (!(tol > 0.0)) throw DomainError("coefficient_series: tol must be positive");
  if (max_terms == 0) throw DomainError("coefficient_series: max_terms must be positive");
  specfun::SeriesEvaluation out;
  if (f > 0.5) {
    const double scale = (1.0 - f) / f;
    out.value = scale * series_value(1.0 - f, tol / scale, max_terms, out);
    out.tail_bound *= scale;
  } else {
    out.value = series_value(f, tol, max_terms, out);
  }
  return out;
}

double coefficient_quadrature(double f) {
  require_open_unit(f, "coefficient_quadrature");
  return reflected(f, [](double g) {
    const double z = g * (1.0 - g);
    const double r = 2.0 * std::sqrt(z);
    const double one_minus_r = (1.0 - 2.0 * g) * (1.0 - 2.0 * g) / (1.0 + r);
    // Even in theta; integrate over [0, pi/2] and double.
    auto integrand = [&](double theta) {
      const double s = std::sin(theta);
      const double h = std::sin(0.25 * pi - 0.5 * theta);
      const double l = std::log(one_minus_r + 2.0 * r * h * h) - std::log1p(r * s);
      const double c = std::cos(theta);
      return l * l * c * c;
    };
    const double integral = quadrature::integrate_1d(integrand, 0.0, 0.5 * pi, 1e-14).value;
    return 4.0 * z * integral / (4.0 * pi * g);
  });
}

double coefficient_closed_form(double f) {
  if (!(f > 0.0 && f <= 0.5)) {
    throw DomainError("coefficient_closed_form: f must lie in (0, 1/2), got " + std::to_string(f));
  }
  const double z = 4.0 * f * (1.0 - f);
  constexpr double gamma = specfun::kEulerGamma;
  constexpr double tol = 1e-15;
  specfun::KdfParams params;
  params.a_top = {2.0, 2.5};
  params.b_row = {1.0, 0.5};
  params.c_row = {1.0};
  params.alpha_bot = {3.0, 4.0};
  params.beta_bot = {1.5};
  const double kdf = specfun::kdf(params, z, z, tol).value;

  const std::array<double, 3> a1{1.0, 1.0, 1.5};
  const std::array<double, 3> a2{1.0, 1.0, 0.5};
  const std::array<double, 2> b{2.0, 3.0};
  const double f1 = specfun::hyp_pfq(a1, b, z, tol).value;
  const double f2 = specfun::hyp_pfq(a2, b, z, tol).value;
  const double om = 1.0 - f;
  const double bracket = -gamma / 8.0 * f1 + (2.0 - gamma) / 8.0 * f2 +
                         gamma * (3.0 - 4.0 * f) / (12.0 * om * om) + 0.25 * f * om * kdf;
  return 4.0 * f * om * om * bracket;
}

double coefficient(double f) {
  require_open_unit(f, "coefficient");
  if (f == 0.5) return half_filling_coefficient();
  return coefficient_series(f).value;
}

EntropyCoefficients entropy_coefficients(double f) {
  require_open_unit(f, "entropy_coefficients");
  const auto entropy = [](double u, double v) { return -u * std::log(u) - v * std::log(v); };
  const auto renyi = [](double u, double v) { return -std::log(u * u + v * v); };
  constexpr double tol = 1e-13;
  EntropyCoefficients out;
  out.ee = reflected(f, [&](double g) { return integrate_against_density(g, entropy, tol); });
  out.renyi2 = reflected(f, [&](double g) { return integrate_against_density(g, renyi, tol); });
  return out;
}

double replica_coefficient_half() {
  // d^2/dn^2 of ln(1 + k^{2n}) at n = 1 is 4 ln^2(k) k^2 / (1 + k^2)^2; with
  // n^2 and the outer 1/(1+k^2) this is 4 ln^2(k) k^2 / (1 + k^2)^3.
  auto integrand = [](double k) {
    const double l = std::log(k);
    const double d = 1.0 + k * k;
    return 4.0 * l * l * k * k / (d * d * d);
  };
  return 4.0 / pi * quadrature::integrate_1d(integrand, 0.0, 1.0, 1e-14).value;
}

ConvergenceReport convergence_report(double f, std::size_t n) {
  require_lower_half(f, "convergence_report");
  if (n < 10) throw DomainError("convergence_report: n must be at least 10");
  ConvergenceReport out;
  out.f = f;
  out.terms = series_terms(f, n + 2);
  const double an = out.terms[n];
  const double next = out.terms[n + 1];
  out.ratio_limit = next / an;
  out.raabe_statistic = static_cast<double>(n) * (an / next - 1.0);
  out.suppression_ratio = an / series_terms(0.5, n + 1)[n];
  out.terms.resize(n + 1);
  return out;
}

double chaotic_coe(int total, double f, double beta) { return total * f * (1.0 - f) * beta * beta; }

CoefficientCurve coefficient_curve(std::span<const double> f_grid) {
  CoefficientCurve curve;
  for (double f : f_grid) {
    const auto s = coefficient_series(f);
    const auto e = entropy_coefficients(f);
    curve.f_grid.push_back(f);
    curve.coe.push_back(f == 0.5 ? half_filling_coefficient() : s.value);
    curve.ee.push_back(e.ee);
    curve.renyi2.push_back(e.renyi2);
    curve.errors.push_back(f == 0.5 ? 0.0 : s.tail_bound);
  }
  return curve;
}

}  // namespace coe::syk2
