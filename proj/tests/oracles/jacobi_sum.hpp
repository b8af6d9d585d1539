#pragma once

#include <cmath>

namespace coe::oracle {

// Generalized binomial coefficient C(top, k) by the product formula, long double.
inline long double binom(long double top, int k) {
  long double c = 1.0L;
  for (int i = 1; i <= k; ++i) c *= (top - k + i) / i;
  return c;
}

struct FiniteSum {
  double value;
  double abs_sum;  // sum of |terms|, the cancellation scale
};

// P_n^(a,b)(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s).
inline FiniteSum jacobi_finite_sum_terms(int n, double a, double b, double x) {
  long double sum = 0.0L;
  long double abs_sum = 0.0L;
  const long double lo = (static_cast<long double>(x) - 1.0L) / 2.0L;
  const long double hi = (static_cast<long double>(x) + 1.0L) / 2.0L;
  for (int s = 0; s <= n; ++s) {
    const long double t = binom(n + a, n - s) * binom(n + b, s) * std::pow(lo, s) * std::pow(hi, n - s);
    sum += t;
    abs_sum += std::fabs(t);
  }
  return {static_cast<double>(sum), static_cast<double>(abs_sum)};
}

inline double jacobi_finite_sum(int n, double a, double b, double x) {
  return jacobi_finite_sum_terms(n, a, b, x).value;
}

}  // namespace coe::oracle
