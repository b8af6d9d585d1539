#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coe/errors.hpp"
#include "coe/specfun.hpp"
#include "summation.hpp"

namespace coe::specfun {

using detail::CompensatedSum;
using detail::is_nonpositive_integer;

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

void check_poles(std::span<const double> bottom, const char* who) {
  for (double b : bottom) {
    if (is_nonpositive_integer(b)) {
      throw PoleError(std::string(who) + ": bottom parameter " + std::to_string(b) +
                      " is a non-positive integer");
    }
  }
}

bool terminates(std::span<const double> top) {
  return std::any_of(top.begin(), top.end(), is_nonpositive_integer);
}

double sum_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

SeriesEvaluation hyp_pfq(std::span<const double> a, std::span<const double> b, double z, double tol,
                         std::size_t max_terms) {
  check_poles(b, "hyp_pfq");
  const std::size_t p = a.size();
  const std::size_t q = b.size();
  if (z == 0.0) return {1.0, 1, 0.0, true};

  if (!terminates(a)) {
    if (p > q + 1) {
      throw DivergenceError("hyp_pfq: p > q + 1 diverges for every z != 0");
    }
    if (p == q + 1) {
      if (std::abs(z) > 1.0) {
        throw DivergenceError("hyp_pfq: |z| > 1 is outside the disc of convergence");
      }
      if (std::abs(z) == 1.0 && !(sum_of(b) - sum_of(a) > 0.0)) {
        throw DivergenceError("hyp_pfq: |z| = 1 requires sum(b) - sum(a) > 0");
      }
    }
  }

  // The local term ratio is only trusted once m exceeds the parameter scale.
  const double settle = 2.0 * std::max(max_abs(a), max_abs(b)) + 2.0;
  const double ratio_limit = p == q + 1 && std::abs(z) < 1.0 ? std::abs(z) : 0.0;

  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  auto ratio_at = [&](std::size_t m) {
    const double mm = static_cast<double>(m);
    double r = z / (mm + 1.0);
    for (double aj : a) r *= aj + mm;
    for (double bj : b) r /= bj + mm;
    return r;
  };

  for (std::size_t m = 0; m + 1 < max_terms; ++m) {
    const double next = term * ratio_at(m);
    if (next == 0.0) {
      return {sum.value(), m + 1, 0.0, true};
    }
    // For p = q + 1 the ratios can creep up towards |z|; bound with the limit.
    const double r_next = std::max(std::abs(ratio_at(m + 1)), ratio_limit);
    if (static_cast<double>(m) >= settle && r_next < 1.0) {
      const double tail = std::abs(next) / (1.0 - r_next);
      if (tail <= tol) {
        sum.add(next);
        return {sum.value(), m + 2, std::abs(next) * r_next / (1.0 - r_next), true};
      }
    }
    if (!std::isfinite(next)) {
      throw ConvergenceError("hyp_pfq: term overflow");
    }
    sum.add(next);
    term = next;
  }
  throw ConvergenceError("hyp_pfq: term budget of " + std::to_string(max_terms) + " exhausted");
}

namespace {

void check_kdf_region(const KdfParams& prm, double x, double y) {
  const auto p = prm.a_top.size();
  const auto q = prm.b_row.size();
  const auto k = prm.c_row.size();
  const auto l = prm.alpha_bot.size();
  const auto m = prm.beta_bot.size();
  const auto n = prm.gamma_bot.size();
  if (p + q < l + m + 1 && p + k < l + n + 1) return;
  if (p + q == l + m + 1 && p + k == l + n + 1) {
    if (p <= l) {
      if (std::max(std::abs(x), std::abs(y)) < 1.0) return;
      throw RegionError("max(|x|,|y|) < 1",
                        "kdf: point lies outside or on the boundary of max(|x|,|y|) < 1");
    }
    const double e = 1.0 / static_cast<double>(p - l);
    if (std::pow(std::abs(x), e) + std::pow(std::abs(y), e) < 1.0) return;
    throw RegionError("|x|^(1/(p-l)) + |y|^(1/(p-l)) < 1",
                      "kdf: point lies outside or on the boundary of |x|^(1/(p-l)) + |y|^(1/(p-l)) < 1");
  }
  throw RegionError("parameter counts",
                    "kdf: parameter counts fall outside the convergence classes p+q <= l+m+1, "
                    "p+k <= l+n+1 (both strict or both equal)");
}

}  // namespace

SeriesEvaluation kdf(const KdfParams& prm, double x, double y, double tol, std::size_t max_shells) {
  check_poles(prm.alpha_bot, "kdf");
  check_poles(prm.beta_bot, "kdf");
  check_poles(prm.gamma_bot, "kdf");
  if (x == 0.0 && y == 0.0) return {1.0, 1, 0.0, true};
  check_kdf_region(prm, x, y);

  // Ratio t(r, s+1)/t(r, s) and t(r+1, s)/t(r, s).
  auto joint = [&](double n) {
    double v = 1.0;
    for (double aj : prm.a_top) v *= aj + n;
    for (double al : prm.alpha_bot) v /= al + n;
    return v;
  };
  auto step_s = [&](std::size_t r, std::size_t s) {
    const double ss = static_cast<double>(s);
    double v = joint(static_cast<double>(r + s)) * y / (ss + 1.0);
    for (double c : prm.c_row) v *= c + ss;
    for (double g : prm.gamma_bot) v /= g + ss;
    return v;
  };
  auto step_r = [&](std::size_t r, std::size_t s) {
    const double rr = static_cast<double>(r);
    double v = joint(static_cast<double>(r + s)) * x / (rr + 1.0);
    for (double b : prm.b_row) v *= b + rr;
    for (double be : prm.beta_bot) v /= be + rr;
    return v;
  };

  double scale = 0.0;
  for (const auto* row : {&prm.a_top, &prm.b_row, &prm.c_row, &prm.alpha_bot, &prm.beta_bot,
                          &prm.gamma_bot}) {
    scale = std::max(scale, max_abs(*row));
  }
  const double settle = 2.0 * scale + 4.0;

  // col[r] = t(r, N-1) for r <= N-1; row[s] = t(N-1, s) for s <= N-1.
  std::vector<double> col{1.0};
  std::vector<double> row{1.0};
  CompensatedSum total;
  total.add(1.0);
  double prev_shell_abs = 1.0;

  for (std::size_t shell = 1; shell < max_shells; ++shell) {
    const std::size_t n_prev = shell - 1;
    std::vector<double> new_col(shell + 1);
    std::vector<double> new_row(shell + 1);
    CompensatedSum shell_sum;
    double shell_abs = 0.0;
    for (std::size_t r = 0; r < shell; ++r) {
      new_col[r] = col[r] * step_s(r, n_prev);
      shell_sum.add(new_col[r]);
      shell_abs += std::abs(new_col[r]);
    }
    for (std::size_t s = 0; s < shell; ++s) {
      new_row[s] = row[s] * step_r(n_prev, s);
      shell_sum.add(new_row[s]);
      shell_abs += std::abs(new_row[s]);
    }
    // Corner term t(N, N) from t(N-1, N).
    const double corner = new_col[n_prev] * step_r(n_prev, shell);
    new_col[shell] = corner;
    new_row[shell] = corner;
    shell_sum.add(corner);
    shell_abs += std::abs(corner);

    if (!std::isfinite(shell_abs)) {
      throw ConvergenceError("kdf: term overflow");
    }
    total.add(shell_sum.value());
    if (shell_abs == 0.0) {
      return {total.value(), shell + 1, 0.0, true};
    }
    const double rho = shell_abs / prev_shell_abs;
    if (static_cast<double>(shell) >= settle && rho < 1.0) {
      const double tail = shell_abs * rho / (1.0 - rho);
      if (tail <= tol) {
        return {total.value(), shell + 1, tail, true};
      }
    }
    prev_shell_abs = shell_abs;
    col = std::move(new_col);
    row = std::move(new_row);
  }
  throw ConvergenceError("kdf: shell budget of " + std::to_string(max_shells) + " exhausted");
}

}  // namespace coe::specfun
