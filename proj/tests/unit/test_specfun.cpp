#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "coe/errors.hpp"
#include "coe/specfun.hpp"
#include "jacobi_sum.hpp"
#include "pfq_partial.hpp"

using namespace coe;
using namespace coe::specfun;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
}  // namespace

TEST_CASE("log_gamma anchors") {
  CHECK(log_gamma(1.0) == Approx(0.0).epsilon(1e-15));
  CHECK(std::abs(log_gamma(2.0)) < 1e-15);
  CHECK(log_gamma(0.5) == Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
}

TEST_CASE("log_gamma tracks the factorial recurrence over its range") {
  for (double x : {1e-3, 0.37, 3.5, 17.25, 140.0, 2.5e3, 9.9e5}) {
    // ln Gamma(x+1) - ln Gamma(x) = ln x, up to rounding of the two large values
    const double diff = log_gamma(x + 1.0) - log_gamma(x);
    const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(log_gamma(x + 1.0));
    CHECK(std::abs(diff - std::log(x)) <= 1e-13 + rounding);
  }
  CHECK(log_gamma(101.0) == Approx(363.73937555556349014).epsilon(1e-14));
}

TEST_CASE("polygamma anchors and errors") {
  CHECK(polygamma(0, 1.0) == Approx(-kEulerGamma).epsilon(1e-14));
  CHECK(polygamma(1, 1.0) == Approx(kPi * kPi / 6.0).epsilon(1e-14));
  CHECK(polygamma(0, 2.0) == Approx(1.0 - kEulerGamma).epsilon(1e-14));
  CHECK_THROWS_AS(polygamma(2, 1.0), DomainError);
  CHECK_THROWS_AS(polygamma(0, 0.0), DomainError);
  CHECK_THROWS_AS(polygamma(1, -2.0), DomainError);
}

TEST_CASE("polygamma satisfies the digamma duplication formula") {
  for (double z : {0.5, 1.0, 2.5, 10.0}) {
    const double lhs = 2.0 * polygamma(0, 2.0 * z);
    const double rhs = 2.0 * kLn2 + polygamma(0, z) + polygamma(0, z + 0.5);
    CHECK(std::abs(lhs - rhs) < 1e-11);
  }
}

TEST_CASE("polygamma agrees with harmonic sums at integers across the range") {
  // psi(n) = H_{n-1} - gamma, psi_1(n) = pi^2/6 - sum_{k<n} 1/k^2
  double s2 = 0.0;
  for (int n = 1; n <= 10000; ++n) {
    if (n == 1 || n == 7 || n == 64 || n == 1000 || n == 10000) {
      CHECK(std::abs(polygamma(0, n) - (harmonic(n - 1) - kEulerGamma)) < 1e-12);
      CHECK(std::abs(polygamma(1, n) - (kPi * kPi / 6.0 - s2)) < 1e-12);
    }
    s2 += 1.0 / (static_cast<double>(n) * n);
  }
  // Half-integer: psi(1/2) = -gamma - 2 ln 2, psi_1(1/2) = pi^2 / 2
  CHECK(std::abs(polygamma(0, 0.5) - (-kEulerGamma - 2.0 * kLn2)) < 1e-12);
  CHECK(std::abs(polygamma(1, 0.5) - kPi * kPi / 2.0) < 1e-12);
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(0) == 0.0);
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(4) == Approx(25.0 / 12.0).epsilon(1e-15));
  // Switch-over between direct sum and digamma must be seamless.
  double direct = 0.0;
  for (std::size_t k = 1; k <= 600; ++k) {
    direct += 1.0 / k;
    if (k >= 250) CHECK(harmonic(k) == Approx(direct).epsilon(1e-14));
  }
}

TEST_CASE("script_h values and the digamma identity") {
  CHECK(script_h(0) == Approx(1.0).epsilon(1e-15));
  CHECK(script_h(1) == Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(script_h(2) == Approx(49.0 / 20.0 - 11.0 / 12.0).epsilon(1e-15));
  for (std::size_t k = 0; k <= 200; ++k) {
    const double kk = static_cast<double>(k);
    const double rhs = 0.5 * polygamma(0, kk + 0.5) + kLn2 +
                       (2.0 * kEulerGamma * kk + kEulerGamma + 2.0) / (4.0 * kk + 2.0);
    CHECK(std::abs(script_h(k) - rhs) < 1e-11);
  }
}

TEST_CASE("jacobi_p low degrees") {
  CHECK(jacobi_p(0, 3.0, 1.5, 0.3) == 1.0);
  for (double a : {0.0, 1.5, 4.0}) {
    for (double b : {0.0, 2.0}) {
      for (double x : {-0.9, 0.1, 0.7}) {
        CHECK(jacobi_p(1, a, b, x) == Approx((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0));
      }
    }
  }
  CHECK(jacobi_p(2, 0.0, 0.0, 0.5) == Approx(-0.125).epsilon(1e-15));
  CHECK_THROWS_AS(jacobi_p(3, -1.0, 0.0, 0.2), DomainError);
  CHECK_THROWS_AS(jacobi_p(3, 0.0, -1.5, 0.2), DomainError);
}

TEST_CASE("jacobi_p recurrence matches the finite-sum representation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ux(-1.0, 1.0);
  std::vector<double> all(41);
  for (int delta = 0; delta <= 20; ++delta) {
    for (int trial = 0; trial < 6; ++trial) {
      const double x = trial == 0 ? 1.0 : (trial == 1 ? -1.0 : ux(rng));
      jacobi_p_all(40, delta, delta, x, all);
      for (int n = 0; n <= 40; ++n) {
        const auto ref = oracle::jacobi_finite_sum_terms(n, delta, delta, x);
        const double got = jacobi_p(n, delta, delta, x);
        CHECK(got == all[n]);
        // P_n(1) is the sup norm on [-1, 1]; the oracle itself loses
        // precision in proportion to the sum of |terms|.
        const double scale = std::abs(oracle::jacobi_finite_sum(n, delta, delta, 1.0));
        CHECK(std::abs(got - ref.value) <= 1e-12 * scale + 1e-17 * ref.abs_sum);
      }
    }
  }
}

TEST_CASE("hyp_pfq trivial values") {
  const std::array<double, 3> a{1.0, 1.0, 1.5};
  const std::array<double, 2> b{2.0, 3.0};
  const auto r0 = hyp_pfq(a, b, 0.0, 1e-12);
  CHECK(r0.value == 1.0);
  CHECK(r0.converged);
  const std::array<double, 1> one{1.0};
  const auto geo = hyp_pfq(one, {}, 0.5, 1e-12);
  CHECK(geo.value == Approx(2.0).epsilon(1e-12));
  CHECK(geo.tail_bound <= 1e-12);
  // 1F1(1; 1; z) = e^z for any z
  const auto ex = hyp_pfq(one, one, -3.0, 1e-14);
  CHECK(ex.value == Approx(std::exp(-3.0)).epsilon(1e-11));
}

TEST_CASE("hyp_pfq agrees with long partial sums") {
  const std::vector<double> a{1.0, 1.0, 1.5};
  const std::vector<double> b{2.0, 3.0};
  const auto r = hyp_pfq(a, b, 0.75, 1e-10);
  REQUIRE(r.converged);
  const auto ref = oracle::pfq_partial_sum(a, b, 0.75, 10 * r.terms_used);
  CHECK(std::abs(r.value - static_cast<double>(ref)) <= 1e-8);
  CHECK(std::abs(r.value - static_cast<double>(ref)) <= r.tail_bound + 1e-15);

  const std::vector<double> a2{1.0, 1.0, 0.5};
  for (double z : {-0.9, 0.3, 0.96}) {
    const auto s = hyp_pfq(a2, b, z, 1e-12);
    const auto ref2 = oracle::pfq_partial_sum(a2, b, z, 10 * s.terms_used);
    CHECK(std::abs(s.value - static_cast<double>(ref2)) <= 1e-11);
  }
}

TEST_CASE("hyp_pfq terminating and unit-argument cases") {
  // 2F1(-3, 2; 1; z) = 1 - 6z + 9z^2 - 4z^3, also valid outside |z| < 1.
  const std::array<double, 2> a{-3.0, 2.0};
  const std::array<double, 1> b{1.0};
  CHECK(std::abs(hyp_pfq(a, b, 1.0, 1e-14).value) < 1e-14);
  CHECK(hyp_pfq(a, b, 0.5, 1e-14).value == Approx(-0.25).epsilon(1e-14));
  CHECK(hyp_pfq(a, b, 2.0, 1e-14).value == Approx(1.0 - 12.0 + 36.0 - 32.0).epsilon(1e-14));
  // Gauss: 2F1(a, b; c; 1) = Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)).
  const std::array<double, 2> ga{0.5, 0.25};
  const std::array<double, 1> gc{2.0};
  const auto g = hyp_pfq(ga, gc, 1.0, 1e-7, 2'000'000);
  const double gauss = std::exp(log_gamma(2.0) + log_gamma(1.25) - log_gamma(1.5) - log_gamma(1.75));
  CHECK(g.converged);
  CHECK(std::abs(g.value - gauss) < 1e-6);
}

TEST_CASE("hyp_pfq error paths") {
  const std::array<double, 2> a{1.0, 1.0};
  const std::array<double, 1> b{2.0};
  CHECK_THROWS_AS(hyp_pfq(a, b, 1.5), DivergenceError);
  CHECK_THROWS_AS(hyp_pfq(a, b, -1.01), DivergenceError);
  CHECK_THROWS_AS(hyp_pfq(a, b, 1.0), DivergenceError);  // sum(b) - sum(a) = 0
  const std::array<double, 1> pole{-2.0};
  CHECK_THROWS_AS(hyp_pfq(a, pole, 0.5), PoleError);
  const std::array<double, 3> three{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(hyp_pfq(three, b, 0.1), DivergenceError);
  const std::array<double, 1> one{1.0};
  CHECK_THROWS_AS(hyp_pfq(one, {}, 0.999, 1e-14, 50), ConvergenceError);
}

TEST_CASE("hyp_pfq is deterministic") {
  const std::array<double, 3> a{1.0, 1.0, 1.5};
  const std::array<double, 2> b{2.0, 3.0};
  const auto r1 = hyp_pfq(a, b, 0.6);
  const auto r2 = hyp_pfq(a, b, 0.6);
  CHECK(r1.value == r2.value);
  CHECK(r1.terms_used == r2.terms_used);
}

namespace {
KdfParams closed_form_params() {
  KdfParams p;
  p.a_top = {2.0, 2.5};
  p.b_row = {1.0, 0.5};
  p.c_row = {1.0};
  p.alpha_bot = {3.0, 4.0};
  p.beta_bot = {1.5};
  return p;
}

// Direct double loop over r + s <= n_max, long double.
long double kdf_brute(const KdfParams& p, double x, double y, int n_max) {
  long double total = 0.0L;
  for (int r = 0; r <= n_max; ++r) {
    for (int s = 0; r + s <= n_max; ++s) {
      long double t = std::pow(static_cast<long double>(x), r) * std::pow(static_cast<long double>(y), s);
      auto poch = [](double a, int n) {
        long double v = 1.0L;
        for (int i = 0; i < n; ++i) v *= a + i;
        return v;
      };
      for (double a : p.a_top) t *= poch(a, r + s);
      for (double a : p.alpha_bot) t /= poch(a, r + s);
      for (double b : p.b_row) t *= poch(b, r);
      for (double b : p.beta_bot) t /= poch(b, r);
      for (double c : p.c_row) t *= poch(c, s);
      for (double c : p.gamma_bot) t /= poch(c, s);
      t /= poch(1.0, r) * poch(1.0, s);
      total += t;
    }
  }
  return total;
}
}  // namespace

TEST_CASE("kdf origin and brute-force agreement") {
  const auto p = closed_form_params();
  CHECK(kdf(p, 0.0, 0.0).value == 1.0);
  const auto r = kdf(p, 0.4, 0.3, 1e-13);
  REQUIRE(r.converged);
  CHECK(std::abs(r.value - static_cast<double>(kdf_brute(p, 0.4, 0.3, 400))) < 1e-12);
}

TEST_CASE("kdf region of convergence") {
  const auto p = closed_form_params();
  // f = 1/2 maps onto x = y = 1, the boundary.
  try {
    kdf(p, 1.0, 1.0);
    FAIL("expected RegionError");
  } catch (const RegionError& e) {
    CHECK(e.condition() == "max(|x|,|y|) < 1");
  }
  CHECK_THROWS_AS(kdf(p, 0.5, -1.2), RegionError);
  // Parameter counts with p > l: |x|^(1/(p-l)) + |y|^(1/(p-l)) < 1.
  KdfParams q;
  q.a_top = {1.0};
  CHECK_THROWS_AS(kdf(q, 0.5, 0.5), RegionError);
  CHECK_NOTHROW(kdf(q, 0.3, 0.3));
  // p + q < l + m + 1 and p + k < l + n + 1: entire function.
  KdfParams e;
  e.alpha_bot = {1.0};
  CHECK(kdf(e, 3.0, -2.0, 1e-13).converged);
  KdfParams bad = p;
  bad.beta_bot = {-1.0};
  CHECK_THROWS_AS(kdf(bad, 0.1, 0.1), PoleError);
}

TEST_CASE("kdf with y = 0 reduces to a single series") {
  const auto p = closed_form_params();
  // Only s = 0 survives: sum_r (2)_r (5/2)_r (1)_r (1/2)_r / ((3)_r (4)_r (3/2)_r r!) x^r.
  const std::array<double, 4> a{2.0, 2.5, 1.0, 0.5};
  const std::array<double, 3> b{3.0, 4.0, 1.5};
  for (double x : {0.2, 0.6, 0.9}) {
    CHECK(std::abs(kdf(p, x, 0.0, 1e-14).value - hyp_pfq(a, b, x, 1e-14).value) < 1e-12);
  }
}

TEST_CASE("kdf budget exhaustion") {
  CHECK_THROWS_AS(kdf(closed_form_params(), 0.99, 0.99, 1e-14, 20), ConvergenceError);
}
