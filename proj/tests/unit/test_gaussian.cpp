#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "coe/errors.hpp"
#include "coe/gaussian.hpp"
#include "coe/quadrature.hpp"
#include "coe/syk2_analytic.hpp"

using namespace coe;
using namespace coe::gaussian;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double u_form_capacity(double x) {
  const double u = 0.5 * (1.0 + x);
  const double l = std::log((1.0 - u) / u);
  return u * (1.0 - u) * l * l;
}

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
};

SampleMoments haar_moments(const Bipartition& bp, int draws, std::uint64_t seed0) {
  std::vector<double> xs(draws);
  for (int i = 0; i < draws; ++i) {
    xs[i] = spectrum_capacity(haar_sample_spectrum(bp, seed0 + i));
  }
  SampleMoments m;
  for (double x : xs) m.mean += x;
  m.mean /= draws;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m.variance += d * d;
    m4 += d * d * d * d;
  }
  m.variance /= draws - 1.0;
  m4 /= draws;
  m.mean_se = std::sqrt(m.variance / draws);
  m.variance_se = std::sqrt(std::max(m4 - m.variance * m.variance, 0.0) / draws);
  return m;
}

}  // namespace

TEST_CASE("Bipartition") {
  const Bipartition bp(10, 3);
  CHECK(bp.total() == 10);
  CHECK(bp.subsystem() == 3);
  CHECK(bp.delta() == 4);
  CHECK(bp.fraction() == Approx(0.3));
  CHECK(Bipartition(10, 7).reduced().subsystem() == 3);
  CHECK(Bipartition(10, 5).reduced().subsystem() == 5);
  CHECK_THROWS_AS(Bipartition(0, 0), DomainError);
  CHECK_THROWS_AS(Bipartition(5, 6), DomainError);
  CHECK_THROWS_AS(Bipartition(5, 0), DomainError);
}

TEST_CASE("mode_measures anchors") {
  const auto m0 = mode_measures(0.0);
  CHECK(m0.coe == 0.0);
  CHECK(m0.ee == Approx(kLn2).epsilon(1e-15));
  CHECK(m0.renyi2 == Approx(kLn2).epsilon(1e-15));
  for (double x : {1.0, -1.0}) {
    const auto m = mode_measures(x);
    CHECK(m.coe == 0.0);
    CHECK(m.ee == 0.0);
    CHECK(std::abs(m.renyi2) < 1e-15);
  }
  CHECK(mode_measures(0.5).coe == Approx(0.25 * 0.75 * std::log(3.0) * std::log(3.0)).epsilon(1e-14));
  CHECK(mode_measures(0.5).coe == Approx(0.22629).epsilon(1e-4));
  CHECK_THROWS_AS(mode_measures(1.0 + 1e-12), DomainError);
  CHECK_THROWS_AS(mode_capacity(-2.0), DomainError);
  CHECK_THROWS_AS(mode_measures(std::nan("")), DomainError);
}

TEST_CASE("mode_measures invariants over [-1, 1]") {
  for (int i = -1000; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const auto m = mode_measures(x);
    CHECK(m.coe >= 0.0);
    CHECK(m.ee >= m.renyi2 - 1e-15);
    CHECK(m.renyi2 >= -1e-15);
    CHECK(mode_measures(-x).coe == Approx(m.coe).epsilon(1e-14));
    if (std::abs(x) < 1.0) CHECK(m.coe == Approx(u_form_capacity(x)).epsilon(1e-12).scale(1e-3));
  }
  // Near-pure modes keep full relative accuracy.
  const double x = 1.0 - 1e-12;
  const double l = std::log((2.0 - 1e-12) / 1e-12);
  CHECK(mode_capacity(x) == Approx(0.25 * 1e-12 * (2.0 - 1e-12) * l * l).epsilon(1e-3));
}

TEST_CASE("density_rho anchors and normalization") {
  for (double x : {0.0, 0.3, 0.99, 1.0}) CHECK(density_rho(x, {2, 1}) == Approx(1.0).epsilon(1e-14));
  CHECK(density_rho(1.0, {6, 2}) == 0.0);
  for (auto [v, va] : {std::pair{4, 2}, {10, 3}, {20, 10}}) {
    const Bipartition bp(v, va);
    const double norm =
        quadrature::integrate_1d([&](double x) { return density_rho(x, bp); }, 0.0, 1.0, 1e-12).value;
    CHECK(norm == Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(density_rho(1.1, {4, 2}), DomainError);
  CHECK_THROWS_AS(density_rho(-0.1, {4, 2}), DomainError);
  CHECK_THROWS_AS(density_rho(0.5, {4, 3}), DomainError);
}

TEST_CASE("kernel diagonal equals V_A times the density") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto [v, va] : {std::pair{8, 3}, {20, 10}, {31, 7}}) {
    const Bipartition bp(v, va);
    for (int i = 0; i < 100; ++i) {
      const double x = u(rng);
      CHECK(std::abs(kernel(x, x, bp) - va * density_rho(x, bp)) <= 1e-10 * std::max(1.0, kernel(x, x, bp)));
    }
    const double trace =
        quadrature::integrate_1d([&](double x) { return kernel(x, x, bp); }, 0.0, 1.0, 1e-12).value;
    CHECK(trace == Approx(va).epsilon(1e-10));
  }
  CHECK_THROWS_AS(kernel(0.2, 1.5, {8, 3}), DomainError);
}

TEST_CASE("kernel basis is orthonormal and the kernel reproduces") {
  const Bipartition bp(8, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double g = quadrature::integrate_1d(
                           [&](double x) {
                             const auto t = kernel_basis(x, bp);
                             return t[i] * t[j];
                           },
                           0.0, 1.0, 1e-13)
                           .value;
      CHECK(g == Approx(i == j ? 1.0 : 0.0).epsilon(1e-11).scale(1.0));
    }
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 10; ++n) {
    const double x = u(rng);
    const double z = u(rng);
    const double lhs = quadrature::integrate_1d(
                           [&](double y) { return kernel(x, y, bp) * kernel(y, z, bp); }, 0.0, 1.0, 1e-12)
                           .value;
    CHECK(std::abs(lhs - kernel(x, z, bp)) < 1e-8);
  }
}

TEST_CASE("avg_coe_exact anchors") {
  const double v2 = (kPi * kPi / 6.0 - 1.0) / 3.0;
  CHECK(std::abs(avg_coe_exact({2, 1}) - v2) < 1e-10);
  CHECK(std::abs(avg_coe_exact({2, 1}) - 0.2149780222827) < 1e-12);
  CHECK(avg_coe_exact({30, 15}) / 15.0 < kPi * kPi / 8.0 - 1.0);
  for (int k = 1; k <= 5; ++k) {
    CHECK(std::abs(avg_coe_exact({10, k}) - avg_coe_oracle({10, k})) < 1e-8);
  }
}

TEST_CASE("avg_coe_exact agrees with the quadrature route for V <= 20") {
  for (int v = 2; v <= 20; ++v) {
    for (int va = 1; 2 * va <= v; ++va) {
      const Bipartition bp(v, va);
      const double e = avg_coe_exact(bp);
      CHECK(e > 0.0);
      CHECK(std::abs(e - avg_coe_oracle(bp)) <= 1e-8);
    }
  }
}

TEST_CASE("avg_coe_exact complement symmetry and precision control") {
  CHECK(avg_coe_exact({11, 8}) == avg_coe_exact({11, 3}));
  CHECK(avg_coe_exact({10, 10}) == Approx(0.0).scale(1.0));
  CHECK(std::abs(avg_coe_exact({40, 20}, 1024) - avg_coe_exact({40, 20})) < 1e-13);
  CHECK_THROWS_AS(avg_coe_exact({40, 20}, 64), PrecisionError);
  CHECK_THROWS_AS(avg_coe_exact({10, 5}, 32), DomainError);
  // Large systems stay finite and below the thermodynamic limit.
  const double big = avg_coe_exact({200, 100}) / 100.0;
  CHECK(big < kPi * kPi / 8.0 - 1.0);
  CHECK(big > 0.2);
}

TEST_CASE("avg_coe_oracle cross-route examples") {
  CHECK(avg_coe_oracle({2, 1}) == Approx(0.2149780222827).epsilon(1e-11));
  CHECK(std::abs(avg_coe_oracle({4, 1}) - avg_coe_exact({4, 1})) < 1e-9);
  CHECK(std::abs(avg_coe_oracle({20, 10}) - avg_coe_exact({20, 10})) < 1e-8);
  CHECK(avg_coe_oracle({9, 7}) == Approx(avg_coe_oracle({9, 2})).epsilon(1e-14));
}

TEST_CASE("variance_coe single mode") {
  auto c = [](double x) { return mode_capacity(x); };
  const double m1 = quadrature::integrate_1d(c, 0.0, 1.0, 1e-14).value;
  const double m2 = quadrature::integrate_1d([&](double x) { return c(x) * c(x); }, 0.0, 1.0, 1e-14).value;
  CHECK(variance_coe({2, 1}) == Approx(m2 - m1 * m1).epsilon(1e-11));
}

TEST_CASE("variance_coe Gram route matches the two-dimensional integral") {
  for (auto [v, va] : {std::pair{6, 2}, {9, 3}}) {
    const Bipartition bp(v, va);
    const double diag = quadrature::integrate_1d(
                            [&](double x) {
                              const double c = mode_capacity(x);
                              return c * c * kernel(x, x, bp);
                            },
                            0.0, 1.0, 1e-13)
                            .value;
    const double cross = quadrature::integrate_2d(
                             [&](double x, double y) {
                               const double k = kernel(x, y, bp);
                               return mode_capacity(x) * mode_capacity(y) * k * k;
                             },
                             0.0, 1.0, 0.0, 1.0, 1e-11)
                             .value;
    CHECK(std::abs(variance_coe(bp) - (diag - cross)) < 1e-9);
  }
}

TEST_CASE("variance_coe is non-negative") {
  for (int v = 2; v <= 24; v += 2) {
    for (int va = 1; 2 * va <= v; va += 2) CHECK(variance_coe({v, va}) >= -1e-9);
  }
}

TEST_CASE("variance_coe agrees with Haar Monte Carlo at (20, 5)") {
  const Bipartition bp(20, 5);
  const auto m = haar_moments(bp, 100'000, 77);
  CHECK(std::abs(m.variance - variance_coe(bp)) < 3.0 * m.variance_se);
  CHECK(std::abs(m.mean - avg_coe_exact(bp)) < 3.0 * m.mean_se);
}

TEST_CASE("haar_sample_spectrum basics") {
  for (std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
    const auto s = haar_sample_spectrum({6, 6}, seed);
    REQUIRE(s.eigenvalues.size() == 6);
    for (double x : s.eigenvalues) CHECK(x == Approx(1.0).epsilon(1e-10));
  }
  const auto a = haar_sample_spectrum({12, 4}, 31);
  const auto b = haar_sample_spectrum({12, 4}, 31);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvalues != haar_sample_spectrum({12, 4}, 32).eigenvalues);
  for (double x : a.eigenvalues) {
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
}

TEST_CASE("haar_sample_spectrum mean capacity at (10, 5)") {
  const Bipartition bp(10, 5);
  const auto m = haar_moments(bp, 20'000, 1000);
  CHECK(std::abs(m.mean - avg_coe_exact(bp)) < 3.0 * m.mean_se);
}

TEST_CASE("haar_sample_spectrum empirical CDF follows the density") {
  const Bipartition bp(40, 10);
  std::vector<double> xs;
  for (int i = 0; i < 10'000; ++i) {
    const auto s = haar_sample_spectrum(bp, 5000 + i);
    xs.insert(xs.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  }
  std::sort(xs.begin(), xs.end());
  // Reference CDF on a fine grid, then linear interpolation.
  const int grid = 4000;
  std::vector<double> cdf(grid + 1, 0.0);
  for (int i = 0; i < grid; ++i) {
    const double a = static_cast<double>(i) / grid;
    const double b = static_cast<double>(i + 1) / grid;
    cdf[i + 1] = cdf[i] + quadrature::integrate_1d([&](double x) { return density_rho(x, bp); }, a, b, 1e-13).value;
  }
  CHECK(cdf[grid] == Approx(1.0).epsilon(1e-9));
  double ks = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double pos = xs[i] * grid;
    const int k = std::min(static_cast<int>(pos), grid - 1);
    const double ref = cdf[k] + (pos - k) * (cdf[k + 1] - cdf[k]);
    ks = std::max({ks, std::abs(ref - i / n), std::abs(ref - (i + 1) / n)});
  }
  CHECK(ks < 0.02);
}

TEST_CASE("page_curve symmetry and shape") {
  const auto c10 = page_curve(10);
  REQUIRE(c10.f_grid.size() == 9);
  CHECK(c10.coe.front() == c10.coe.back());
  CHECK(c10.coe[0] == Approx(avg_coe_exact({10, 1}) / (10.0 * kLn2)));

  const auto c30 = page_curve(30);
  REQUIRE(c30.coe.size() == 29);
  for (std::size_t i = 0; i < c30.coe.size(); ++i) {
    const double f = c30.f_grid[i];
    CHECK(c30.coe[i] < f * syk2::coefficient(f) / kLn2);
  }
  auto second_difference = [&](std::size_t i) { return c30.coe[i + 1] - 2.0 * c30.coe[i] + c30.coe[i - 1]; };
  CHECK(second_difference(1) > 0.0);   // f = 2/30 ~ 0.07
  CHECK(second_difference(14) < 0.0);  // f = 1/2
  CHECK_THROWS_AS(page_curve(1), DomainError);
}

TEST_CASE("finite-size values lie below the thermodynamic coefficient") {
  for (int v : {10, 20, 30}) {
    for (double f : {0.1, 0.2, 0.3, 0.4, 0.5}) {
      const int va = static_cast<int>(std::lround(f * v));
      CHECK(avg_coe_exact({v, va}) / va < syk2::coefficient_series(f).value);
    }
  }
}
