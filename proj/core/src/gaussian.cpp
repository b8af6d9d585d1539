#include "coe/gaussian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "coe/errors.hpp"
#include "coe/quadrature.hpp"
#include "coe/random.hpp"
#include "coe/specfun.hpp"
#include "jacobi_basis.hpp"

namespace coe::gaussian {

Bipartition::Bipartition(int total, int subsystem) : total_(total), subsystem_(subsystem) {
  if (total < 1 || subsystem < 1 || subsystem > total) {
    throw DomainError("Bipartition: need 1 <= V_A <= V, got V=" + std::to_string(total) +
                      ", V_A=" + std::to_string(subsystem));
  }
}

Bipartition Bipartition::reduced() const {
  return delta() >= 0 ? *this : Bipartition(total_, total_ - subsystem_);
}

namespace {

// ln((1+x)/(1-x)) without cancellation near x = 0.
double log_ratio(double x) { return std::log1p(x) - std::log1p(-x); }

double entropy_term(double p) { return p > 0.0 ? -p * std::log(p) : 0.0; }

void check_mode(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("mode_measures: |x| must not exceed 1, got " + std::to_string(x));
  }
}

}  // namespace

double mode_capacity(double x) {
  check_mode(x);
  if (std::abs(x) == 1.0) return 0.0;
  const double l = log_ratio(x);
  return 0.25 * (1.0 - x) * (1.0 + x) * l * l;
}

ModeMeasures mode_measures(double x) {
  const double coe = mode_capacity(x);
  const double p = 0.5 * (1.0 + x);
  const double q = 0.5 * (1.0 - x);
  return {coe, entropy_term(p) + entropy_term(q), -std::log(p * p + q * q)};
}

namespace detail {

JacobiBasis::JacobiBasis(const Bipartition& bp)
    : modes_(bp.subsystem()), delta_(bp.delta()), poly_scratch_(2 * bp.subsystem() - 1) {
  if (delta_ < 0) {
    throw DomainError("density: requires V_A <= V/2 (delta >= 0)");
  }
  using specfun::log_gamma;
  const double d = delta_;
  log_norm_.resize(modes_);
  for (int j = 0; j < modes_; ++j) {
    const double k2 = 2.0 * j;
    const double log_c = 2.0 * d * std::numbers::ln2 + 2.0 * log_gamma(k2 + d + 1.0) -
                         log_gamma(k2 + 1.0) - log_gamma(k2 + 2.0 * d + 1.0) -
                         std::log(2.0 * k2 + 2.0 * d + 1.0);
    log_norm_[j] = -0.5 * log_c;
  }
}

void JacobiBasis::evaluate(double x, std::span<double> out) const {
  const double d = delta_;
  specfun::jacobi_p_all(poly_scratch_.size() - 1, d, d, x, poly_scratch_);
  const double one_minus_x2 = (1.0 - x) * (1.0 + x);
  double log_weight = 0.0;
  bool zero_weight = false;
  if (delta_ > 0) {
    if (one_minus_x2 <= 0.0) {
      zero_weight = true;
    } else {
      log_weight = 0.5 * d * std::log(one_minus_x2);
    }
  }
  for (int j = 0; j < modes_; ++j) {
    out[j] = zero_weight ? 0.0 : std::exp(log_weight + log_norm_[j]) * poly_scratch_[2 * j];
  }
}

double JacobiBasis::diagonal(double x) const {
  std::vector<double> theta(modes_);
  evaluate(x, theta);
  double k = 0.0;
  for (double t : theta) k += t * t;
  return k;
}

}  // namespace detail

namespace {

void check_unit_interval(double x, const char* who) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(who) + ": argument must lie in [0, 1], got " + std::to_string(x));
  }
}

}  // namespace

std::vector<double> kernel_basis(double x, const Bipartition& bp) {
  check_unit_interval(x, "kernel_basis");
  detail::JacobiBasis basis(bp);
  std::vector<double> out(basis.size());
  basis.evaluate(x, out);
  return out;
}

double density_rho(double x, const Bipartition& bp) {
  check_unit_interval(x, "density_rho");
  return detail::JacobiBasis(bp).diagonal(x) / bp.subsystem();
}

double kernel(double x1, double x2, const Bipartition& bp) {
  check_unit_interval(x1, "kernel");
  check_unit_interval(x2, "kernel");
  detail::JacobiBasis basis(bp);
  std::vector<double> t1(basis.size());
  std::vector<double> t2(basis.size());
  basis.evaluate(x1, t1);
  basis.evaluate(x2, t2);
  double k = 0.0;
  for (int j = 0; j < basis.size(); ++j) k += t1[j] * t2[j];
  return k;
}

double avg_coe_oracle(const Bipartition& bp) {
  if (bp.subsystem() == bp.total()) return 0.0;
  const Bipartition r = bp.reduced();
  detail::JacobiBasis basis(r);
  const double tol = 1e-13 * r.subsystem();
  return quadrature::integrate_1d(
             [&](double x) { return mode_capacity(x) * basis.diagonal(x); }, 0.0, 1.0, tol)
      .value;
}

double variance_coe(const Bipartition& bp) {
  // The double integral factorizes through the Gram matrix
  //   M_ij = int c(x) theta_i(x) theta_j(x) dx,
  // since int int c(x) c(y) K(x,y)^2 = sum_ij M_ij^2.
  if (bp.subsystem() == bp.total()) return 0.0;
  const Bipartition r = bp.reduced();
  detail::JacobiBasis basis(r);
  const int n = basis.size();
  const std::size_t pairs = static_cast<std::size_t>(n) * (n + 1) / 2;
  std::vector<double> theta(n);
  auto integrand = [&](double x, std::span<double> out) {
    basis.evaluate(x, theta);
    const double c = mode_capacity(x);
    double k = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i) {
      k += theta[i] * theta[i];
      for (int j = i; j < n; ++j) out[idx++] = c * theta[i] * theta[j];
    }
    out[pairs] = c * c * k;
  };
  const auto res = quadrature::integrate_1d_many(integrand, pairs + 1, 0.0, 1.0, 1e-13);
  double gram = 0.0;
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double m = res.values[idx++];
      gram += (i == j ? 1.0 : 2.0) * m * m;
    }
  }
  return res.values[pairs] - gram;
}

SpectrumSample haar_sample_spectrum(const Bipartition& bp, std::uint64_t rng_seed) {
  const int n = 2 * bp.total();
  const int na = 2 * bp.subsystem();
  auto rng = make_stream(rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd w = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) w.col(i) *= -1.0;
  }
  Eigen::MatrixXd j0 = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < bp.total(); ++k) {
    j0(2 * k, 2 * k + 1) = 1.0;
    j0(2 * k + 1, 2 * k) = -1.0;
  }
  // Only the subsystem block of W J0 W^T is needed.
  const Eigen::MatrixXd wa = w.topRows(na);
  const Eigen::MatrixXd ja = wa * j0 * wa.transpose();
  // -J_A^2 is symmetric with eigenvalues x_j^2, each twice.
  const Eigen::MatrixXd sq = ja.transpose() * ja;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sq, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  SpectrumSample out;
  out.eigenvalues.resize(bp.subsystem());
  for (int k = 0; k < bp.subsystem(); ++k) {
    const double pair_mean = 0.5 * (ev(2 * k) + ev(2 * k + 1));
    out.eigenvalues[k] = std::sqrt(std::clamp(pair_mean, 0.0, 1.0));
  }
  return out;
}

double spectrum_capacity(const SpectrumSample& sample) {
  double c = 0.0;
  for (double x : sample.eigenvalues) c += mode_capacity(x);
  return c;
}

CoefficientCurve page_curve(int total, int precision_bits) {
  if (total < 2) throw DomainError("page_curve: need V >= 2");
  CoefficientCurve curve;
  for (int va = 1; va < total; ++va) {
    const Bipartition bp(total, va);
    const int bits = precision_bits > 0 ? precision_bits : default_precision_bits(bp);
    curve.f_grid.push_back(bp.fraction());
    curve.coe.push_back(avg_coe_exact(bp, bits) / (total * std::numbers::ln2));
  }
  return curve;
}

}  // namespace coe::gaussian
