#include "coe/syk2_numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "coe/errors.hpp"
#include "coe/gaussian.hpp"
#include "coe/random.hpp"
#include "coe/syk2_analytic.hpp"

namespace coe::syk2 {

namespace {

constexpr double kClampTolerance = 1e-10;

// Running mean and sum of squared deviations (Welford); merged with Chan's rule.
struct Moments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    n += 1.0;
    const double d = x - mean;
    mean += d / n;
    m2 += d * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0.0) return;
    const double total = n + o.n;
    const double d = o.mean - mean;
    mean += d * o.n / total;
    m2 += o.m2 + d * d * n * o.n / total;
    n = total;
  }
};

struct RealizationMoments {
  Moments coe;
  Moments ee;
  Moments renyi2;
};

EnsembleStats finish(const Moments& m, std::size_t realizations, std::size_t states,
                     std::uint64_t seed) {
  EnsembleStats s;
  s.mean = m.mean;
  s.variance = m.n > 1.0 ? m.m2 / (m.n - 1.0) : 0.0;
  s.std_error = std::sqrt(s.variance / m.n);
  s.n_realizations = realizations;
  s.n_states = states;
  s.seed = seed;
  return s;
}

void require_positive_total(int total, const char* who) {
  if (total < 1) throw DomainError(std::string(who) + ": V must be positive");
}

}  // namespace

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw DomainError("HermitianMatrix: matrix must be square and non-empty");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= 1e-14 * scale)) {
    throw DomainError("HermitianMatrix: deviation from adjoint " + std::to_string(asym));
  }
}

HermitianMatrix sample_gue(int total, std::uint64_t rng_seed) {
  require_positive_total(total, "sample_gue");
  auto rng = make_stream(rng_seed);
  std::normal_distribution<double> off(0.0, std::sqrt(1.0 / total));
  std::normal_distribution<double> diag(0.0, std::sqrt(2.0 / total));
  Eigen::MatrixXcd m(total, total);
  for (int i = 0; i < total; ++i) {
    m(i, i) = diag(rng);
    for (int j = i + 1; j < total; ++j) {
      const double re = off(rng);
      const double im = off(rng);
      m(i, j) = {re, im};
      m(j, i) = {re, -im};
    }
  }
  return HermitianMatrix(std::move(m));
}

EigenSystem eigh(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m.matrix());
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigh: eigensolver did not converge");
  }
  return {es.eigenvalues(), es.eigenvectors()};
}

Occupation sample_occupation(int total, bool half_filled, std::uint64_t rng_seed) {
  require_positive_total(total, "sample_occupation");
  auto rng = make_stream(rng_seed);
  Occupation occ;
  occ.signs.resize(total);
  if (half_filled) {
    if (total % 2 != 0) {
      throw DomainError("sample_occupation: half filling needs even V, got " +
                        std::to_string(total));
    }
    std::fill(occ.signs.begin(), occ.signs.begin() + total / 2, 1);
    std::fill(occ.signs.begin() + total / 2, occ.signs.end(), -1);
    std::shuffle(occ.signs.begin(), occ.signs.end(), rng);
  } else {
    std::bernoulli_distribution coin(0.5);
    for (int& s : occ.signs) s = coin(rng) ? 1 : -1;
  }
  return occ;
}

HermitianMatrix correlation_matrix(const EigenSystem& es, const Occupation& occ, int subsystem) {
  const auto total = es.modes.rows();
  if (subsystem < 1 || subsystem > total) {
    throw DomainError("correlation_matrix: need 1 <= V_A <= V");
  }
  if (static_cast<Eigen::Index>(occ.signs.size()) != es.modes.cols()) {
    throw DomainError("correlation_matrix: occupation length does not match the mode count");
  }
  Eigen::VectorXd n(occ.signs.size());
  for (std::size_t p = 0; p < occ.signs.size(); ++p) n(p) = occ.signs[p];
  // Entry (i, j) is one length-V dot product, so it does not depend on V_A
  // and nested subsystems give bit-identical blocks.
  const Eigen::MatrixXcd ut = es.modes.topRows(subsystem).transpose();
  const Eigen::MatrixXcd weighted = n.asDiagonal() * ut;
  Eigen::MatrixXcd j(subsystem, subsystem);
  for (int c = 0; c < subsystem; ++c) {
    j(c, c) = ut.col(c).dot(weighted.col(c)).real();
    for (int r = c + 1; r < subsystem; ++r) {
      j(c, r) = ut.col(c).dot(weighted.col(r));
      j(r, c) = std::conj(j(c, r));
    }
  }
  return HermitianMatrix(std::move(j));
}

ModeMeasures spectrum_measures(std::span<const double> eigenvalues) {
  ModeMeasures total;
  for (double lambda : eigenvalues) {
    if (std::abs(lambda) > 1.0 + kClampTolerance || std::isnan(lambda)) {
      throw DomainError("eigenstate_measures: eigenvalue " + std::to_string(lambda) +
                        " outside [-1, 1]");
    }
    const auto m = gaussian::mode_measures(std::clamp(lambda, -1.0, 1.0));
    total.coe += m.coe;
    total.ee += m.ee;
    total.renyi2 += m.renyi2;
  }
  return total;
}

ModeMeasures eigenstate_measures(const HermitianMatrix& j) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(j.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("eigenstate_measures: eigensolver did not converge");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  return spectrum_measures({ev.data(), static_cast<std::size_t>(ev.size())});
}

EnsembleResult ensemble_average(int total, int subsystem, std::size_t n_realizations,
                                std::size_t n_states, bool half_filled, std::uint64_t rng_seed,
                                unsigned threads) {
  require_positive_total(total, "ensemble_average");
  if (subsystem < 1 || subsystem > total) {
    throw DomainError("ensemble_average: need 1 <= V_A <= V");
  }
  if (n_realizations == 0 || n_states == 0) {
    throw DomainError("ensemble_average: realization and state counts must be positive");
  }
  if (half_filled && total % 2 != 0) {
    throw DomainError("ensemble_average: half filling needs even V");
  }

  std::vector<RealizationMoments> per_realization(n_realizations);
  auto run_one = [&](std::size_t r) {
    const auto es = eigh(sample_gue(total, stream_key(rng_seed, r, 0)));
    const Eigen::MatrixXcd ua_conj = es.modes.topRows(subsystem).conjugate();
    const Eigen::MatrixXcd ua_t = es.modes.topRows(subsystem).transpose();
    Eigen::VectorXd n(total);
    Eigen::MatrixXcd j(subsystem, subsystem);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(subsystem);
    RealizationMoments& out = per_realization[r];
    for (std::size_t s = 0; s < n_states; ++s) {
      const auto occ = sample_occupation(total, half_filled, stream_key(rng_seed, r, s + 1));
      for (int p = 0; p < total; ++p) n(p) = occ.signs[p];
      j.noalias() = ua_conj * n.asDiagonal() * ua_t;
      solver.compute(j, Eigen::EigenvaluesOnly);
      if (solver.info() != Eigen::Success) {
        throw ConvergenceError("ensemble_average: eigensolver did not converge");
      }
      const Eigen::VectorXd& ev = solver.eigenvalues();
      const auto m = spectrum_measures({ev.data(), static_cast<std::size_t>(ev.size())});
      out.coe.add(m.coe);
      out.ee.add(m.ee);
      out.renyi2.add(m.renyi2);
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_realizations)));
  if (workers == 1) {
    for (std::size_t r = 0; r < n_realizations; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t r = next++; r < n_realizations; r = next++) run_one(r);
        } catch (...) {
          errors[w] = std::current_exception();
          next = n_realizations;
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  RealizationMoments acc;
  for (const auto& r : per_realization) {
    acc.coe.merge(r.coe);
    acc.ee.merge(r.ee);
    acc.renyi2.merge(r.renyi2);
  }
  return {finish(acc.coe, n_realizations, n_states, rng_seed),
          finish(acc.ee, n_realizations, n_states, rng_seed),
          finish(acc.renyi2, n_realizations, n_states, rng_seed)};
}

DeficitFit fit_deficits(std::span<const DeficitPoint> points) {
  if (points.size() < 3) {
    throw DomainError("deficit fit: need at least three points, got " +
                      std::to_string(points.size()));
  }
  std::vector<int> totals;
  for (const auto& p : points) totals.push_back(p.total);
  std::sort(totals.begin(), totals.end());
  if (std::adjacent_find(totals.begin(), totals.end()) != totals.end() || totals.front() < 1) {
    throw DomainError("deficit fit: system sizes must be positive and distinct");
  }
  DeficitFit fit;
  const double count = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& p : points) {
    const double x = 1.0 / (static_cast<double>(p.total) * p.total);
    mx += x;
    my += p.deficit;
    fit.deficits.push_back(p.deficit);
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    const double dx = 1.0 / (static_cast<double>(p.total) * p.total) - mx;
    sxx += dx * dx;
    sxy += dx * (p.deficit - my);
  }
  fit.a0 = sxy / sxx;
  fit.a1 = my - fit.a0 * mx;
  return fit;
}

DeficitFit deficit_and_fit(std::span<const std::pair<int, EnsembleStats>> points, double f) {
  const double reference = coefficient(f);
  std::vector<DeficitPoint> deficits;
  for (const auto& [total, stats] : points) {
    const int subsystem = static_cast<int>(std::lround(f * total));
    if (subsystem < 1) throw DomainError("deficit_and_fit: f V rounds to zero modes");
    deficits.push_back({total, std::abs(reference - stats.mean / subsystem)});
  }
  return fit_deficits(deficits);
}

}  // namespace coe::syk2
