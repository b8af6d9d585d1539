#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "coe/curve.hpp"

namespace coe::syk2 {

/// Dense complex Hermitian matrix. Construction checks Hermiticity.
class HermitianMatrix {
 public:
  /// Throws DomainError if `m` is not square or deviates from its adjoint
  /// by more than 1e-14 relative to its largest entry.
  explicit HermitianMatrix(Eigen::MatrixXcd m);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  std::complex<double> operator()(int i, int j) const { return m_(i, j); }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }

 private:
  Eigen::MatrixXcd m_;
};

struct EigenSystem {
  Eigen::VectorXd energies;  // ascending
  Eigen::MatrixXcd modes;    // column a is the eigenvector of energies(a)
};

/// +1 for a filled single-particle level, -1 for an empty one.
struct Occupation {
  std::vector<int> signs;
};

struct EnsembleStats {
  double mean = 0.0;
  double variance = 0.0;  // per-sample, unbiased
  double std_error = 0.0;
  std::size_t n_realizations = 0;
  std::size_t n_states = 0;
  std::uint64_t seed = 0;
};

struct EnsembleResult {
  EnsembleStats coe;
  EnsembleStats ee;
  EnsembleStats renyi2;
};

struct DeficitPoint {
  int total = 0;  // V
  double deficit = 0.0;
};

/// Least-squares fit deficit = a0 / V^2 + a1.
struct DeficitFit {
  std::vector<double> deficits;
  double a0 = 0.0;
  double a1 = 0.0;
};

/// GUE matrix: off-diagonal real and imaginary parts with variance 1/V,
/// real diagonal with variance 2/V.
HermitianMatrix sample_gue(int total, std::uint64_t rng_seed);

/// Ascending spectral decomposition. Throws ConvergenceError if the solver fails.
EigenSystem eigh(const HermitianMatrix& m);

/// Throws DomainError for half_filled with odd V.
Occupation sample_occupation(int total, bool half_filled, std::uint64_t rng_seed);

/// J_ij = sum_p N_p conj(U_ip) U_jp restricted to the first V_A sites.
HermitianMatrix correlation_matrix(const EigenSystem& es, const Occupation& occ, int subsystem);

/// Mode measures summed over the spectrum of J. Eigenvalues are clamped into
/// [-1, 1] within 1e-10; anything further out throws DomainError.
ModeMeasures eigenstate_measures(const HermitianMatrix& j);

/// Same, from the eigenvalues directly.
ModeMeasures spectrum_measures(std::span<const double> eigenvalues);

/// Per realization: one GUE draw and diagonalization, then n_states sampled
/// eigenstates. Streams are keyed by (seed, realization, state), and the
/// reduction runs in realization order, so the result does not depend on
/// `threads`.
EnsembleResult ensemble_average(int total, int subsystem, std::size_t n_realizations,
                                std::size_t n_states, bool half_filled, std::uint64_t rng_seed,
                                unsigned threads = 1);

/// Deficits |s(f) - mean/V_A| with V_A = round(f V), then the 1/V^2 fit.
/// Throws DomainError for fewer than three points or repeated V.
DeficitFit deficit_and_fit(std::span<const std::pair<int, EnsembleStats>> points, double f);

/// Fit of already computed deficits.
DeficitFit fit_deficits(std::span<const DeficitPoint> points);

}  // namespace coe::syk2
