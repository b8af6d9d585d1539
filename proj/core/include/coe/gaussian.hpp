#pragma once

#include <cstdint>
#include <vector>

#include "coe/curve.hpp"

namespace coe::gaussian {

/// System of V fermionic modes split into a subsystem of V_A modes and its
/// complement.
class Bipartition {
 public:
  /// Throws DomainError unless 1 <= subsystem <= total.
  Bipartition(int total, int subsystem);

  int total() const noexcept { return total_; }
  int subsystem() const noexcept { return subsystem_; }
  double fraction() const noexcept { return static_cast<double>(subsystem_) / total_; }
  /// V - 2 V_A; the density formulas need it non-negative.
  int delta() const noexcept { return total_ - 2 * subsystem_; }
  /// The same split seen from the smaller side (V_A <= V/2).
  Bipartition reduced() const;

 private:
  int total_;
  int subsystem_;
};

/// Non-negative imaginary parts x_j of the eigenvalue pairs +-i x_j of the
/// restricted complex structure; one entry per subsystem mode.
struct SpectrumSample {
  std::vector<double> eigenvalues;
};

/// Capacity, entanglement entropy and second Renyi entropy of one mode with
/// restricted eigenvalue x in [-1, 1].
ModeMeasures mode_measures(double x);

/// Capacity c(x) alone; the hot path of every integral.
double mode_capacity(double x);

/// One-point density of |x| on [0, 1]; requires delta() >= 0.
double density_rho(double x, const Bipartition& bp);

/// Christoffel-Darboux projection kernel of the weighted even Jacobi system;
/// kernel(x, x) = V_A * density_rho(x).
double kernel(double x1, double x2, const Bipartition& bp);

/// theta_j(x) for j = 0..V_A-1, orthonormal on [0, 1].
std::vector<double> kernel_basis(double x, const Bipartition& bp);

/// Default working precision for the exact finite series.
int default_precision_bits(const Bipartition& bp);

/// Average eigenstate capacity as a finite triple sum, evaluated in
/// `precision_bits`-bit floating point. Subsystems larger than half are mapped
/// to their complement. Throws PrecisionError when cancellation would eat
/// more than precision_bits - 40 bits.
double avg_coe_exact(const Bipartition& bp, int precision_bits);
double avg_coe_exact(const Bipartition& bp);

/// Same quantity as V_A * integral of c(x) rho(x) over [0, 1] by quadrature.
double avg_coe_oracle(const Bipartition& bp);

/// Variance of the capacity over the Gaussian ensemble:
///   int c^2 K(x,x) - int int c(x) c(y) K(x,y)^2.
double variance_coe(const Bipartition& bp);

/// Draws one Haar-random Gaussian state and returns its restricted spectrum.
SpectrumSample haar_sample_spectrum(const Bipartition& bp, std::uint64_t rng_seed);

/// Sum of mode capacities of a spectrum.
double spectrum_capacity(const SpectrumSample& sample);

/// <C_A> / (V ln 2) for V_A = 1..V-1.
CoefficientCurve page_curve(int total, int precision_bits = 0);

}  // namespace coe::gaussian
