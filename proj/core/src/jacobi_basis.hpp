#pragma once

#include <span>
#include <vector>

#include "coe/gaussian.hpp"

namespace coe::gaussian::detail {

// theta_j(x) = (1-x^2)^(delta/2) P_{2j}^(delta,delta)(x) / sqrt(c_j), j < V_A,
// with the normalization constants c_j computed once.
class JacobiBasis {
 public:
  explicit JacobiBasis(const Bipartition& bp);

  int size() const noexcept { return modes_; }
  int delta() const noexcept { return delta_; }

  // out.size() must be at least size().
  void evaluate(double x, std::span<double> out) const;

  double diagonal(double x) const;

 private:
  int modes_;
  int delta_;
  std::vector<double> log_norm_;  // -0.5 * ln c_j
  mutable std::vector<double> poly_scratch_;
};

}  // namespace coe::gaussian::detail
