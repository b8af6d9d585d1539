#pragma once

#include <vector>

namespace coe {

/// Per-f coefficient values on a grid. Optional columns are empty when absent.
struct CoefficientCurve {
  std::vector<double> f_grid;
  std::vector<double> coe;
  std::vector<double> ee;
  std::vector<double> renyi2;
  std::vector<double> errors;
};

/// Per-mode entanglement measures, or their sums over modes.
struct ModeMeasures {
  double coe = 0.0;     // capacity of entanglement
  double ee = 0.0;      // entanglement entropy
  double renyi2 = 0.0;  // second Renyi entropy
};

}  // namespace coe
