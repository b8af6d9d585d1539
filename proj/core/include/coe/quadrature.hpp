#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace coe::quadrature {

inline constexpr std::size_t kRuleOrder = 15;
inline constexpr std::size_t kDefaultPanelBudget = 10'000;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute
  std::size_t evaluations = 0;
};

using Integrand1D = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Nodes and weights of the fixed-order Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (Newton iteration on P_n).
GaussLegendreRule gauss_legendre(std::size_t order);

/// The cached order-15 rule used by the adaptive integrators.
const GaussLegendreRule& default_rule();

/// Adaptive panel bisection with a 15-point Gauss-Legendre rule per panel.
/// The panel with the largest error estimate is refined first.
/// Throws ConvergenceError once `max_panels` is exceeded.
QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, double tol,
                              std::size_t max_panels = kDefaultPanelBudget);

/// Tensor-product adaptive rule on [ax,bx] x [ay,by]; rectangles split in four.
QuadratureResult integrate_2d(const Integrand2D& f, double ax, double bx, double ay, double by,
                              double tol, std::size_t max_panels = kDefaultPanelBudget);

/// Integral over [lo, hi] of an integrand with square-root behaviour at both
/// edges, via u = c + r sin(theta). `f` is evaluated at u; the Jacobian
/// r cos(theta) is applied internally.
QuadratureResult integrate_sine_substituted(const Integrand1D& f, double lo, double hi, double tol,
                                            std::size_t max_panels = kDefaultPanelBudget);

/// Integrand writing `out.size()` components at x.
using VectorIntegrand = std::function<void(double, std::span<double>)>;

struct VectorQuadratureResult {
  std::vector<double> values;
  double error_estimate = 0.0;  // largest per-component estimate
  std::size_t evaluations = 0;
};

/// Adaptive integration of several integrands over one shared partition;
/// a panel is refined while any component's estimate is too large.
VectorQuadratureResult integrate_1d_many(const VectorIntegrand& f, std::size_t components, double a,
                                         double b, double tol,
                                         std::size_t max_panels = kDefaultPanelBudget);

}  // namespace coe::quadrature
