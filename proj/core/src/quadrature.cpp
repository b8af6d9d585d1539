#include "coe/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>

#include "coe/errors.hpp"
#include "summation.hpp"

namespace coe::quadrature {

GaussLegendreRule gauss_legendre(std::size_t order) {
  GaussLegendreRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= order; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= order; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

const GaussLegendreRule& default_rule() {
  static const GaussLegendreRule rule = gauss_legendre(kRuleOrder);
  return rule;
}

namespace {

constexpr double kRoundoffFactor = 50.0 * std::numeric_limits<double>::epsilon();

struct Estimate {
  double value;
  double abs_value;
};

Estimate apply_rule(const Integrand1D& f, double a, double b) {
  const auto& rule = default_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  double sa = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(mid + half * rule.nodes[i]) * rule.weights[i];
    s += v;
    sa += std::abs(v);
  }
  return {s * half, sa * half};
}

struct Panel {
  double a;
  double b;
  Estimate left;
  Estimate right;
  double error;
  double value() const { return left.value + right.value; }
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const Integrand1D& f, double a, double b, const Estimate& coarse) {
  const double m = 0.5 * (a + b);
  Estimate l = apply_rule(f, a, m);
  Estimate r = apply_rule(f, m, b);
  return {a, b, l, r, std::abs(l.value + r.value - coarse.value)};
}

struct AdaptiveOutcome {
  std::vector<Panel> panels;
  std::size_t evaluations;
};

AdaptiveOutcome run_adaptive(const Integrand1D& f, double a, double b, double tol,
                             std::size_t max_panels) {
  if (!(a <= b)) throw DomainError("integrate_1d: requires a <= b");
  const std::size_t per_rule = default_rule().nodes.size();
  std::priority_queue<Panel> queue;
  const Estimate whole = apply_rule(f, a, b);
  queue.push(make_panel(f, a, b, whole));
  std::size_t evaluations = 3 * per_rule;
  double total_error = queue.top().error;
  double total_abs = queue.top().left.abs_value + queue.top().right.abs_value;

  while (true) {
    if (!std::isfinite(total_error)) {
      throw ConvergenceError("integrate_1d: non-finite integrand values");
    }
    if (total_error <= std::max(tol, kRoundoffFactor * total_abs)) break;
    if (queue.size() >= max_panels) {
      throw ConvergenceError("integrate_1d: panel budget of " + std::to_string(max_panels) +
                             " exhausted (error estimate " + std::to_string(total_error) + ")");
    }
    Panel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Panel l = make_panel(f, worst.a, m, worst.left);
    Panel r = make_panel(f, m, worst.b, worst.right);
    evaluations += 4 * per_rule;
    total_error += l.error + r.error - worst.error;
    total_abs += l.left.abs_value + l.right.abs_value + r.left.abs_value + r.right.abs_value -
                 worst.left.abs_value - worst.right.abs_value;
    queue.push(l);
    queue.push(r);
  }
  AdaptiveOutcome out{{}, evaluations};
  out.panels.reserve(queue.size());
  while (!queue.empty()) {
    out.panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(out.panels.begin(), out.panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  return out;
}

}  // namespace

QuadratureResult integrate_1d(const Integrand1D& f, double a, double b, double tol,
                              std::size_t max_panels) {
  if (a == b) return {0.0, 0.0, 0};
  const AdaptiveOutcome run = run_adaptive(f, a, b, tol, max_panels);
  detail::CompensatedSum value;
  double error = 0.0;
  for (const Panel& p : run.panels) {
    value.add(p.value());
    error += p.error;
  }
  return {value.value(), error, run.evaluations};
}

namespace {

struct VectorEstimate {
  std::vector<double> value;
  std::vector<double> abs_value;
};

VectorEstimate apply_rule_many(const VectorIntegrand& f, std::size_t dim, double a, double b,
                               std::vector<double>& scratch) {
  const auto& rule = default_rule();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  VectorEstimate est{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    f(mid + half * rule.nodes[i], scratch);
    for (std::size_t c = 0; c < dim; ++c) {
      const double v = scratch[c] * rule.weights[i] * half;
      est.value[c] += v;
      est.abs_value[c] += std::abs(v);
    }
  }
  return est;
}

struct VectorPanel {
  double a;
  double b;
  VectorEstimate left;
  VectorEstimate right;
  std::vector<double> errors;
  double worst;
  bool operator<(const VectorPanel& other) const { return worst < other.worst; }
};

VectorPanel make_vector_panel(const VectorIntegrand& f, std::size_t dim, double a, double b,
                              const VectorEstimate& coarse, std::vector<double>& scratch) {
  const double m = 0.5 * (a + b);
  VectorPanel p{a, b, apply_rule_many(f, dim, a, m, scratch), apply_rule_many(f, dim, m, b, scratch),
                std::vector<double>(dim), 0.0};
  for (std::size_t c = 0; c < dim; ++c) {
    p.errors[c] = std::abs(p.left.value[c] + p.right.value[c] - coarse.value[c]);
    p.worst = std::max(p.worst, p.errors[c]);
  }
  return p;
}

}  // namespace

VectorQuadratureResult integrate_1d_many(const VectorIntegrand& f, std::size_t dim, double a,
                                         double b, double tol, std::size_t max_panels) {
  if (!(a <= b)) throw DomainError("integrate_1d_many: requires a <= b");
  VectorQuadratureResult out{std::vector<double>(dim, 0.0), 0.0, 0};
  if (a == b || dim == 0) return out;
  std::vector<double> scratch(dim);
  const std::size_t per_rule = default_rule().nodes.size();
  std::priority_queue<VectorPanel> queue;
  queue.push(make_vector_panel(f, dim, a, b, apply_rule_many(f, dim, a, b, scratch), scratch));
  out.evaluations = 3 * per_rule;
  std::vector<double> total_error = queue.top().errors;
  std::vector<double> total_abs(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    total_abs[c] = queue.top().left.abs_value[c] + queue.top().right.abs_value[c];
  }

  auto accepted = [&] {
    for (std::size_t c = 0; c < dim; ++c) {
      if (!std::isfinite(total_error[c])) {
        throw ConvergenceError("integrate_1d_many: non-finite integrand values");
      }
      if (total_error[c] > std::max(tol, kRoundoffFactor * total_abs[c])) return false;
    }
    return true;
  };

  while (!accepted()) {
    if (queue.size() >= max_panels) {
      throw ConvergenceError("integrate_1d_many: panel budget of " + std::to_string(max_panels) +
                             " exhausted");
    }
    VectorPanel worst = queue.top();
    queue.pop();
    const double m = 0.5 * (worst.a + worst.b);
    VectorPanel l = make_vector_panel(f, dim, worst.a, m, worst.left, scratch);
    VectorPanel r = make_vector_panel(f, dim, m, worst.b, worst.right, scratch);
    out.evaluations += 4 * per_rule;
    for (std::size_t c = 0; c < dim; ++c) {
      total_error[c] += l.errors[c] + r.errors[c] - worst.errors[c];
      total_abs[c] += l.left.abs_value[c] + l.right.abs_value[c] + r.left.abs_value[c] +
                      r.right.abs_value[c] - worst.left.abs_value[c] - worst.right.abs_value[c];
    }
    queue.push(std::move(l));
    queue.push(std::move(r));
  }

  std::vector<VectorPanel> panels;
  panels.reserve(queue.size());
  while (!queue.empty()) {
    panels.push_back(queue.top());
    queue.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const VectorPanel& x, const VectorPanel& y) { return x.a < y.a; });
  std::vector<detail::CompensatedSum> sums(dim);
  std::vector<double> errors(dim, 0.0);
  for (const VectorPanel& p : panels) {
    for (std::size_t c = 0; c < dim; ++c) {
      sums[c].add(p.left.value[c] + p.right.value[c]);
      errors[c] += p.errors[c];
    }
  }
  for (std::size_t c = 0; c < dim; ++c) {
    out.values[c] = sums[c].value();
    out.error_estimate = std::max(out.error_estimate, errors[c]);
  }
  return out;
}

QuadratureResult integrate_sine_substituted(const Integrand1D& f, double lo, double hi, double tol,
                                            std::size_t max_panels) {
  if (!(lo <= hi)) throw DomainError("integrate_sine_substituted: requires lo <= hi");
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);
  const double half_pi = 0.5 * std::numbers::pi;
  return integrate_1d(
      [&](double theta) { return f(c + r * std::sin(theta)) * r * std::cos(theta); }, -half_pi,
      half_pi, tol, max_panels);
}

namespace {

struct Rect {
  double ax, bx, ay, by;
  std::array<Estimate, 4> quarters;  // (lo,lo) (hi,lo) (lo,hi) (hi,hi)
  double error;
  double value() const {
    return quarters[0].value + quarters[1].value + quarters[2].value + quarters[3].value;
  }
  double abs_value() const {
    return quarters[0].abs_value + quarters[1].abs_value + quarters[2].abs_value +
           quarters[3].abs_value;
  }
  bool operator<(const Rect& other) const { return error < other.error; }
};

Estimate apply_rule_2d(const Integrand2D& f, double ax, double bx, double ay, double by) {
  const auto& rule = default_rule();
  const double mx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  const double my = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  double s = 0.0;
  double sa = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = mx + hx * rule.nodes[i];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double v = f(x, my + hy * rule.nodes[j]) * rule.weights[i] * rule.weights[j];
      s += v;
      sa += std::abs(v);
    }
  }
  return {s * hx * hy, sa * hx * hy};
}

Rect make_rect(const Integrand2D& f, double ax, double bx, double ay, double by,
               const Estimate& coarse) {
  const double mx = 0.5 * (ax + bx);
  const double my = 0.5 * (ay + by);
  Rect r{ax, bx, ay, by,
         {apply_rule_2d(f, ax, mx, ay, my), apply_rule_2d(f, mx, bx, ay, my),
          apply_rule_2d(f, ax, mx, my, by), apply_rule_2d(f, mx, bx, my, by)},
         0.0};
  r.error = std::abs(r.value() - coarse.value);
  return r;
}

}  // namespace

QuadratureResult integrate_2d(const Integrand2D& f, double ax, double bx, double ay, double by,
                              double tol, std::size_t max_panels) {
  if (!(ax <= bx) || !(ay <= by)) throw DomainError("integrate_2d: requires ax <= bx, ay <= by");
  if (ax == bx || ay == by) return {0.0, 0.0, 0};
  const std::size_t per_rule = default_rule().nodes.size() * default_rule().nodes.size();
  std::priority_queue<Rect> queue;
  queue.push(make_rect(f, ax, bx, ay, by, apply_rule_2d(f, ax, bx, ay, by)));
  std::size_t evaluations = 5 * per_rule;
  double total_error = queue.top().error;
  double total_abs = queue.top().abs_value();

  while (true) {
    if (!std::isfinite(total_error)) {
      throw ConvergenceError("integrate_2d: non-finite integrand values");
    }
    if (total_error <= std::max(tol, kRoundoffFactor * total_abs)) break;
    if (queue.size() + 3 > max_panels) {
      throw ConvergenceError("integrate_2d: panel budget of " + std::to_string(max_panels) +
                             " exhausted (error estimate " + std::to_string(total_error) + ")");
    }
    Rect worst = queue.top();
    queue.pop();
    const double mx = 0.5 * (worst.ax + worst.bx);
    const double my = 0.5 * (worst.ay + worst.by);
    const std::array<Rect, 4> children{
        make_rect(f, worst.ax, mx, worst.ay, my, worst.quarters[0]),
        make_rect(f, mx, worst.bx, worst.ay, my, worst.quarters[1]),
        make_rect(f, worst.ax, mx, my, worst.by, worst.quarters[2]),
        make_rect(f, mx, worst.bx, my, worst.by, worst.quarters[3])};
    evaluations += 16 * per_rule;
    total_error -= worst.error;
    total_abs -= worst.abs_value();
    for (const Rect& c : children) {
      total_error += c.error;
      total_abs += c.abs_value();
      queue.push(c);
    }
  }
  detail::CompensatedSum value;
  double error = 0.0;
  while (!queue.empty()) {
    value.add(queue.top().value());
    error += queue.top().error;
    queue.pop();
  }
  return {value.value(), error, evaluations};
}

}  // namespace coe::quadrature
