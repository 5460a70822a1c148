#include "maxmin/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "maxmin/functional.hpp"
#include "maxmin/isotonic.hpp"
#include "maxmin/quadrature.hpp"

namespace maxmin {

namespace {

// Pointwise data of the revenue integrand A g^2 - 2 H g + (H + xH') and the
// constraint weight w, where the constraint reads sum w (1 - g) dx = target.
struct PointwiseProblem {
  Eigen::VectorXd x;
  Eigen::VectorXd h;
  Eigen::VectorXd quad;  // A = H - xH'
  Eigen::VectorXd base;  // H + xH'
  Eigen::VectorXd weight;
  double dx{0.0};

  Eigen::VectorXd argmin(double lambda) const {
    Eigen::VectorXd g(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const double slope = -2.0 * h[k] + lambda * weight[k];
      const double scale = std::max(1.0, std::abs(h[k]));
      if (quad[k] > 1e-14 * scale) {
        g[k] = std::clamp(-slope / (2.0 * quad[k]), 0.0, 1.0);
      } else {
        g[k] = slope < 0.0 ? 1.0 : 0.0;
      }
    }
    return g;
  }

  double constraint(const Eigen::VectorXd& g) const {
    CompensatedSum<double> s;
    for (Eigen::Index k = 0; k < g.size(); ++k) s += weight[k] * (1.0 - g[k]) * dx;
    return s.value();
  }

  double revenue(const Eigen::VectorXd& g) const {
    CompensatedSum<double> s;
    for (Eigen::Index k = 0; k < g.size(); ++k) s += ((quad[k] * g[k] - 2.0 * h[k]) * g[k] + base[k]) * dx;
    return s.value();
  }
};

Eigen::VectorXd midpoint_grid(int k, const std::vector<double>& avoid) {
  Eigen::VectorXd x(k);
  const double dx = 1.0 / k;
  for (int i = 0; i < k; ++i) {
    x[i] = (i + 0.5) * dx;
    for (double p : avoid) {
      if (std::abs(x[i] - p) < 1e-12) x[i] = p + 1e-9 * dx;
    }
  }
  return x;
}

}  // namespace

double GridDistribution::mean() const {
  CompensatedSum<double> s;
  for (Eigen::Index k = 0; k < values.size(); ++k) s += (1.0 - values[k]) * spacing();
  return s.value();
}

double GridDistribution::second_moment() const {
  CompensatedSum<double> s;
  for (Eigen::Index k = 0; k < values.size(); ++k) s += 2.0 * knots[k] * (1.0 - values[k]) * spacing();
  return s.value();
}

Cdf GridDistribution::to_cdf() const {
  const Eigen::Index n = knots.size();
  Eigen::VectorXd x(n + 1), f(n + 1), atoms = Eigen::VectorXd::Zero(n + 1);
  x.head(n) = knots;
  f.head(n) = values;
  x[n] = 1.0;
  f[n] = 1.0;
  atoms[n] = 1.0 - (n > 0 ? values[n - 1] : 0.0);
  return Cdf::grid(std::move(x), std::move(f), std::move(atoms));
}

AdversaryResult minimize_revenue(const Cdf& reserve, const AdversaryOptions& options) {
  if (options.grid_size < 100) throw DomainError("adversary grid needs at least 100 points");
  if (!reserve.has_density_on_open_support()) throw DomainError("reserve distribution must have a density on (0, 1]");
  if (!(options.target > 0.0 && options.target < 1.0)) {
    throw DomainError(detail::describe("constraint target must lie in (0, 1)", options.target));
  }

  PointwiseProblem p;
  const int k = options.grid_size;
  p.x = midpoint_grid(k, reserve.breakpoints());
  p.dx = 1.0 / k;
  p.h.resize(k);
  p.quad.resize(k);
  p.base.resize(k);
  p.weight.resize(k);
  for (int i = 0; i < k; ++i) {
    const double x = p.x[i];
    const double h = reserve(x);
    const double xdh = x * reserve.density(x);
    p.h[i] = h;
    p.quad[i] = h - xdh;
    p.base[i] = h + xdh;
    p.weight[i] = options.constraint == MomentConstraint::Mean ? 1.0 : 2.0 * x;
    if (p.quad[i] < -1e-12 * std::max(1.0, std::abs(h))) {
      throw DegenerateError(detail::describe("H - xH' is negative, pointwise problem is not convex at x", x));
    }
  }

  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < k; ++i) hi = std::max(hi, 2.0 * p.h[i] / p.weight[i]);
  hi = hi * (1.0 + 1e-12) + 1e-12;
  Eigen::VectorXd g_lo = p.argmin(lo);
  Eigen::VectorXd g_hi = p.argmin(hi);
  double c_lo = p.constraint(g_lo);
  double c_hi = p.constraint(g_hi);
  if (c_lo > options.target + options.tol_mean || c_hi < options.target - options.tol_mean) {
    throw ConvergenceError("multiplier bracket does not straddle the constraint target");
  }
  for (int it = 0; it < options.bisection_steps; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    Eigen::VectorXd g = p.argmin(mid);
    const double c = p.constraint(g);
    if (c < options.target) {
      lo = mid;
      g_lo = std::move(g);
      c_lo = c;
    } else {
      hi = mid;
      g_hi = std::move(g);
      c_hi = c;
    }
  }

  // Mix the bracket ends so the constraint holds exactly. The constraint is
  // affine in g, so the mixture hits the target.
  const double theta = c_hi > c_lo ? std::clamp((c_hi - options.target) / (c_hi - c_lo), 0.0, 1.0) : 1.0;
  const Eigen::VectorXd mixed = theta * g_lo + (1.0 - theta) * g_hi;
  Eigen::VectorXd projected = isotonic_projection(mixed).cwiseMax(0.0).cwiseMin(1.0);

  AdversaryResult result;
  result.projection_change = (projected - mixed).cwiseAbs().maxCoeff();
  result.minimizer = {p.x, std::move(projected)};
  result.lambda_hat = 0.5 * (lo + hi);
  result.value = p.revenue(result.minimizer.values);
  result.constraint_residual = p.constraint(result.minimizer.values) - options.target;
  if (std::abs(result.constraint_residual) > options.tol_mean) {
    throw ConvergenceError(detail::describe("moment constraint residual above tolerance", result.constraint_residual));
  }

  const Eigen::VectorXd g_star = p.argmin(result.lambda_hat);
  CompensatedSum<double> dual;
  for (int i = 0; i < k; ++i) {
    const double g = g_star[i];
    dual += (((p.quad[i] * g - 2.0 * p.h[i]) * g + p.base[i]) - result.lambda_hat * p.weight[i] * (1.0 - g)) * p.dx;
  }
  dual += result.lambda_hat * options.target;
  result.dual_bound = dual.value();
  return result;
}

AdversaryResult minimize_revenue(const Cdf& reserve, const ModelParams<double>& params, int grid_size) {
  AdversaryOptions options;
  options.grid_size = grid_size;
  options.constraint = MomentConstraint::Mean;
  options.target = params.mu;
  return minimize_revenue(reserve, options);
}

SaddleReport verify_pointwise_saddle(const SolvedConstants<double>& c, int grid_size) {
  if (grid_size < 100) throw DomainError("saddle check needs at least 100 grid points");
  SaddleReport report;
  const Eigen::VectorXd xs = midpoint_grid(grid_size, {c.a});
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double g = lagrangian_quadratic(x, c).argmin_on_unit();
    const double dev = std::abs(g - signal_cdf(c, x));
    ++report.points;
    if (dev > report.max_deviation) {
      report.max_deviation = dev;
      report.worst_x = x;
    }
  }
  return report;
}

ReserveConditionReport check_p1_p2(const Cdf& alternative, const SolvedConstants<double>& c, int grid_size) {
  ReserveConditionReport report;
  report.p2_worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid_size; ++i) {
    const double x = std::min(1.0, c.a + (1.0 - c.a) * i / grid_size);
    report.p1_worst = std::max(report.p1_worst, std::abs(alternative(x) - reserve_cdf(c, x)));
  }
  for (int i = 0; i < grid_size; ++i) {
    const double x = c.a * (i + 0.5) / grid_size;
    const double v = alternative(x) - x * alternative.density(x);
    if (v < report.p2_worst) {
      report.p2_worst = v;
      report.p2_worst_x = x;
    }
  }
  report.p1 = report.p1_worst <= 1e-9;
  report.p2 = report.p2_worst >= -1e-12;
  return report;
}

}  // namespace maxmin
