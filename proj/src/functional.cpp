#include "maxmin/functional.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxmin/quadrature.hpp"

namespace maxmin {

namespace {

std::vector<double> interior_points(const std::vector<double>& points) {
  std::vector<double> out;
  for (double p : points) {
    if (p > 0.0 && p < 1.0) out.push_back(p);
  }
  return out;
}

std::vector<double> functional_edges(const Cdf& signal, const Cdf& reserve, const FunctionalGrid& grid) {
  std::vector<double> breaks = interior_points(signal.breakpoints());
  const std::vector<double> reserve_breaks = interior_points(reserve.breakpoints());
  breaks.insert(breaks.end(), reserve_breaks.begin(), reserve_breaks.end());
  return panel_edges(0.0, 1.0, grid.uniform_panels, reserve_breaks, grid.refine_halfwidth, grid.refine_factor, breaks);
}

}  // namespace

FunctionalValue revenue_functional(const Cdf& signal, const Cdf& reserve, const FunctionalGrid& grid) {
  if (!reserve.has_density_on_open_support()) {
    throw DomainError("reserve distribution must have a density on (0, 1]");
  }
  const std::vector<double> edges = functional_edges(signal, reserve, grid);
  // Gauss nodes never touch panel edges, so atoms of the signal on an edge
  // enter only through left/right limits.
  const double first = composite_gauss(
      [&](double x) {
        const double g = signal(x);
        return (1.0 - g * g) * (x * reserve.density(x) + reserve(x));
      },
      edges);
  const double second = composite_gauss(
      [&](double x) {
        const double g = signal(x);
        return 2.0 * reserve(x) * g * (1.0 - g);
      },
      edges);
  if (!std::isfinite(first) || !std::isfinite(second)) {
    throw ConvergenceError("revenue functional quadrature produced a non-finite value");
  }
  return {first - second, first, second};
}

double Quadratic::argmin_on_unit() const {
  if (a2 > 0.0) return std::clamp(-a1 / (2.0 * a2), 0.0, 1.0);
  // Linear or concave: the minimum is at an endpoint.
  return a2 + a1 < 0.0 ? 1.0 : 0.0;
}

Quadratic lagrangian_quadratic(double x, const SolvedConstants<double>& c) {
  if (!(x > 0.0 && x < 1.0) || x == c.a) {
    throw DomainError(detail::describe("Lagrangian integrand is defined for x in (0, 1) away from a", x));
  }
  const double h = reserve_cdf(c, x);
  const double xdh = x * reserve_pdf(c, x);
  const double shift = (1.0 - c.a) / std::log(c.a);
  return {h - xdh, -2.0 * (h + shift), h + xdh + 2.0 * shift};
}

double lagrangian_integrand(double g, double x, const SolvedConstants<double>& c) {
  if (!(g >= 0.0 && g <= 1.0)) throw DomainError(detail::describe("CDF value must lie in [0, 1]", g));
  const Quadratic q = lagrangian_quadratic(x, c);
  return (q.a2 * g + q.a1) * g + q.a0;
}

double lagrangian_functional(const Cdf& signal, const SolvedConstants<double>& c, const FunctionalGrid& grid) {
  const Cdf reserve = Cdf::reserve(c);
  const std::vector<double> edges = functional_edges(signal, reserve, grid);
  return composite_gauss([&](double x) { return lagrangian_integrand(signal(x), x, c); }, edges);
}

double check_ode(const SolvedConstants<double>& c, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw DomainError(detail::describe("ODE check needs x in (0, 1]", x));
  const double h = x == 1.0 ? 1.0 : reserve_cdf(c, x);
  return std::abs((x - c.a) * reserve_pdf(c, x) + (c.a / x) * h - 0.5 * c.lambda);
}

}  // namespace maxmin
