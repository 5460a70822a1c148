#include "maxmin/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "maxmin/auction.hpp"

namespace maxmin {

SecondMomentSolution second_moment_solution(const SecondMomentParams& p) {
  if (!(p.delta > 0.0 && p.delta < 1.0)) {
    throw DomainError(detail::describe("second moment must lie in (0, 1)", p.delta));
  }
  const double a = 1.0 - std::sqrt(1.0 - p.delta);
  return {a, Cdf::uniform(), Cdf::equal_revenue(a), p.delta};
}

double uniform_reserve_interim_revenue(double s1, double s2) {
  return RandomReserveAuction(Cdf::uniform()).outcome({s1, s2}).revenue();
}

MpsReport mps_check(const Cdf& prior, const SolvedConstants<double>& c, int grid, double tol_mean) {
  if (grid < 1) throw DomainError("MPS check needs a positive grid size");
  const double prior_mean = prior.mean();
  if (std::abs(prior_mean - c.mu) > tol_mean) {
    throw MeanMismatchError(detail::describe("prior mean differs from the model mean; prior mean", prior_mean));
  }

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid) + 8);
  for (int i = 0; i <= grid; ++i) xs.push_back(static_cast<double>(i) / grid);
  xs.push_back(c.a);
  for (double b : prior.breakpoints()) {
    if (b >= 0.0 && b <= 1.0) xs.push_back(b);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  MpsReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  double lowest = std::numeric_limits<double>::infinity();
  for (double x : xs) {
    const double diff = equal_revenue_integral(c.a, x) - prior.integral(x);
    if (diff > report.max_violation) {
      report.max_violation = diff;
      report.worst_x = x;
    }
    if (x >= c.a && diff < lowest) {
      lowest = diff;
      report.pivot_x = x;
    }
  }
  report.points = static_cast<int>(xs.size());
  report.endpoint_gap = std::abs(prior.integral(1.0) - equal_revenue_integral(c.a, 1.0));
  report.passed = report.max_violation <= c.tol_quad && report.endpoint_gap <= c.tol_quad;
  return report;
}

Cdf three_point_prior(double b) {
  if (!(b >= 0.0 && b <= 0.5)) throw DomainError(detail::describe("three-point weight must lie in [0, 1/2]", b));
  return Cdf::grid(Eigen::Vector3d(0.0, 0.5, 1.0), Eigen::Vector3d(b, 1.0 - b, 1.0),
                   Eigen::Vector3d(b, 1.0 - 2.0 * b, b));
}

}  // namespace maxmin
