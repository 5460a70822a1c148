#pragma once

#include <Eigen/Core>

#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"

namespace maxmin {

/// Signal CDF values on the panel midpoints x_k = (k + 1/2)/K.
struct GridDistribution {
  Eigen::VectorXd knots;
  Eigen::VectorXd values;

  double spacing() const { return 1.0 / static_cast<double>(knots.size()); }
  /// Sum of (1 - G_k) dx.
  double mean() const;
  double second_moment() const;
  /// Grid CDF on the same knots closed off with the remaining mass as an
  /// atom at 1.
  Cdf to_cdf() const;
};

/// Which moment of the signal distribution Nature must respect.
enum class MomentConstraint { Mean, SecondMoment };

struct AdversaryOptions {
  int grid_size{500};
  MomentConstraint constraint{MomentConstraint::Mean};
  /// Target of the constraint: the mean, or the second moment.
  double target{0.5};
  double tol_mean{1e-9};
  int bisection_steps{100};
};

struct AdversaryResult {
  GridDistribution minimizer;
  /// Discretised revenue functional at the minimizer.
  double value{0.0};
  double lambda_hat{0.0};
  /// Constraint residual after the final mixing step.
  double constraint_residual{0.0};
  /// Lagrangian lower bound min_G L(G, H, lambda_hat) + lambda_hat * target.
  double dual_bound{0.0};
  /// Largest change the isotonic projection made to the pointwise minimizer.
  double projection_change{0.0};
};

/// Nature's problem on a midpoint grid: minimise the truth-telling revenue
/// against `reserve` over signal CDFs meeting the moment constraint.
///
/// For a multiplier the pointwise minimiser of the Lagrangian integrand is
/// a clamped quadratic argmin; the multiplier is bisected until the
/// constraint binds and the last bracket is mixed to meet it exactly.
/// Throws DegenerateError when some quadratic coefficient H - xH' is
/// negative, ConvergenceError when the multiplier bracket does not straddle
/// the target.
AdversaryResult minimize_revenue(const Cdf& reserve, const AdversaryOptions& options);

AdversaryResult minimize_revenue(const Cdf& reserve, const ModelParams<double>& params, int grid_size);

struct SaddleReport {
  double max_deviation{0.0};
  double worst_x{0.0};
  int points{0};
};

/// Compares the clamped argmin of the Lagrangian integrand with the
/// equal-revenue CDF on the midpoint grid.
SaddleReport verify_pointwise_saddle(const SolvedConstants<double>& c, int grid_size);

struct ReserveConditionReport {
  bool p1{false};
  bool p2{false};
  /// sup |H* - H| over [a, 1].
  double p1_worst{0.0};
  /// min of H* - x H*' over (0, a).
  double p2_worst{0.0};
  double p2_worst_x{0.0};
  bool passed() const { return p1 && p2; }
};

/// Checks an alternative reserve against the two sufficient conditions:
/// it coincides with the optimal reserve on [a, 1] and H* - x H*' >= 0 on (0, a).
ReserveConditionReport check_p1_p2(const Cdf& alternative, const SolvedConstants<double>& c, int grid_size = 10'000);

}  // namespace maxmin
