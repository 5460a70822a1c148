#pragma once

#include <Eigen/Core>

#include "maxmin/constants.hpp"
#include "maxmin/lp.hpp"

namespace maxmin {

/// Direct mechanism on the quantile grid z_j = (j + 1/2)/n, type values
/// s(z_j) from the equal-revenue quantile function. Matrices are indexed
/// (bidder 1 quantile, bidder 2 quantile).
struct DiscreteDirectMechanism {
  Eigen::VectorXd quantiles;
  Eigen::VectorXd types;
  Eigen::MatrixXd q1, q2, t1, t2;

  Eigen::Index size() const { return quantiles.size(); }
  /// Interim allocation Q_i and payment T_i, bidder index 0 or 1.
  Eigen::VectorXd interim_allocation(int bidder) const;
  Eigen::VectorXd interim_payment(int bidder) const;
  double expected_revenue() const;

  /// Largest violation of Bayesian incentive compatibility over all
  /// ordered type pairs and both bidders (0 when satisfied).
  double bic_violation() const;
  double bir_violation() const;
  double feasibility_violation() const;
};

/// Equal-revenue type values on the midpoint quantile grid.
Eigen::VectorXd quantile_types(const SolvedConstants<double>& c, Eigen::Index n);

enum class BicPairs { All, Adjacent };

struct UpperBoundResult {
  double value{0.0};
  DiscreteDirectMechanism mechanism;
  lp::Status status{lp::Status::NumericalFailure};
  int iterations{0};
};

/// Revenue-maximising BIC/BIR direct mechanism against the equal-revenue
/// signal distribution, discretised on n quantiles. Symmetry is not imposed.
/// Throws ConvergenceError when the LP solver does not reach optimality.
UpperBoundResult lp_max_revenue(const SolvedConstants<double>& c, Eigen::Index n, BicPairs pairs = BicPairs::All,
                                const lp::Options& options = {});

/// 2a(1 - a) + a^2.
double analytic_bound(const SolvedConstants<double>& c);

/// Payments T(z) = s(z) Q(z) - U(z) with U(0) = 0 and U the envelope
/// integral of Q against the type function. Q is read as piecewise constant
/// on the quantile cells, for which the envelope integral is exact.
/// Throws MonotonicityError when Q decreases.
Eigen::VectorXd envelope_payments(const Eigen::VectorXd& interim_allocation, const SolvedConstants<double>& c);

/// The optimal-reserve auction restricted to the quantile grid with
/// truthful reports.
DiscreteDirectMechanism discretize_reserve_auction(const SolvedConstants<double>& c, Eigen::Index n);

}  // namespace maxmin
