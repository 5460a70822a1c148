#pragma once

#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace maxmin::lp {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// minimize cost' x  subject to  G x <= h,  E x = d,  x free.
struct Problem {
  Eigen::VectorXd cost;
  SparseMatrix inequalities;
  Eigen::VectorXd upper;
  SparseMatrix equalities;
  Eigen::VectorXd rhs;
};

enum class Status { Optimal, IterationLimit, NumericalFailure };

std::string to_string(Status status);

struct Options {
  double feasibility_tol{1e-9};
  double gap_tol{1e-9};
  int max_iterations{200};
  /// Initial diagonal shift of G' D G, raised by factors of 100 (up to
  /// 1e-4) when a factorisation fails.
  double regularization{1e-10};
};

struct Solution {
  Status status{Status::NumericalFailure};
  Eigen::VectorXd x;
  Eigen::VectorXd slack;
  Eigen::VectorXd inequality_dual;
  Eigen::VectorXd equality_dual;
  double objective{0.0};
  double dual_objective{0.0};
  double primal_residual{0.0};
  double dual_residual{0.0};
  int iterations{0};
};

/// Mehrotra predictor-corrector interior-point method. The Newton system is
/// the reduced KKT form [G' D G, E'; E, 0] with D = diag(z / s): a sparse
/// LDL' of the shifted G' D G and a dense Schur complement for the
/// equalities. Suited to problems with few equality rows.
Solution solve(const Problem& problem, const Options& options = {});

}  // namespace maxmin::lp
