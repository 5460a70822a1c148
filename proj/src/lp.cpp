#include "maxmin/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/LU>

#include "maxmin/errors.hpp"

namespace maxmin::lp {

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::IterationLimit:
      return "iteration-limit";
    case Status::NumericalFailure:
      return "numerical-failure";
  }
  return "unknown";
}

namespace {

double inf_norm(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
  double alpha = 1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (dv[i] < 0.0) alpha = std::min(alpha, -v[i] / dv[i]);
  }
  return alpha;
}

// Newton system [M, E'; E, 0] with M = G' D G. M is factorised on its own
// (shifted by reg to stay definite) and the few equality rows are handled
// through the dense Schur complement E M^-1 E'. Iterative refinement against
// the unshifted system removes the bias of the shift.
class NewtonSystem {
 public:
  NewtonSystem(const SparseMatrix& g, const SparseMatrix& e) : g_(g), e_(e), n_(g.cols()), p_(e.rows()) {}

  bool factorize(const Eigen::VectorXd& d, double reg) {
    m_exact_ = g_.transpose() * d.asDiagonal() * g_;
    SparseMatrix shifted = m_exact_;
    for (Eigen::Index i = 0; i < n_; ++i) shifted.coeffRef(i, i) += reg;
    if (!analyzed_) {
      llt_.analyzePattern(shifted);
      analyzed_ = true;
    }
    llt_.factorize(shifted);
    if (llt_.info() != Eigen::Success) return false;
    if (p_ == 0) return true;

    const Eigen::MatrixXd et = Eigen::MatrixXd(e_.transpose());
    m_inv_et_ = llt_.solve(et);
    if (!m_inv_et_.allFinite()) return false;
    Eigen::MatrixXd schur = e_ * m_inv_et_;
    schur.diagonal().array() += reg;
    schur_.compute(schur);
    return schur_.rank() == p_;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd sol = raw_solve(rhs);
    for (int i = 0; i < 3; ++i) sol += raw_solve(rhs - apply_exact(sol));
    return sol;
  }

 private:
  Eigen::VectorXd apply_exact(const Eigen::VectorXd& v) const {
    Eigen::VectorXd out(n_ + p_);
    out.head(n_) = m_exact_ * v.head(n_);
    if (p_ > 0) {
      out.head(n_) += e_.transpose() * v.tail(p_);
      out.tail(p_) = e_ * v.head(n_);
    }
    return out;
  }

  Eigen::VectorXd raw_solve(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd out(n_ + p_);
    const Eigen::VectorXd m_inv_r = llt_.solve(Eigen::VectorXd(rhs.head(n_)));
    if (p_ == 0) {
      out = m_inv_r;
      return out;
    }
    const Eigen::VectorXd dy = schur_.solve(Eigen::VectorXd(e_ * m_inv_r - rhs.tail(p_)));
    out.head(n_) = m_inv_r - m_inv_et_ * dy;
    out.tail(p_) = dy;
    return out;
  }

  const SparseMatrix& g_;
  const SparseMatrix& e_;
  Eigen::Index n_;
  Eigen::Index p_;
  SparseMatrix m_exact_;
  Eigen::SimplicialLDLT<SparseMatrix, Eigen::Lower, Eigen::AMDOrdering<int>> llt_;
  bool analyzed_{false};
  Eigen::MatrixXd m_inv_et_;
  Eigen::FullPivLU<Eigen::MatrixXd> schur_;
};

}  // namespace

Solution solve(const Problem& problem, const Options& options) {
  const SparseMatrix& g = problem.inequalities;
  const SparseMatrix& e = problem.equalities;
  const Eigen::Index n = problem.cost.size();
  const Eigen::Index m = g.rows();
  const Eigen::Index p = e.rows();
  if (g.cols() != n || problem.upper.size() != m || (p > 0 && e.cols() != n) || problem.rhs.size() != p) {
    throw DomainError("LP dimensions are inconsistent");
  }

  Solution sol;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd s = problem.upper.cwiseAbs().cwiseMax(1.0);
  Eigen::VectorXd z = Eigen::VectorXd::Ones(m);

  const double scale_h = 1.0 + std::max(inf_norm(problem.upper), inf_norm(problem.rhs));
  const double scale_c = 1.0 + inf_norm(problem.cost);
  const SparseMatrix e_op = p > 0 ? e : SparseMatrix(0, n);
  NewtonSystem newton(g, e_op);

  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd r_dual = problem.cost + g.transpose() * z + (p > 0 ? Eigen::VectorXd(e.transpose() * y)
                                                                             : Eigen::VectorXd::Zero(n));
    const Eigen::VectorXd r_ineq = g * x + s - problem.upper;
    const Eigen::VectorXd r_eq = p > 0 ? Eigen::VectorXd(e * x - problem.rhs) : Eigen::VectorXd();
    const double mu = m > 0 ? s.dot(z) / static_cast<double>(m) : 0.0;

    sol.objective = problem.cost.dot(x);
    sol.dual_objective = -problem.upper.dot(z) - (p > 0 ? problem.rhs.dot(y) : 0.0);
    sol.primal_residual = std::max(inf_norm(r_ineq), inf_norm(r_eq)) / scale_h;
    sol.dual_residual = inf_norm(r_dual) / scale_c;
    sol.iterations = it;
    const double gap = std::abs(sol.objective - sol.dual_objective) / (1.0 + std::abs(sol.objective));
    if (sol.primal_residual <= options.feasibility_tol && sol.dual_residual <= options.feasibility_tol &&
        gap <= options.gap_tol) {
      sol.status = Status::Optimal;
      break;
    }
    if (it == options.max_iterations) {
      sol.status = Status::IterationLimit;
      break;
    }

    const Eigen::VectorXd d = z.cwiseQuotient(s);

    // Solves for (dx, dy, dz, ds) given the complementarity target r_comp.
    auto direction = [&](const Eigen::VectorXd& r_comp, Eigen::VectorXd& dx, Eigen::VectorXd& dy, Eigen::VectorXd& dz,
                         Eigen::VectorXd& ds) {
      const Eigen::VectorXd comp_over_s = r_comp.cwiseQuotient(s);
      Eigen::VectorXd rhs(n + p);
      rhs.head(n) = -r_dual - g.transpose() * (d.cwiseProduct(r_ineq) - comp_over_s);
      if (p > 0) rhs.tail(p) = -r_eq;
      const Eigen::VectorXd sol_xy = newton.solve(rhs);
      dx = sol_xy.head(n);
      dy = sol_xy.tail(p);
      const Eigen::VectorXd gdx = g * dx;
      dz = d.cwiseProduct(gdx + r_ineq) - comp_over_s;
      ds = -r_ineq - gdx;
      return sol_xy.allFinite();
    };

    // Near the optimum D spans many orders of magnitude and a tiny shift is
    // swamped; escalate it and let refinement against the exact system
    // recover the direction.
    Eigen::VectorXd dx, dy, dz, ds;
    bool stepped = false;
    for (double reg = options.regularization; reg <= 1e-4 && !stepped; reg *= 100.0) {
      if (!newton.factorize(d, reg)) continue;
      if (!direction(s.cwiseProduct(z), dx, dy, dz, ds)) continue;
      const double alpha_p_aff = max_step(s, ds);
      const double alpha_d_aff = max_step(z, dz);
      const double mu_aff =
          (s + alpha_p_aff * ds).dot(z + alpha_d_aff * dz) / static_cast<double>(std::max<Eigen::Index>(m, 1));
      const double sigma = std::pow(std::clamp(mu_aff / mu, 0.0, 1.0), 3);
      const Eigen::VectorXd r_comp =
          s.cwiseProduct(z) + ds.cwiseProduct(dz) - Eigen::VectorXd::Constant(m, sigma * mu);
      stepped = direction(r_comp, dx, dy, dz, ds);
    }
    if (!stepped) {
      sol.status = Status::NumericalFailure;
      break;
    }

    constexpr double kFraction = 0.995;
    const double alpha_p = std::min(1.0, kFraction * max_step(s, ds));
    const double alpha_d = std::min(1.0, kFraction * max_step(z, dz));
    x += alpha_p * dx;
    s += alpha_p * ds;
    z += alpha_d * dz;
    if (p > 0) y += alpha_d * dy;
    if (!x.allFinite() || !z.allFinite()) {
      sol.status = Status::NumericalFailure;
      break;
    }
  }

  sol.x = std::move(x);
  sol.slack = std::move(s);
  sol.inequality_dual = std::move(z);
  sol.equality_dual = std::move(y);
  return sol;
}

}  // namespace maxmin::lp
