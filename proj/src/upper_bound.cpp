#include "maxmin/upper_bound.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxmin/auction.hpp"
#include "maxmin/distribution.hpp"

namespace maxmin {

namespace {

// Type function on [0, 1], continuous at the kink z = 1 - a.
double type_at(double a, double z) { return z < 1.0 - a ? a / (1.0 - z) : 1.0; }

double positive(double v) { return v > 0.0 ? v : 0.0; }

double bic_violation_of(const Eigen::VectorXd& types, const Eigen::VectorXd& q, const Eigen::VectorXd& t) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < types.size(); ++j) {
    const double truthful = types[j] * q[j] - t[j];
    for (Eigen::Index k = 0; k < types.size(); ++k) {
      worst = std::max(worst, positive(types[j] * q[k] - t[k] - truthful));
    }
  }
  return worst;
}

// Variable layout of the LP: q1 (n*n), q2 (n*n), Q1 (n), Q2 (n), T1 (n), T2 (n).
struct Layout {
  Eigen::Index n;
  Eigen::Index q(int bidder, Eigen::Index j, Eigen::Index k) const { return bidder * n * n + j * n + k; }
  Eigen::Index interim_q(int bidder, Eigen::Index j) const { return 2 * n * n + bidder * n + j; }
  Eigen::Index interim_t(int bidder, Eigen::Index j) const { return 2 * n * n + 2 * n + bidder * n + j; }
  Eigen::Index size() const { return 2 * n * n + 4 * n; }
};

}  // namespace

Eigen::VectorXd DiscreteDirectMechanism::interim_allocation(int bidder) const {
  return bidder == 0 ? Eigen::VectorXd(q1.rowwise().mean()) : Eigen::VectorXd(q2.colwise().mean().transpose());
}

Eigen::VectorXd DiscreteDirectMechanism::interim_payment(int bidder) const {
  return bidder == 0 ? Eigen::VectorXd(t1.rowwise().mean()) : Eigen::VectorXd(t2.colwise().mean().transpose());
}

double DiscreteDirectMechanism::expected_revenue() const { return (t1 + t2).mean(); }

double DiscreteDirectMechanism::bic_violation() const {
  return std::max(bic_violation_of(types, interim_allocation(0), interim_payment(0)),
                  bic_violation_of(types, interim_allocation(1), interim_payment(1)));
}

double DiscreteDirectMechanism::bir_violation() const {
  double worst = 0.0;
  for (int bidder = 0; bidder < 2; ++bidder) {
    const Eigen::VectorXd q = interim_allocation(bidder);
    const Eigen::VectorXd t = interim_payment(bidder);
    worst = std::max(worst, (t - types.cwiseProduct(q)).maxCoeff());
  }
  return positive(worst);
}

double DiscreteDirectMechanism::feasibility_violation() const {
  const double total = (q1 + q2).maxCoeff() - 1.0;
  const double below = -std::min(q1.minCoeff(), q2.minCoeff());
  const double above = std::max(q1.maxCoeff(), q2.maxCoeff()) - 1.0;
  return positive(std::max({total, below, above}));
}

Eigen::VectorXd quantile_types(const SolvedConstants<double>& c, Eigen::Index n) {
  Eigen::VectorXd s(n);
  for (Eigen::Index j = 0; j < n; ++j) s[j] = signal_quantile(c, (static_cast<double>(j) + 0.5) / n);
  return s;
}

UpperBoundResult lp_max_revenue(const SolvedConstants<double>& c, Eigen::Index n, BicPairs pairs,
                                const lp::Options& options) {
  if (n < 10) throw DomainError("upper-bound LP needs at least 10 quantiles");
  const Layout lay{n};
  const Eigen::VectorXd s = quantile_types(c, n);
  const double inv_n = 1.0 / static_cast<double>(n);

  lp::Problem problem;
  problem.cost = Eigen::VectorXd::Zero(lay.size());
  for (int bidder = 0; bidder < 2; ++bidder) {
    for (Eigen::Index j = 0; j < n; ++j) problem.cost[lay.interim_t(bidder, j)] = -inv_n;
  }

  std::vector<Eigen::Triplet<double>> eq;
  for (Eigen::Index j = 0; j < n; ++j) {
    eq.emplace_back(j, lay.interim_q(0, j), 1.0);
    eq.emplace_back(n + j, lay.interim_q(1, j), 1.0);
    for (Eigen::Index k = 0; k < n; ++k) {
      eq.emplace_back(j, lay.q(0, j, k), -inv_n);
      eq.emplace_back(n + j, lay.q(1, k, j), -inv_n);
    }
  }
  // Types sharing a value (the atom at 1) must get equal utility. Opposing
  // BIC inequalities would say the same thing but leave the feasible set
  // without an interior, which stalls the interior-point method.
  Eigen::Index eq_rows = 2 * n;
  for (int bidder = 0; bidder < 2; ++bidder) {
    for (Eigen::Index j = 0; j + 1 < n; ++j) {
      if (s[j] != s[j + 1]) continue;
      eq.emplace_back(eq_rows, lay.interim_q(bidder, j), s[j]);
      eq.emplace_back(eq_rows, lay.interim_t(bidder, j), -1.0);
      eq.emplace_back(eq_rows, lay.interim_q(bidder, j + 1), -s[j]);
      eq.emplace_back(eq_rows, lay.interim_t(bidder, j + 1), 1.0);
      ++eq_rows;
    }
  }
  problem.equalities.resize(eq_rows, lay.size());
  problem.equalities.setFromTriplets(eq.begin(), eq.end());
  problem.rhs = Eigen::VectorXd::Zero(eq_rows);

  std::vector<Eigen::Triplet<double>> ineq;
  std::vector<double> upper;
  auto row = [&]() { return static_cast<Eigen::Index>(upper.size()); };
  for (int bidder = 0; bidder < 2; ++bidder) {
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (s[k] == s[j]) continue;
        if (pairs == BicPairs::Adjacent && std::abs(k - j) != 1) continue;
        // s_j Q(k) - T(k) <= s_j Q(j) - T(j)
        const Eigen::Index r = row();
        ineq.emplace_back(r, lay.interim_q(bidder, j), -s[j]);
        ineq.emplace_back(r, lay.interim_t(bidder, j), 1.0);
        ineq.emplace_back(r, lay.interim_q(bidder, k), s[j]);
        ineq.emplace_back(r, lay.interim_t(bidder, k), -1.0);
        upper.push_back(0.0);
      }
      const Eigen::Index r = row();
      ineq.emplace_back(r, lay.interim_q(bidder, j), -s[j]);
      ineq.emplace_back(r, lay.interim_t(bidder, j), 1.0);
      upper.push_back(0.0);
    }
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index r = row();
      ineq.emplace_back(r, lay.q(0, j, k), 1.0);
      ineq.emplace_back(r, lay.q(1, j, k), 1.0);
      upper.push_back(1.0);
      for (int bidder = 0; bidder < 2; ++bidder) {
        ineq.emplace_back(row(), lay.q(bidder, j, k), -1.0);
        upper.push_back(0.0);
      }
    }
  }
  problem.inequalities.resize(row(), lay.size());
  problem.inequalities.setFromTriplets(ineq.begin(), ineq.end());
  problem.upper = Eigen::Map<const Eigen::VectorXd>(upper.data(), static_cast<Eigen::Index>(upper.size()));

  const lp::Solution sol = lp::solve(problem, options);
  if (sol.status != lp::Status::Optimal) {
    throw ConvergenceError("upper-bound LP did not reach optimality: " + lp::to_string(sol.status));
  }

  UpperBoundResult result;
  result.status = sol.status;
  result.iterations = sol.iterations;
  DiscreteDirectMechanism& mech = result.mechanism;
  mech.quantiles = Eigen::VectorXd::LinSpaced(n, 0.5 * inv_n, 1.0 - 0.5 * inv_n);
  mech.types = s;
  mech.q1.resize(n, n);
  mech.q2.resize(n, n);
  mech.t1.resize(n, n);
  mech.t2.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      mech.q1(j, k) = sol.x[lay.q(0, j, k)];
      mech.q2(j, k) = sol.x[lay.q(1, j, k)];
      // Payments only matter through their interim means; charge the
      // interim payment ex post.
      mech.t1(j, k) = sol.x[lay.interim_t(0, j)];
      mech.t2(j, k) = sol.x[lay.interim_t(1, k)];
    }
  }
  result.value = -sol.objective;
  return result;
}

double analytic_bound(const SolvedConstants<double>& c) { return 2.0 * c.a - c.a * c.a; }

Eigen::VectorXd envelope_payments(const Eigen::VectorXd& interim_allocation, const SolvedConstants<double>& c) {
  const Eigen::Index n = interim_allocation.size();
  for (Eigen::Index j = 1; j < n; ++j) {
    if (interim_allocation[j] < interim_allocation[j - 1] - 1e-12) {
      throw MonotonicityError(detail::describe("interim allocation must be nondecreasing; drop at quantile index",
                                               static_cast<double>(j)));
    }
  }
  Eigen::VectorXd payments(n);
  double rent_before_cell = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double lo = static_cast<double>(j) / n;
    const double mid = (static_cast<double>(j) + 0.5) / n;
    const double hi = static_cast<double>(j + 1) / n;
    const double q = interim_allocation[j];
    const double rent = rent_before_cell + q * (type_at(c.a, mid) - type_at(c.a, lo));
    payments[j] = type_at(c.a, mid) * q - rent;
    rent_before_cell += q * (type_at(c.a, hi) - type_at(c.a, lo));
  }
  return payments;
}

DiscreteDirectMechanism discretize_reserve_auction(const SolvedConstants<double>& c, Eigen::Index n) {
  const RandomReserveAuction auction(Cdf::reserve(c), c.tol_quad);
  DiscreteDirectMechanism mech;
  mech.quantiles = Eigen::VectorXd::LinSpaced(n, 0.5 / n, 1.0 - 0.5 / n);
  mech.types = quantile_types(c, n);
  mech.q1.resize(n, n);
  mech.q2.resize(n, n);
  mech.t1.resize(n, n);
  mech.t2.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Outcome o = auction.outcome({mech.types[j], mech.types[k]});
      mech.q1(j, k) = o.q1;
      mech.q2(j, k) = o.q2;
      mech.t1(j, k) = o.t1;
      mech.t2(j, k) = o.t2;
    }
  }
  return mech;
}

}  // namespace maxmin
