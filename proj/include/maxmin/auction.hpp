#pragma once

#include <cstdint>
#include <string>

#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"

namespace maxmin {

struct BidProfile {
  double s1;
  double s2;
};

struct Outcome {
  double q1{0.0};
  double q2{0.0};
  double t1{0.0};
  double t2{0.0};

  double revenue() const { return t1 + t2; }
};

struct RevenueReport {
  std::string method;  // "closed-form", "quadrature", "monte-carlo" or "lp"
  double value{0.0};
  double std_error{0.0};
  std::uint64_t n_samples{0};
  std::uint64_t seed{0};
  double mu{0.0};
  double a{0.0};
};

/// Second-price auction with a random reserve drawn from `reserve`.
///
/// The high bidder wins when the reserve falls below her bid and pays the
/// larger of the reserve and the other bid; allocations and payments are the
/// expectations over the reserve. Ties split the good and the payment evenly.
class RandomReserveAuction {
 public:
  explicit RandomReserveAuction(Cdf reserve, double tol_quad = 1e-9);

  Outcome outcome(BidProfile bids) const;
  /// Integral of the reserve CDF over [lo, hi], adaptive Simpson.
  double reserve_integral(double lo, double hi) const;

  const Cdf& reserve() const { return reserve_; }
  double tol_quad() const { return tol_quad_; }

 private:
  double payment(double winner, double loser) const;

  Cdf reserve_;
  double tol_quad_;
};

/// Outcome of the optimal-reserve auction at a reported profile.
Outcome outcome(const SolvedConstants<double>& c, BidProfile bids);

/// Inverse-CDF draw from the optimal reserve, bisection to tol_root.
double sample_reserve(const SolvedConstants<double>& c, double u);

struct MonteCarloOptions {
  std::uint64_t n_samples{1'000'000};
  std::uint64_t seed{0};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads{0};
};

/// Truth-telling revenue with i.i.d. signals drawn by inverse CDF. The value
/// is bitwise identical for a given (seed, n_samples) whatever `threads` is.
RevenueReport mc_revenue(const RandomReserveAuction& auction, const Cdf& signal, const MonteCarloOptions& options);

RevenueReport mc_revenue(const SolvedConstants<double>& c, const Cdf& signal, std::uint64_t n_samples,
                         std::uint64_t seed);

/// Revenue when signals are a point mass at mu, one bidder reports mu and
/// the other reports 0.
double dominated_equilibrium_revenue(const SolvedConstants<double>& c, double mu);

}  // namespace maxmin
