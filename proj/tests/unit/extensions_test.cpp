#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "maxmin/extensions.hpp"
#include "maxmin/functional.hpp"
#include "maxmin/quadrature.hpp"
#include "oracle_values.hpp"

namespace maxmin {
namespace {

// E[X^2] = 1 - int_0^1 2x G(x) dx, with panels split at every breakpoint.
double second_moment_oracle(const Cdf& g) {
  std::vector<double> breaks;
  for (double b : g.breakpoints()) {
    if (b > 0.0 && b < 1.0) breaks.push_back(b);
  }
  return 1.0 - composite_gauss([&g](double x) { return 2.0 * x * g(x); }, panel_edges(0.0, 1.0, 400, {}, 0.01, 1, breaks));
}

TEST(SecondMoment, SolutionAtHalf) {
  const SecondMomentSolution s = second_moment_solution({0.5});
  EXPECT_DOUBLE_EQ(s.a, 1.0 - std::sqrt(0.5));
  EXPECT_NEAR(s.a, 0.2929, 1e-4);
  EXPECT_EQ(s.guarantee, 0.5);
  EXPECT_NEAR(s.signal.second_moment(), 0.5, 1e-12);
  EXPECT_DOUBLE_EQ(s.reserve(0.37), 0.37);
  EXPECT_NEAR(revenue_functional(s.signal, s.reserve).value, 0.5, 1e-9);
}

TEST(SecondMoment, RejectsOutOfRange) {
  for (double d : {0.0, 1.0, -0.2, 1.5, std::nan("")}) {
    EXPECT_THROW(second_moment_solution({d}), DomainError) << d;
  }
}

TEST(SecondMoment, InterimRevenueIsHalfSumOfSquares) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double s1 = unif(rng);
    const double s2 = unif(rng);
    EXPECT_NEAR(uniform_reserve_interim_revenue(s1, s2), 0.5 * (s1 * s1 + s2 * s2), 1e-14);
  }
  EXPECT_NEAR(uniform_reserve_interim_revenue(0.4, 0.4), 0.16, 1e-15);
}

TEST(SecondMoment, RandomGridsEarnTheirSecondMoment) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Cdf h = Cdf::uniform();
  for (int trial = 0; trial < 3; ++trial) {
    const int k = 6 + 3 * trial;
    Eigen::VectorXd knots = Eigen::VectorXd::LinSpaced(k, 1.0 / k, 1.0);
    Eigen::VectorXd values(k);
    for (int i = 0; i < k; ++i) values[i] = unif(rng);
    std::sort(values.data(), values.data() + k - 1);
    values[k - 1] = 1.0;
    const Cdf g = Cdf::grid(knots, values);
    EXPECT_NEAR(revenue_functional(g, h).value, second_moment_oracle(g), 1e-9) << trial;
  }
}

TEST(SecondMoment, FlatLandscapeAcrossDistributions) {
  const double delta = 0.5;
  const SecondMomentSolution s = second_moment_solution({delta});
  const std::vector<Cdf> signals{
      s.signal,
      Cdf::point_mass(std::sqrt(delta)),
      Cdf::grid(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(0.5, 1.0), Eigen::Vector2d(0.5, 0.5)),
      Cdf::grid(Eigen::Vector2d(0.5, 1.0), Eigen::Vector2d(2.0 / 3.0, 1.0), Eigen::Vector2d(2.0 / 3.0, 1.0 / 3.0)),
      // uniform with weight 3/4 plus an atom 1/4 at 1
      Cdf::grid(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 1.0),
                Eigen::VectorXd::Constant(1, 0.25)),
  };
  for (const Cdf& g : signals) {
    EXPECT_NEAR(second_moment_oracle(g), delta, 1e-9);
    EXPECT_NEAR(revenue_functional(g, s.reserve).value, delta, 1e-6);
  }
}

TEST(IntegratedSignal, ClosedFormMatchesQuadrature) {
  for (double mu : {0.2, 0.5, 0.75}) {
    const auto c = solve_a(mu);
    for (double x : {0.1, c.a, 0.45, 0.7, 0.99, 1.0}) {
      const double lo = std::min(x, c.a);
      const double numeric = composite_gauss([&c](double s) { return signal_cdf(c, s); }, panel_edges(lo, x, 400));
      EXPECT_NEAR(equal_revenue_integral(c.a, x), numeric, 1e-9) << mu << " " << x;
    }
  }
}

TEST(MpsCheck, ThreePointPriorThreshold) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(-2.0 * c.a * std::log(0.5), oracle::kThreePointThreshold, 1e-12);
  for (double b : {0.26, 0.30, 0.5}) {
    const MpsReport r = mps_check(three_point_prior(b), c);
    EXPECT_TRUE(r.passed) << b;
    EXPECT_LE(r.endpoint_gap, 1e-12);
  }
  for (double b : {0.25, 0.20}) {
    const MpsReport r = mps_check(three_point_prior(b), c);
    EXPECT_FALSE(r.passed) << b;
    EXPECT_GT(r.max_violation, 0.0);
    // violation peaks where the prior's flat stretch ends
    EXPECT_DOUBLE_EQ(r.worst_x, 0.5);
  }
}

TEST(MpsCheck, UniformPlusAtomPriorAtThreeQuarters) {
  const auto c = solve_a(0.75);
  const Cdf prior = Cdf::grid(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, 1.0),
                              Eigen::VectorXd::Constant(1, 0.5));
  EXPECT_NEAR(prior.mean(), 0.75, 1e-15);
  const MpsReport r = mps_check(prior, c);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.pivot_x, oracle::kPivotAt075, 1e-3);
}

TEST(MpsCheck, BinaryPriorAlwaysPasses) {
  for (int i = 1; i <= 9; ++i) {
    const double mu = i / 10.0;
    const Cdf bernoulli =
        Cdf::grid(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(1.0 - mu, 1.0), Eigen::Vector2d(1.0 - mu, mu));
    const MpsReport r = mps_check(bernoulli, solve_a(mu));
    EXPECT_TRUE(r.passed) << mu;
    EXPECT_LE(r.max_violation, 1e-12);
  }
}

TEST(MpsCheck, EndpointsAgreeWhenMeansMatch) {
  const auto c = solve_a(0.5);
  const MpsReport r = mps_check(Cdf::uniform(), c);
  EXPECT_LE(r.endpoint_gap, c.tol_quad);
  EXPECT_GT(r.points, 10'000);
}

TEST(MpsCheck, RejectsMeanMismatch) {
  const auto c = solve_a(0.5);
  EXPECT_THROW(mps_check(Cdf::point_mass(0.4), c), MeanMismatchError);
  EXPECT_THROW(mps_check(Cdf::uniform(), c, 0), DomainError);
  EXPECT_THROW(three_point_prior(0.6), DomainError);
}

}  // namespace
}  // namespace maxmin
