#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "maxmin/auction.hpp"
#include "maxmin/functional.hpp"
#include "oracle_values.hpp"

namespace maxmin {
namespace {

Cdf two_point() {
  return Cdf::grid(Eigen::Vector3d(0.25, 0.75, 1.0), Eigen::Vector3d(0.5, 1.0, 1.0), Eigen::Vector3d(0.5, 0.5, 0.0));
}

TEST(RevenueFunctional, SaddleValueAcrossMeans) {
  for (double mu : {0.1, 0.3, 0.5, 0.75, 0.9}) {
    const auto c = solve_a(mu);
    const FunctionalValue v = revenue_functional(Cdf::equal_revenue(c.a), Cdf::reserve(c));
    EXPECT_NEAR(v.value, c.revenue_guarantee, 1e-9) << mu;
    EXPECT_DOUBLE_EQ(v.value, v.first - v.second);
  }
}

TEST(RevenueFunctional, PointMassAtOneSellsForSure) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(revenue_functional(Cdf::point_mass(1.0), Cdf::reserve(c)).value, 1.0, 1e-9);
}

TEST(RevenueFunctional, MatchesPayoffOracles) {
  const auto c = solve_a(0.5);
  const Cdf h = Cdf::reserve(c);
  EXPECT_NEAR(revenue_functional(two_point(), h).value, oracle::kTwoPointRevenue, 1e-9);
  EXPECT_NEAR(revenue_functional(Cdf::uniform(), h).value, oracle::kUniformSignalRevenue, 1e-9);
  EXPECT_NEAR(revenue_functional(Cdf::point_mass(0.5), h).value, oracle::kTieRevenueAtMean, 1e-9);
}

TEST(RevenueFunctional, AgreesWithMonteCarlo) {
  const auto c = solve_a(0.5);
  const Cdf h = Cdf::reserve(c);
  for (const Cdf& g : {Cdf::equal_revenue(c.a), two_point(), Cdf::uniform()}) {
    const RevenueReport mc = mc_revenue(c, g, 100'000, 3);
    EXPECT_LT(std::abs(mc.value - revenue_functional(g, h).value), 3.0 * mc.std_error);
  }
}

TEST(RevenueFunctional, UniformReserveGivesSecondMoment) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(revenue_functional(Cdf::equal_revenue(c.a), Cdf::uniform()).value, 2.0 * c.a - c.a * c.a, 1e-9);
}

TEST(RevenueFunctional, RejectsReserveWithInteriorAtom) {
  const Cdf lumpy = Cdf::grid(Eigen::Vector2d(0.5, 1.0), Eigen::Vector2d(0.6, 1.0), Eigen::Vector2d(0.3, 0.0));
  EXPECT_THROW(revenue_functional(Cdf::uniform(), lumpy), DomainError);
}

TEST(LagrangianIntegrand, PointwiseArgmin) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(lagrangian_quadratic(2.0 * c.a, c).argmin_on_unit(), 0.5, 1e-12);
  EXPECT_EQ(lagrangian_quadratic(0.5 * c.a, c).argmin_on_unit(), 0.0);
  for (int i = 1; i < 200; ++i) {
    const double x = i / 200.0;
    if (std::abs(x - c.a) < 1e-12) continue;
    const double expected = x < c.a ? 0.0 : 1.0 - c.a / x;
    EXPECT_NEAR(lagrangian_quadratic(x, c).argmin_on_unit(), expected, 1e-10) << x;
  }
}

TEST(LagrangianIntegrand, ConvexWithStatedLeadingCoefficient) {
  for (double mu : {0.2, 0.5, 0.8}) {
    const auto c = solve_a(mu);
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      if (std::abs(x - c.a) < 1e-6) continue;
      const Quadratic q = lagrangian_quadratic(x, c);
      const double identity = x * (reserve_cdf(c, x) + (1.0 - c.a) / std::log(c.a)) / (x - c.a);
      EXPECT_GT(q.a2, 0.0);
      EXPECT_NEAR(q.a2, identity, 1e-9 * std::max(1.0, std::abs(identity)));
      // second difference in g equals 2 A
      const double d2 = lagrangian_integrand(0.6, x, c) - 2.0 * lagrangian_integrand(0.5, x, c) +
                        lagrangian_integrand(0.4, x, c);
      EXPECT_NEAR(d2 / 0.01, 2.0 * q.a2, 1e-8);
    }
  }
}

TEST(LagrangianIntegrand, UndefinedAtSpecialPoints) {
  const auto c = solve_a(0.5);
  EXPECT_THROW(lagrangian_integrand(0.5, 0.0, c), DomainError);
  EXPECT_THROW(lagrangian_integrand(0.5, c.a, c), DomainError);
  EXPECT_THROW(lagrangian_integrand(0.5, 1.0, c), DomainError);
  EXPECT_THROW(lagrangian_integrand(1.5, 0.5, c), DomainError);
}

TEST(LagrangianFunctional, AddingMultiplierTimesMeanRecoversRevenue) {
  const auto c = solve_a(0.5);
  const Cdf h = Cdf::reserve(c);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Cdf> signals{Cdf::equal_revenue(c.a), Cdf::uniform(), two_point(), Cdf::point_mass(0.3)};
  for (int trial = 0; trial < 3; ++trial) {
    Eigen::VectorXd knots = Eigen::VectorXd::LinSpaced(8, 0.125, 1.0);
    Eigen::VectorXd values(8);
    for (int k = 0; k < 8; ++k) values[k] = unif(rng);
    std::sort(values.data(), values.data() + 7);
    values[7] = 1.0;
    signals.push_back(Cdf::grid(knots, values));
  }
  for (const Cdf& g : signals) {
    const double lhs = lagrangian_functional(g, c) + c.lambda * g.mean();
    EXPECT_NEAR(lhs, revenue_functional(g, h).value, 1e-9);
  }
}

TEST(LagrangianFunctional, MinimisedByEqualRevenueSignal) {
  const auto c = solve_a(0.5);
  const double at_saddle = lagrangian_functional(Cdf::equal_revenue(c.a), c);
  EXPECT_NEAR(at_saddle + c.lambda * c.mu, c.revenue_guarantee, 1e-9);
  for (const Cdf& g : {Cdf::uniform(), two_point(), Cdf::point_mass(0.5), Cdf::equal_revenue(0.3)}) {
    EXPECT_GT(lagrangian_functional(g, c), at_saddle);
  }
}

TEST(CheckOde, ResidualVanishes) {
  const auto c = solve_a(0.5);
  EXPECT_LT(check_ode(c, 0.5), 1e-8);
  EXPECT_LT(check_ode(c, 0.9), 1e-8);
  EXPECT_LT(check_ode(c, 1.0), 1e-8);
  for (double mu : {0.1, 0.5, 0.9}) {
    const auto cm = solve_a(mu);
    for (int i = 1; i <= 100; ++i) {
      const double x = i / 100.0;
      if (x == cm.a) continue;
      EXPECT_LT(check_ode(cm, x), 1e-8) << "mu=" << mu << " x=" << x;
    }
  }
  EXPECT_THROW(check_ode(c, 0.0), DomainError);
}

}  // namespace
}  // namespace maxmin
