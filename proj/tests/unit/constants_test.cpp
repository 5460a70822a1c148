#include <cmath>

#include <gtest/gtest.h>

#include "maxmin/constants.hpp"
#include "oracle_values.hpp"

namespace maxmin {
namespace {

TEST(SolveA, MatchesOracleAcrossMeans) {
  for (const auto& row : oracle::kConstants) {
    const auto c = solve_a(row.mu);
    EXPECT_NEAR(c.a, row.a, 1e-13) << "mu=" << row.mu;
    EXPECT_NEAR(c.revenue_guarantee, row.revenue_guarantee, 1e-13);
    EXPECT_NEAR(c.lambda, row.lambda, 1e-12);
    EXPECT_NEAR(c.h_at_a, row.h_at_a, 1e-12);
    EXPECT_LE(std::abs(support_equation_residual(c.a, row.mu)), 1e-12);
  }
}

TEST(SolveA, GuaranteeIsDefinitional) {
  for (int i = 1; i <= 9; ++i) {
    const auto c = solve_a(0.1 * i);
    EXPECT_EQ(c.revenue_guarantee, 2.0 * c.a - c.a * c.a);
  }
}

TEST(SolveA, HalfMean) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(c.a, 0.18668, 1e-5);
  EXPECT_NEAR(c.revenue_guarantee, 0.3385, 5e-4);
}

TEST(SolveA, ThreeQuarterMean) {
  const auto c = solve_a(0.75);
  EXPECT_NEAR(c.a, 0.382404, 1e-6);
  EXPECT_NEAR(1.0 - std::sqrt(1.0 - 2.0 * c.a), oracle::kPivotAt075, 1e-12);
  EXPECT_NEAR(1.0 - std::sqrt(1.0 - 2.0 * c.a), 0.515, 5e-4);
}

TEST(SolveA, RejectsMeansOutsideUnitInterval) {
  for (double mu : {0.0, 1.0, -0.2, 1.5, std::nan("")}) {
    EXPECT_THROW(solve_a(mu), DomainError) << mu;
  }
  ModelParams<double> p;
  p.tol_root = 0.0;
  EXPECT_THROW(solve_a(p), DomainError);
}

TEST(SolveA, LongDoubleAgrees) {
  const auto c = solve_a<long double>(0.5L);
  EXPECT_NEAR(static_cast<double>(c.a), oracle::kConstants[2].a, 1e-13);
}

TEST(ReserveCdf, SpecialPoints) {
  const auto c = solve_a(0.5);
  EXPECT_DOUBLE_EQ(reserve_cdf(c, 1.0), 1.0);
  EXPECT_EQ(reserve_cdf(c, 0.0), 0.0);
  EXPECT_NEAR(reserve_cdf(c, c.a), 0.4847, 5e-4);
  EXPECT_NEAR(reserve_cdf(c, c.a), oracle::kConstants[2].h_at_a, 1e-15);
  EXPECT_NEAR(reserve_cdf(c, 0.5), oracle::kReserveAtHalf, 1e-14);
  EXPECT_THROW(reserve_cdf(c, -1e-3), DomainError);
  EXPECT_THROW(reserve_cdf(c, 1.0 + 1e-9), DomainError);
}

TEST(ReserveCdf, StrictlyIncreasingOnFineGrid) {
  for (double mu : {0.1, 0.5, 0.9}) {
    const auto c = solve_a(mu);
    double prev = reserve_cdf(c, 0.0);
    for (int i = 1; i <= 10'000; ++i) {
      const double h = reserve_cdf(c, i / 10'000.0);
      ASSERT_GT(h, prev) << "mu=" << mu << " i=" << i;
      prev = h;
    }
  }
}

TEST(ReserveCdf, ContinuousAtA) {
  const auto c = solve_a(0.5);
  for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
    EXPECT_NEAR(reserve_cdf(c, c.a + eps), c.h_at_a, 2.0 * eps) << eps;
    EXPECT_NEAR(reserve_cdf(c, c.a - eps), c.h_at_a, 2.0 * eps) << eps;
  }
}

TEST(ReserveCdf, SeriesMatchesDirectFormAtBandEdge) {
  const auto c = solve_a(0.5);
  for (double sign : {-1.0, 1.0}) {
    const double t = sign * kReserveSeriesBand;
    const double x = c.a * (1.0 + t);
    const double direct = c.h_at_a * (1.0 + t) * std::log1p(t) / t;
    const double inside = reserve_cdf(c, c.a * (1.0 + 0.999999 * t));
    EXPECT_NEAR(reserve_cdf(c, x), direct, 1e-15);
    EXPECT_NEAR(inside, direct, 1e-9);
  }
}

TEST(ReservePdf, LimitAtA) {
  const auto c = solve_a(0.5);
  EXPECT_NEAR(reserve_pdf_at_a(c), oracle::kReservePdfAtA, 1e-13);
  EXPECT_NEAR(reserve_pdf(c, c.a), oracle::kReservePdfAtA, 1e-13);
  EXPECT_NEAR(reserve_pdf(c, c.a), 1.298, 5e-4);
}

TEST(ReservePdf, PositiveAndDefinedOnHalfOpenInterval) {
  const auto c = solve_a(0.5);
  for (int i = 1; i <= 1000; ++i) EXPECT_GT(reserve_pdf(c, i / 1000.0), 0.0);
  EXPECT_THROW(reserve_pdf(c, 0.0), DomainError);
}

TEST(ReservePdf, VanishingTimesXAtZero) {
  const auto c = solve_a(0.5);
  EXPECT_LT(1e-4 * reserve_pdf(c, 1e-4), 0.06);
  EXPECT_LT(1e-6 * reserve_pdf(c, 1e-6), 0.04);
  EXPECT_LT(1e-6 * reserve_pdf(c, 1e-6), 1e-4 * reserve_pdf(c, 1e-4));
}

TEST(ReservePdf, MatchesCentralDifferences) {
  for (double mu : {0.3, 0.5, 0.75}) {
    const auto c = solve_a(mu);
    const double h = 1e-5;
    double worst = 0.0;
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      if (x < 0.01 || std::abs(x - c.a) < 0.01) continue;
      const double fd = (reserve_cdf(c, x + h) - reserve_cdf(c, x - h)) / (2.0 * h);
      worst = std::max(worst, std::abs(fd - reserve_pdf(c, x)));
    }
    EXPECT_LT(worst, 1e-6) << "mu=" << mu;
  }
}

TEST(ReservePdf, SeriesBandIsSeamless) {
  const auto c = solve_a(0.5);
  const double edge = c.a * (1.0 + kReserveDensitySeriesBand);
  EXPECT_NEAR(reserve_pdf(c, edge * (1.0 - 1e-12)), reserve_pdf(c, edge), 1e-9);
}

TEST(SignalCdf, EndpointsAndAtom) {
  const auto c = solve_a(0.5);
  EXPECT_EQ(signal_cdf(c, c.a), 0.0);
  EXPECT_EQ(signal_cdf(c, 0.1), 0.0);
  EXPECT_EQ(signal_cdf(c, 1.0), 1.0);
  EXPECT_NEAR(1.0 - signal_cdf(c, std::nextafter(1.0, 0.0)), c.a, 1e-15);
  EXPECT_NEAR(signal_atom(c), 0.18668, 1e-5);
}

TEST(SignalCdf, MeanIsMu) {
  for (const auto& row : oracle::kConstants) {
    const auto c = solve_a(row.mu);
    // int_0^1 (1 - G) = 1 - int_0^1 G
    EXPECT_NEAR(1.0 - equal_revenue_integral(c.a, 1.0), row.mu, 1e-9);
  }
}

TEST(SignalQuantile, Examples) {
  const auto c = solve_a(0.5);
  EXPECT_EQ(signal_quantile(c, 0.0), c.a);
  EXPECT_EQ(signal_quantile(c, 1.0 - c.a), 1.0);
  EXPECT_NEAR(signal_quantile(c, 0.5), 0.3734, 5e-4);
  EXPECT_THROW(signal_quantile(c, 1.2), DomainError);
}

TEST(SignalQuantile, InvertsCdf) {
  const auto c = solve_a(0.5);
  for (int i = 0; i <= 1000; ++i) {
    const double u = i / 1000.0;
    const double x = signal_quantile(c, u);
    const double g = signal_cdf(c, x);
    EXPECT_GE(g, u - 1e-15);
    if (u < 1.0 - c.a) EXPECT_NEAR(g, u, 1e-14);
  }
}

TEST(EqualRevenueIntegral, MatchesNumericIntegral) {
  const auto c = solve_a(0.5);
  for (double x : {0.1, 0.25, 0.5, 0.75, 0.99}) {
    // composite Simpson on [a, x] with many panels
    double sum = 0.0;
    if (x > c.a) {
      const int n = 20'000;
      const double h = (x - c.a) / n;
      for (int i = 0; i <= n; ++i) {
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * equal_revenue_cdf(c.a, c.a + i * h);
      }
      sum *= h / 3.0;
    }
    EXPECT_NEAR(equal_revenue_integral(c.a, x), sum, 1e-9) << x;
  }
}

}  // namespace
}  // namespace maxmin
