#pragma once

#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"

namespace maxmin {

// --- Known second moment ---------------------------------------------------

struct SecondMomentParams {
  double delta{0.5};
};

/// Uniform random reserve, equal-revenue signal with a = 1 - sqrt(1 - delta)
/// and revenue guarantee delta.
struct SecondMomentSolution {
  double a;
  Cdf reserve;
  Cdf signal;
  double guarantee;
};

SecondMomentSolution second_moment_solution(const SecondMomentParams& p);

/// Truth-telling interim revenue (s1^2 + s2^2)/2 of the uniform-reserve
/// auction, evaluated through the auction's payment rule.
double uniform_reserve_interim_revenue(double s1, double s2);

// --- Priors beyond two values ----------------------------------------------

struct MpsReport {
  bool passed{false};
  /// max over the grid of int_0^x G - int_0^x F (positive means violation).
  double max_violation{0.0};
  double worst_x{0.0};
  /// |int_0^1 F - int_0^1 G|; zero when the means agree.
  double endpoint_gap{0.0};
  /// Where int G - int F is smallest. The difference typically falls and
  /// then rises around this point; reported for inspection only.
  double pivot_x{0.0};
  int points{0};
};

/// Checks that prior F is a mean-preserving spread of the equal-revenue
/// signal distribution: int_0^x F >= int_0^x G on [0, 1].
/// Throws MeanMismatchError when |mean(F) - mu| > tol_mean.
MpsReport mps_check(const Cdf& prior, const SolvedConstants<double>& c, int grid = 10'000, double tol_mean = 1e-9);

/// Three-point prior on {0, 1/2, 1} with probabilities {b, 1 - 2b, b}.
Cdf three_point_prior(double b);

}  // namespace maxmin
