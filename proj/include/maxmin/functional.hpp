#pragma once

#include "maxmin/constants.hpp"
#include "maxmin/distribution.hpp"

namespace maxmin {

/// Truth-telling revenue of the random-reserve auction written as an
/// integral over x of CDF values: value = first - second, where
///   first  = int (1 - G^2) (x H' + H) dx
///   second = int 2 H G (1 - G) dx.
struct FunctionalValue {
  double value{0.0};
  double first{0.0};
  double second{0.0};
};

struct FunctionalGrid {
  int uniform_panels{10'000};
  double refine_halfwidth{0.01};
  int refine_factor{100};
};

/// Revenue functional of signal CDF `signal` against reserve `reserve`.
/// Throws DomainError when the reserve has an atom in (0, 1]. An atom at 0
/// is allowed; the integral runs over (0, 1] with the CDF values including it.
FunctionalValue revenue_functional(const Cdf& signal, const Cdf& reserve, const FunctionalGrid& grid = {});

/// Pointwise Lagrangian integrand for the optimal reserve and its multiplier
/// lambda = -2(1 - a)/ln a, as a quadratic in the CDF value `g`:
///   [H - xH'] g^2 - 2[H + (1 - a)/ln a] g + H + xH' + 2(1 - a)/ln a.
double lagrangian_integrand(double g, double x, const SolvedConstants<double>& c);

/// Quadratic coefficients (A, B, C) of the integrand above.
struct Quadratic {
  double a2;
  double a1;
  double a0;
  double argmin_on_unit() const;
};
Quadratic lagrangian_quadratic(double x, const SolvedConstants<double>& c);

/// Integral of the pointwise Lagrangian integrand against `signal`. Adding
/// lambda * mean(signal) recovers the revenue functional.
double lagrangian_functional(const Cdf& signal, const SolvedConstants<double>& c, const FunctionalGrid& grid = {});

/// |(x - a)H'(x) + (a/x)H(x) - lambda/2| for the optimal reserve.
double check_ode(const SolvedConstants<double>& c, double x);

}  // namespace maxmin
