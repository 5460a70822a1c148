#pragma once

// Closed-form objects of the maxmin saddle point: the support endpoint a,
// the random-reserve CDF, the equal-revenue signal CDF and their limits.
// Everything here is a pure function templated on the scalar type.

#include <cmath>
#include <sstream>
#include <string>

#include "maxmin/errors.hpp"

namespace maxmin {

template <typename Scalar = double>
struct ModelParams {
  Scalar mu{0.5};
  Scalar tol_root{1e-12};
  Scalar tol_quad{1e-9};
};

/// Constants derived from the prior mean. `h_at_a` is the reserve CDF at a.
template <typename Scalar = double>
struct SolvedConstants {
  Scalar mu{};
  Scalar a{};
  Scalar lambda{};
  Scalar revenue_guarantee{};
  Scalar h_at_a{};
  Scalar tol_root{1e-12};
  Scalar tol_quad{1e-9};
};

namespace detail {

template <typename Scalar>
std::string describe(const char* what, Scalar value) {
  std::ostringstream os;
  os.precision(17);
  os << what << " (got " << value << ")";
  return os.str();
}

// log(x / a) written through t = (x - a) / a; log1p keeps digits near x = a.
template <typename Scalar>
Scalar log_ratio(Scalar x, Scalar a, Scalar t) {
  using std::abs;
  using std::log;
  using std::log1p;
  return abs(t) < Scalar(0.5) ? log1p(t) : log(x / a);
}

}  // namespace detail

/// Residual of a(1 - ln a) = mu.
template <typename Scalar>
Scalar support_equation_residual(Scalar a, Scalar mu) {
  using std::log;
  return a * (Scalar(1) - log(a)) - mu;
}

template <typename Scalar>
SolvedConstants<Scalar> constants_from_a(Scalar a, const ModelParams<Scalar>& params) {
  using std::log;
  SolvedConstants<Scalar> c;
  c.mu = params.mu;
  c.a = a;
  c.h_at_a = -(Scalar(1) - a) / log(a);
  c.lambda = Scalar(2) * c.h_at_a;
  c.revenue_guarantee = Scalar(2) * a - a * a;
  c.tol_root = params.tol_root;
  c.tol_quad = params.tol_quad;
  return c;
}

/// Unique root of a(1 - ln a) = mu on (0, 1) by bisection. The map is
/// strictly increasing there with limits 0 and 1.
template <typename Scalar = double>
SolvedConstants<Scalar> solve_a(const ModelParams<Scalar>& params) {
  using std::abs;
  const Scalar mu = params.mu;
  if (!(mu > Scalar(0) && mu < Scalar(1))) {
    throw DomainError(detail::describe("prior mean must lie in (0, 1)", mu));
  }
  if (!(params.tol_root > Scalar(0)) || !(params.tol_quad > Scalar(0))) {
    throw DomainError("tolerances must be strictly positive");
  }

  constexpr Scalar kBracket = Scalar(1e-12);
  constexpr int kMaxIterations = 200;
  Scalar lo = kBracket;
  Scalar hi = Scalar(1) - kBracket;
  if (support_equation_residual(lo, mu) > Scalar(0) || support_equation_residual(hi, mu) < Scalar(0)) {
    throw ConvergenceError(detail::describe("root of a(1 - ln a) = mu is outside the bisection bracket", mu));
  }
  for (int it = 0; it < kMaxIterations; ++it) {
    const Scalar mid = lo + (hi - lo) / Scalar(2);
    if (mid <= lo || mid >= hi) break;
    if (support_equation_residual(mid, mu) < Scalar(0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const Scalar r_lo = abs(support_equation_residual(lo, mu));
  const Scalar r_hi = abs(support_equation_residual(hi, mu));
  const Scalar a = r_lo <= r_hi ? lo : hi;
  const Scalar residual = r_lo <= r_hi ? r_lo : r_hi;
  if (residual > params.tol_root) {
    throw ConvergenceError(detail::describe("bisection residual above tolerance", residual));
  }
  return constants_from_a(a, params);
}

template <typename Scalar = double>
SolvedConstants<Scalar> solve_a(Scalar mu) {
  ModelParams<Scalar> params;
  params.mu = mu;
  return solve_a(params);
}

// ---------------------------------------------------------------------------
// Random reserve CDF and density.

/// Series band |x - a| / a below which the reserve CDF uses its expansion.
inline constexpr double kReserveSeriesBand = 1e-4;
/// Band for the density, whose direct form loses digits faster.
inline constexpr double kReserveDensitySeriesBand = 1e-3;

template <typename Scalar>
Scalar reserve_cdf(const SolvedConstants<Scalar>& c, Scalar x) {
  using std::abs;
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw DomainError(detail::describe("reserve CDF is defined on [0, 1]", x));
  }
  if (x == Scalar(0)) return Scalar(0);
  const Scalar t = (x - c.a) / c.a;
  if (abs(t) < Scalar(kReserveSeriesBand)) {
    // (1 + t) log(1 + t) / t = 1 + t/2 - t^2/6 + t^3/12 - t^4/20
    return c.h_at_a * (Scalar(1) + t * (Scalar(1) / 2 + t * (-Scalar(1) / 6 + t * (Scalar(1) / 12 - t / 20))));
  }
  return c.h_at_a * (Scalar(1) + t) * detail::log_ratio(x, c.a, t) / t;
}

template <typename Scalar>
Scalar reserve_pdf(const SolvedConstants<Scalar>& c, Scalar x) {
  using std::abs;
  if (!(x > Scalar(0) && x <= Scalar(1))) {
    throw DomainError(detail::describe("reserve density is defined on (0, 1]", x));
  }
  const Scalar t = (x - c.a) / c.a;
  Scalar f;
  if (abs(t) < Scalar(kReserveDensitySeriesBand)) {
    // (t - log(1 + t)) / t^2
    f = Scalar(1) / 2 + t * (-Scalar(1) / 3 + t * (Scalar(1) / 4 + t * (-Scalar(1) / 5 + t / 6)));
  } else {
    f = (t - detail::log_ratio(x, c.a, t)) / (t * t);
  }
  return c.h_at_a * f / c.a;
}

/// Limit of the reserve density at x = a.
template <typename Scalar>
Scalar reserve_pdf_at_a(const SolvedConstants<Scalar>& c) {
  return c.h_at_a / (Scalar(2) * c.a);
}

// ---------------------------------------------------------------------------
// Equal-revenue signal distribution: 1 - a/x on [a, 1), atom of mass a at 1.

template <typename Scalar>
Scalar equal_revenue_cdf(Scalar a, Scalar x) {
  if (!(x >= Scalar(0) && x <= Scalar(1))) {
    throw DomainError(detail::describe("signal CDF is defined on [0, 1]", x));
  }
  if (x < a) return Scalar(0);
  if (x < Scalar(1)) return Scalar(1) - a / x;
  return Scalar(1);
}

template <typename Scalar>
Scalar equal_revenue_quantile(Scalar a, Scalar u) {
  if (!(u >= Scalar(0) && u <= Scalar(1))) {
    throw DomainError(detail::describe("quantile level must lie in [0, 1]", u));
  }
  return u < Scalar(1) - a ? a / (Scalar(1) - u) : Scalar(1);
}

/// Integral of the equal-revenue CDF over [0, x].
template <typename Scalar>
Scalar equal_revenue_integral(Scalar a, Scalar x) {
  using std::log;
  if (x <= a) return Scalar(0);
  return x - a - a * log(x) + a * log(a);
}

template <typename Scalar>
Scalar signal_cdf(const SolvedConstants<Scalar>& c, Scalar x) {
  return equal_revenue_cdf(c.a, x);
}

template <typename Scalar>
Scalar signal_quantile(const SolvedConstants<Scalar>& c, Scalar u) {
  return equal_revenue_quantile(c.a, u);
}

/// Mass of the signal atom at 1.
template <typename Scalar>
Scalar signal_atom(const SolvedConstants<Scalar>& c) {
  return c.a;
}

}  // namespace maxmin
