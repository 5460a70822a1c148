#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "maxmin/errors.hpp"

namespace maxmin {

/// Neumaier compensated accumulator; order of additions changes the result
/// only at the level of the final rounding.
template <typename Scalar = double>
class CompensatedSum {
 public:
  void add(Scalar v) {
    using std::abs;
    const Scalar t = sum_ + v;
    if (abs(sum_) >= abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(Scalar v) {
    add(v);
    return *this;
  }
  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

namespace detail {

template <typename Scalar, typename F>
Scalar simpson_step(const F& f, Scalar lo, Scalar hi, Scalar f_lo, Scalar f_mid, Scalar f_hi, Scalar whole, Scalar tol,
                    int depth, bool& converged) {
  using std::abs;
  const Scalar mid = (lo + hi) / 2;
  const Scalar left_mid = (lo + mid) / 2;
  const Scalar right_mid = (mid + hi) / 2;
  const Scalar f_lm = f(left_mid);
  const Scalar f_rm = f(right_mid);
  const Scalar left = (mid - lo) / 6 * (f_lo + 4 * f_lm + f_mid);
  const Scalar right = (hi - mid) / 6 * (f_mid + 4 * f_rm + f_hi);
  const Scalar delta = left + right - whole;
  if (abs(delta) <= 15 * tol) {
    return left + right + delta / 15;
  }
  if (depth <= 0) {
    converged = false;
    return left + right + delta / 15;
  }
  return simpson_step(f, lo, mid, f_lo, f_lm, f_mid, left, tol / 2, depth - 1, converged) +
         simpson_step(f, mid, hi, f_mid, f_rm, f_hi, right, tol / 2, depth - 1, converged);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi] to absolute tolerance
/// `tol`, with Richardson correction on accepted panels.
template <typename Scalar, typename F>
Scalar adaptive_simpson(const F& f, Scalar lo, Scalar hi, Scalar tol, int max_depth = 48) {
  if (lo == hi) return Scalar(0);
  if (hi < lo) return -adaptive_simpson(f, hi, lo, tol, max_depth);
  const Scalar mid = (lo + hi) / 2;
  const Scalar f_lo = f(lo);
  const Scalar f_mid = f(mid);
  const Scalar f_hi = f(hi);
  const Scalar whole = (hi - lo) / 6 * (f_lo + 4 * f_mid + f_hi);
  bool converged = true;
  const Scalar value = detail::simpson_step(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, max_depth, converged);
  if (!converged) {
    throw ConvergenceError("adaptive Simpson quadrature exhausted its depth budget");
  }
  return value;
}

/// Five-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 5> kGaussNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                                   0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                     0.4786286704993665, 0.2369268850561891};

/// Composite Gauss-Legendre over consecutive panel edges. f is evaluated
/// only at panel interiors, so jumps placed on edges are harmless.
template <typename F>
double composite_gauss(const F& f, const std::vector<double>& edges) {
  CompensatedSum<double> total;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double lo = edges[p];
    const double hi = edges[p + 1];
    if (hi <= lo) continue;
    const double half = (hi - lo) / 2;
    const double centre = (hi + lo) / 2;
    double panel = 0.0;
    for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
      panel += kGaussWeights[i] * f(centre + half * kGaussNodes[i]);
    }
    total += half * panel;
  }
  return total.value();
}

/// Panel edges on [lo, hi]: `uniform` equal panels, each window around a
/// point in `refine_at` subdivided `refine_factor` times finer, and every
/// point in `breaks` inserted as an edge.
inline std::vector<double> panel_edges(double lo, double hi, int uniform, const std::vector<double>& refine_at = {},
                                       double refine_halfwidth = 0.01, int refine_factor = 100,
                                       const std::vector<double>& breaks = {}) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(uniform) + 1 + breaks.size());
  const double h = (hi - lo) / uniform;
  for (int i = 0; i <= uniform; ++i) edges.push_back(lo + h * i);
  for (double c : refine_at) {
    const double w_lo = std::max(lo, c - refine_halfwidth);
    const double w_hi = std::min(hi, c + refine_halfwidth);
    if (w_hi <= w_lo) continue;
    const int pieces = std::max(1, static_cast<int>(std::ceil((w_hi - w_lo) / h)) * refine_factor);
    const double step = (w_hi - w_lo) / pieces;
    for (int i = 0; i <= pieces; ++i) edges.push_back(w_lo + step * i);
    if (c > lo && c < hi) edges.push_back(c);
  }
  for (double b : breaks) {
    if (b > lo && b < hi) edges.push_back(b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace maxmin
