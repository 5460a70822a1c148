#pragma once

#include <functional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "maxmin/constants.hpp"

namespace maxmin {

struct Atom {
  double location;
  double mass;
};

/// Piecewise-linear CDF on knots with explicit atoms.
///
/// `values[k]` is the right-continuous CDF value at `knots[k]` and `atoms[k]`
/// the jump there, so the left limit is `values[k] - atoms[k]`. Between knots
/// the CDF interpolates linearly from `values[k]` to the left limit at
/// `knots[k + 1]`. Below the first knot it rises linearly from (0, 0). The
/// last knot must be 1 with value 1.
struct GridCdf {
  Eigen::VectorXd knots;
  Eigen::VectorXd values;
  Eigen::VectorXd atoms;
};

/// CDF given by callables, used for reserve variants that splice a custom
/// low branch onto the optimal reserve. `cdf` must be right-continuous and
/// include the atoms; `density` is queried only away from atoms.
struct CustomCdf {
  std::function<double(double)> cdf;
  std::function<double(double)> density;
  std::vector<Atom> atoms;
  std::vector<double> breakpoints;
};

/// A distribution on [0, 1]. Analytic kinds carry their closed forms; grid
/// and custom kinds cover iterates, user files and reserve variants.
class Cdf {
 public:
  enum class Kind { Reserve, EqualRevenue, Uniform, Grid, Custom };

  static Cdf reserve(const SolvedConstants<double>& c);
  static Cdf equal_revenue(double a);
  static Cdf uniform();
  /// Validates the grid; throws DomainError if it is not a CDF on [0, 1].
  static Cdf grid(Eigen::VectorXd knots, Eigen::VectorXd values, Eigen::VectorXd atoms = {});
  static Cdf point_mass(double x);
  static Cdf custom(CustomCdf parts);

  Kind kind() const;
  double operator()(double x) const;
  double left_limit(double x) const;
  /// Throws DomainError at atoms and wherever no density exists.
  double density(double x) const;
  /// min{x : F(x) >= u}.
  double quantile(double u) const;

  std::vector<Atom> atoms() const;
  /// True when every atom sits at 0 and a density exists on (0, 1].
  bool has_density_on_open_support() const;
  /// Points where the CDF or its derivative may be irregular.
  std::vector<double> breakpoints() const;

  /// Integral of F over [0, x].
  double integral(double x) const;
  double mean() const;
  double second_moment() const;

  const GridCdf* as_grid() const;
  const SolvedConstants<double>* as_reserve() const;

 private:
  struct ReserveRep {
    SolvedConstants<double> c;
  };
  struct EqualRevenueRep {
    double a;
  };
  struct UniformRep {};
  using Rep = std::variant<ReserveRep, EqualRevenueRep, UniformRep, GridCdf, CustomCdf>;

  explicit Cdf(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

/// Optimal reserve on [a, 1] with a caller-supplied CDF below a. The low
/// branch value at 0+ becomes an atom at zero.
Cdf spliced_reserve(const SolvedConstants<double>& c, std::function<double(double)> low_cdf,
                    std::function<double(double)> low_density);

}  // namespace maxmin
