#include "maxmin/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "maxmin/quadrature.hpp"

namespace maxmin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kGridValueSlack = 1e-12;

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError(detail::describe(what, x));
}

// Index of the largest knot <= x, or -1 when x is below the first knot.
Eigen::Index knot_at_or_below(const GridCdf& g, double x) {
  const double* begin = g.knots.data();
  const double* end = begin + g.knots.size();
  return static_cast<Eigen::Index>(std::upper_bound(begin, end, x) - begin) - 1;
}

struct Piece {
  double x0, v0, x1, v1;  // linear piece from (x0, v0) to the left limit (x1, v1)
};

Piece piece_after(const GridCdf& g, Eigen::Index k) {
  if (k < 0) return {0.0, 0.0, g.knots[0], g.values[0] - g.atoms[0]};
  return {g.knots[k], g.values[k], g.knots[k + 1], g.values[k + 1] - g.atoms[k + 1]};
}

double grid_value(const GridCdf& g, double x) {
  const Eigen::Index k = knot_at_or_below(g, x);
  const Eigen::Index last = g.knots.size() - 1;
  if (k >= last) return g.values[last];
  if (k >= 0 && x == g.knots[k]) return g.values[k];
  const Piece p = piece_after(g, k);
  if (p.x1 <= p.x0) return p.v1;
  return p.v0 + (p.v1 - p.v0) * (x - p.x0) / (p.x1 - p.x0);
}

double grid_density(const GridCdf& g, double x) {
  Eigen::Index k = knot_at_or_below(g, x);
  if (k >= 0 && x == g.knots[k] && g.atoms[k] > 0.0) {
    throw DomainError(detail::describe("density undefined at an atom", x));
  }
  const Eigen::Index last = g.knots.size() - 1;
  if (k >= last) k = last - 1;
  const Piece p = piece_after(g, k);
  if (p.x1 <= p.x0) return 0.0;
  return (p.v1 - p.v0) / (p.x1 - p.x0);
}

double grid_quantile(const GridCdf& g, double u) {
  if (u <= 0.0) return 0.0;
  const double* begin = g.values.data();
  const double* end = begin + g.values.size();
  const auto k = static_cast<Eigen::Index>(std::lower_bound(begin, end, u) - begin);
  if (k >= g.values.size()) return 1.0;
  const Piece p = piece_after(g, k - 1);
  if (u <= p.v1 && p.v1 > p.v0) {
    return p.x0 + (u - p.v0) / (p.v1 - p.v0) * (p.x1 - p.x0);
  }
  return g.knots[k];
}

// Integral of the linear piece between a and b (both inside the piece).
double piece_integral(const Piece& p, double lo, double hi) {
  if (hi <= lo) return 0.0;
  const double slope = p.x1 > p.x0 ? (p.v1 - p.v0) / (p.x1 - p.x0) : 0.0;
  const double f_lo = p.v0 + slope * (lo - p.x0);
  const double f_hi = p.v0 + slope * (hi - p.x0);
  return 0.5 * (f_lo + f_hi) * (hi - lo);
}

double grid_integral(const GridCdf& g, double x) {
  CompensatedSum<double> total;
  for (Eigen::Index k = -1; k + 1 < g.knots.size(); ++k) {
    const Piece p = piece_after(g, k);
    if (x <= p.x0) break;
    total += piece_integral(p, p.x0, std::min(x, p.x1));
  }
  return total.value();
}

// Integral of x F(x) over [0, 1]; Simpson is exact on each linear piece.
double grid_first_moment_of_cdf(const GridCdf& g) {
  CompensatedSum<double> total;
  for (Eigen::Index k = -1; k + 1 < g.knots.size(); ++k) {
    const Piece p = piece_after(g, k);
    if (p.x1 <= p.x0) continue;
    const double m = 0.5 * (p.x0 + p.x1);
    const double fm = 0.5 * (p.v0 + p.v1);
    total += (p.x1 - p.x0) / 6.0 * (p.x0 * p.v0 + 4.0 * m * fm + p.x1 * p.v1);
  }
  return total.value();
}

double bisect_quantile(const std::function<double(double)>& cdf, double u) {
  if (u <= 0.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (cdf(mid) >= u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double integrate_with_breaks(const std::function<double(double)>& f, double lo, double hi,
                             const std::vector<double>& breaks, double tol) {
  std::vector<double> cuts{lo};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  CompensatedSum<double> total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_simpson(f, cuts[i], cuts[i + 1], tol);
  }
  return total.value();
}

}  // namespace

Cdf Cdf::reserve(const SolvedConstants<double>& c) { return Cdf(ReserveRep{c}); }

Cdf Cdf::equal_revenue(double a) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError(detail::describe("equal-revenue support must start in (0, 1)", a));
  return Cdf(EqualRevenueRep{a});
}

Cdf Cdf::uniform() { return Cdf(UniformRep{}); }

Cdf Cdf::grid(Eigen::VectorXd knots, Eigen::VectorXd values, Eigen::VectorXd atoms) {
  const Eigen::Index n = knots.size();
  if (n == 0) throw DomainError("grid CDF needs at least one knot");
  if (atoms.size() == 0) atoms = Eigen::VectorXd::Zero(n);
  if (values.size() != n || atoms.size() != n) throw DomainError("grid CDF columns differ in length");
  for (Eigen::Index k = 0; k < n; ++k) {
    check_unit(knots[k], "grid knots must lie in [0, 1]");
    if (k > 0 && !(knots[k] > knots[k - 1])) throw DomainError("grid knots must be strictly increasing");
    if (!(values[k] >= -kGridValueSlack && values[k] <= 1.0 + kGridValueSlack)) {
      throw DomainError(detail::describe("grid CDF values must lie in [0, 1]", values[k]));
    }
    if (!(atoms[k] >= 0.0)) throw DomainError("atom masses must be nonnegative");
    const double previous = k > 0 ? values[k - 1] : 0.0;
    if (values[k] - atoms[k] < previous - kGridValueSlack) {
      throw DomainError(detail::describe("grid CDF must be nondecreasing; violation at knot", knots[k]));
    }
  }
  if (knots[n - 1] != 1.0) throw DomainError("last grid knot must be 1");
  if (std::abs(values[n - 1] - 1.0) > kGridValueSlack) {
    throw DomainError(detail::describe("grid CDF must reach 1 at x = 1", values[n - 1]));
  }
  values = values.cwiseMax(0.0).cwiseMin(1.0);
  values[n - 1] = 1.0;
  return Cdf(GridCdf{std::move(knots), std::move(values), std::move(atoms)});
}

Cdf Cdf::point_mass(double x) {
  check_unit(x, "point mass location must lie in [0, 1]");
  if (x == 1.0) {
    return grid(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(0.0, 1.0));
  }
  if (x == 0.0) {
    return grid(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(1.0, 1.0), Eigen::Vector2d(1.0, 0.0));
  }
  return grid(Eigen::Vector3d(0.0, x, 1.0), Eigen::Vector3d(0.0, 1.0, 1.0), Eigen::Vector3d(0.0, 1.0, 0.0));
}

Cdf Cdf::custom(CustomCdf parts) {
  if (!parts.cdf) throw DomainError("custom CDF needs a cdf callable");
  return Cdf(std::move(parts));
}

Cdf::Kind Cdf::kind() const {
  return std::visit(Overloaded{[](const ReserveRep&) { return Kind::Reserve; },
                               [](const EqualRevenueRep&) { return Kind::EqualRevenue; },
                               [](const UniformRep&) { return Kind::Uniform; },
                               [](const GridCdf&) { return Kind::Grid; },
                               [](const CustomCdf&) { return Kind::Custom; }},
                    rep_);
}

double Cdf::operator()(double x) const {
  check_unit(x, "CDF argument must lie in [0, 1]");
  return std::visit(Overloaded{[x](const ReserveRep& r) { return reserve_cdf(r.c, x); },
                               [x](const EqualRevenueRep& e) { return equal_revenue_cdf(e.a, x); },
                               [x](const UniformRep&) { return x; },
                               [x](const GridCdf& g) { return grid_value(g, x); },
                               [x](const CustomCdf& c) { return c.cdf(x); }},
                    rep_);
}

double Cdf::left_limit(double x) const {
  check_unit(x, "CDF argument must lie in [0, 1]");
  double jump = 0.0;
  for (const Atom& atom : atoms()) {
    if (atom.location == x) jump += atom.mass;
  }
  return (*this)(x)-jump;
}

double Cdf::density(double x) const {
  check_unit(x, "density argument must lie in [0, 1]");
  return std::visit(
      Overloaded{[x](const ReserveRep& r) { return reserve_pdf(r.c, x); },
                 [x](const EqualRevenueRep& e) {
                   if (x == 1.0) throw DomainError("equal-revenue distribution has an atom at 1");
                   return x < e.a ? 0.0 : e.a / (x * x);
                 },
                 [](const UniformRep&) { return 1.0; }, [x](const GridCdf& g) { return grid_density(g, x); },
                 [x](const CustomCdf& c) {
                   for (const Atom& atom : c.atoms) {
                     if (atom.location == x && atom.mass > 0.0) {
                       throw DomainError(detail::describe("density undefined at an atom", x));
                     }
                   }
                   if (!c.density) throw DomainError("custom CDF has no density");
                   return c.density(x);
                 }},
      rep_);
}

double Cdf::quantile(double u) const {
  check_unit(u, "quantile level must lie in [0, 1]");
  return std::visit(Overloaded{[u](const ReserveRep& r) {
                                 return bisect_quantile([&r](double x) { return reserve_cdf(r.c, x); }, u);
                               },
                               [u](const EqualRevenueRep& e) { return equal_revenue_quantile(e.a, u); },
                               [u](const UniformRep&) { return u; },
                               [u](const GridCdf& g) { return grid_quantile(g, u); },
                               [u](const CustomCdf& c) { return bisect_quantile(c.cdf, u); }},
                    rep_);
}

std::vector<Atom> Cdf::atoms() const {
  return std::visit(Overloaded{[](const ReserveRep&) { return std::vector<Atom>{}; },
                               [](const EqualRevenueRep& e) { return std::vector<Atom>{{1.0, e.a}}; },
                               [](const UniformRep&) { return std::vector<Atom>{}; },
                               [](const GridCdf& g) {
                                 std::vector<Atom> out;
                                 for (Eigen::Index k = 0; k < g.knots.size(); ++k) {
                                   if (g.atoms[k] > 0.0) out.push_back({g.knots[k], g.atoms[k]});
                                 }
                                 return out;
                               },
                               [](const CustomCdf& c) { return c.atoms; }},
                    rep_);
}

bool Cdf::has_density_on_open_support() const {
  for (const Atom& atom : atoms()) {
    if (atom.location > 0.0 && atom.mass > 0.0) return false;
  }
  if (const auto* custom = std::get_if<CustomCdf>(&rep_)) return static_cast<bool>(custom->density);
  return true;
}

std::vector<double> Cdf::breakpoints() const {
  return std::visit(Overloaded{[](const ReserveRep& r) { return std::vector<double>{r.c.a}; },
                               [](const EqualRevenueRep& e) { return std::vector<double>{e.a, 1.0}; },
                               [](const UniformRep&) { return std::vector<double>{}; },
                               [](const GridCdf& g) {
                                 return std::vector<double>(g.knots.data(), g.knots.data() + g.knots.size());
                               },
                               [](const CustomCdf& c) {
                                 std::vector<double> out = c.breakpoints;
                                 for (const Atom& atom : c.atoms) out.push_back(atom.location);
                                 return out;
                               }},
                    rep_);
}

double Cdf::integral(double x) const {
  check_unit(x, "integration limit must lie in [0, 1]");
  return std::visit(
      Overloaded{[x](const ReserveRep& r) {
                   return adaptive_simpson([&r](double s) { return reserve_cdf(r.c, s); }, 0.0, x, r.c.tol_quad);
                 },
                 [x](const EqualRevenueRep& e) { return equal_revenue_integral(e.a, x); },
                 [x](const UniformRep&) { return 0.5 * x * x; }, [x](const GridCdf& g) { return grid_integral(g, x); },
                 [x](const CustomCdf& c) { return integrate_with_breaks(c.cdf, 0.0, x, c.breakpoints, 1e-11); }},
      rep_);
}

double Cdf::mean() const { return 1.0 - integral(1.0); }

double Cdf::second_moment() const {
  // int x^2 dF = 1 - 2 int x F(x) dx
  return std::visit(
      Overloaded{[](const ReserveRep& r) {
                   return 1.0 - 2.0 * adaptive_simpson([&r](double s) { return s * reserve_cdf(r.c, s); }, 0.0, 1.0,
                                                       r.c.tol_quad);
                 },
                 [](const EqualRevenueRep& e) { return 2.0 * e.a - e.a * e.a; },
                 [](const UniformRep&) { return 1.0 / 3.0; },
                 [](const GridCdf& g) { return 1.0 - 2.0 * grid_first_moment_of_cdf(g); },
                 [](const CustomCdf& c) {
                   return 1.0 - 2.0 * integrate_with_breaks([&c](double s) { return s * c.cdf(s); }, 0.0, 1.0,
                                                            c.breakpoints, 1e-11);
                 }},
      rep_);
}

const GridCdf* Cdf::as_grid() const { return std::get_if<GridCdf>(&rep_); }

const SolvedConstants<double>* Cdf::as_reserve() const {
  const auto* r = std::get_if<ReserveRep>(&rep_);
  return r ? &r->c : nullptr;
}

Cdf spliced_reserve(const SolvedConstants<double>& c, std::function<double(double)> low_cdf,
                    std::function<double(double)> low_density) {
  CustomCdf parts;
  const double atom_at_zero = low_cdf(0.0);
  parts.cdf = [c, low_cdf](double x) { return x >= c.a ? reserve_cdf(c, x) : low_cdf(x); };
  parts.density = [c, low_density](double x) {
    if (x <= 0.0) throw DomainError("spliced reserve has no density at 0");
    return x >= c.a ? reserve_pdf(c, x) : low_density(x);
  };
  if (atom_at_zero > 0.0) parts.atoms.push_back({0.0, atom_at_zero});
  parts.breakpoints = {c.a};
  return Cdf::custom(std::move(parts));
}

}  // namespace maxmin
