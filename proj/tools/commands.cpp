#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "maxmin/io.hpp"
#include "maxmin/maxmin.hpp"

namespace maxmin::cli {

namespace {

using nlohmann::json;
using io::round12;

struct Config {
  ModelParams<double> model;
  double delta{0.5};
  std::optional<int> grid;
  int lp_n{50};
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  unsigned threads{0};
  std::string which{"reserve"};
  std::string reserve{"optimal"};
  std::string signal{"equal-revenue"};
  std::string pairs{"all"};
  std::string input;
  std::string output;
  std::optional<double> three_point;
};

std::uint64_t resolve_seed(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  const char* env = std::getenv("MAXMIN_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || *env == '-') throw DomainError(std::string("MAXMIN_SEED is not an unsigned integer: ") + env);
  return v;
}

int grid_or(const Config& cfg, int fallback) { return cfg.grid.value_or(fallback); }

json envelope(const std::string& command) { return {{"schema", 1}, {"command", command}}; }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// Writes to the named file, or to `out` when the name is empty or "-".
void with_output(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw io::IoError("cannot open '" + path + "' for writing");
  body(file);
  file.flush();
  if (!file) throw io::IoError("failed writing '" + path + "'");
}

Cdf atom_at_zero_reserve(const SolvedConstants<double>& c) {
  const double ha = c.h_at_a;
  return spliced_reserve(
      c, [ha](double) { return ha; }, [](double) { return 0.0; });
}

Cdf reserve_by_name(const Config& cfg, const SolvedConstants<double>& c) {
  if (!cfg.input.empty()) return io::read_cdf_csv(cfg.input);
  if (cfg.reserve == "atom-at-zero") return atom_at_zero_reserve(c);
  if (cfg.reserve == "uniform") return Cdf::uniform();
  return Cdf::reserve(c);
}

Cdf signal_by_name(const Config& cfg, const SolvedConstants<double>& c) {
  if (!cfg.input.empty()) return io::read_cdf_csv(cfg.input);
  if (cfg.signal == "uniform") return Cdf::uniform();
  return Cdf::equal_revenue(c.a);
}

double sup_distance_to_signal(const GridDistribution& g, const SolvedConstants<double>& c) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < g.knots.size(); ++k) {
    const double x = g.knots[k];
    if (x < c.a + 0.02 || x > 0.98) continue;
    worst = std::max(worst, std::abs(g.values[k] - signal_cdf(c, x)));
  }
  return worst;
}

// --- commands ---------------------------------------------------------------

int cmd_solve(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  json j = envelope("solve");
  j["constants"] = io::to_json(c);
  j["support_residual"] = round12(support_equation_residual(c.a, c.mu));
  emit(out, j);
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  const double r = c.revenue_guarantee;
  json checks = json::array();
  bool all = true;
  const auto record = [&](const std::string& name, double value, double limit, bool passed) {
    checks.push_back({{"name", name}, {"value", round12(value)}, {"limit", limit}, {"passed", passed}});
    all = all && passed;
  };

  double ode = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double x = i / 100.0;
    if (x != c.a) ode = std::max(ode, check_ode(c, x));
  }
  record("ode_residual", ode, 1e-8, ode <= 1e-8);

  const SaddleReport saddle = verify_pointwise_saddle(c, grid_or(cfg, 500));
  record("pointwise_saddle", saddle.max_deviation, 1e-6, saddle.max_deviation < 1e-6);

  const Cdf h = Cdf::reserve(c);
  const Cdf g = Cdf::equal_revenue(c.a);
  const double quad = revenue_functional(g, h).value;
  record("quadrature_vs_closed_form", std::abs(quad - r), 1e-6, std::abs(quad - r) <= 1e-6);

  const RevenueReport mc = mc_revenue(RandomReserveAuction(h), g, {cfg.samples.value_or(200'000), resolve_seed(cfg), cfg.threads});
  const double mc_gap = std::abs(mc.value - quad);
  record("monte_carlo_vs_quadrature", mc_gap, round12(3.0 * mc.std_error), mc_gap <= 3.0 * mc.std_error);

  const AdversaryResult adv = minimize_revenue(h, cfg.model, grid_or(cfg, 500));
  record("adversary_value", std::abs(adv.value - r), 2e-3, std::abs(adv.value - r) <= 2e-3);
  const double dist = sup_distance_to_signal(adv.minimizer, c);
  record("adversary_minimizer", dist, 0.01, dist <= 0.01);

  const double lp = lp_max_revenue(c, cfg.lp_n).value;
  record("lp_upper_bound", std::abs(lp - r), 0.02, std::abs(lp - r) <= 0.02 && lp <= analytic_bound(c) + 0.02);

  const ReserveConditionReport own = check_p1_p2(h, c);
  record("p1_p2_optimal_reserve", own.p2_worst, 0.0, own.passed());
  const ReserveConditionReport atom = check_p1_p2(atom_at_zero_reserve(c), c);
  record("p1_p2_atom_at_zero", atom.p2_worst, 0.0, atom.passed());

  const double dominated = dominated_equilibrium_revenue(c, c.mu);
  record("dominated_below_guarantee", dominated, round12(r), dominated < r);

  json j = envelope("verify");
  j["constants"] = io::to_json(c);
  j["seed"] = resolve_seed(cfg);
  j["checks"] = checks;
  j["passed"] = all;
  emit(out, j);
  return all ? kOk : kCheckFailed;
}

int cmd_curves(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  if (cfg.which == "adversary") {
    const AdversaryResult adv = minimize_revenue(Cdf::reserve(c), cfg.model, grid_or(cfg, 500));
    const Cdf g = adv.minimizer.to_cdf();
    with_output(cfg.output, out, [&](std::ostream& o) { io::write_cdf_csv(o, *g.as_grid()); });
    return kOk;
  }
  const int rows = grid_or(cfg, 1000);
  const Eigen::VectorXd knots = Eigen::VectorXd::LinSpaced(rows, 1.0 / rows, 1.0);
  Eigen::VectorXd values(rows);
  Eigen::VectorXd atoms = Eigen::VectorXd::Zero(rows);
  for (int k = 0; k < rows; ++k) {
    values[k] = cfg.which == "signal" ? signal_cdf(c, knots[k]) : reserve_cdf(c, knots[k]);
  }
  if (cfg.which == "signal") atoms[rows - 1] = signal_atom(c);
  with_output(cfg.output, out, [&](std::ostream& o) { io::write_cdf_csv(o, knots, values, atoms); });
  return kOk;
}

int cmd_simulate(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  const Cdf h = Cdf::reserve(c);
  const Cdf g = signal_by_name(cfg, c);
  RevenueReport mc =
      mc_revenue(RandomReserveAuction(h), g, {cfg.samples.value_or(1'000'000), resolve_seed(cfg), cfg.threads});
  mc.mu = c.mu;
  mc.a = c.a;
  json j = envelope("simulate");
  j["report"] = io::to_json(mc);
  j["quadrature"] = round12(revenue_functional(g, h).value);
  j["revenue_guarantee"] = round12(c.revenue_guarantee);
  emit(out, j);
  return kOk;
}

int cmd_adversary(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  const int grid = grid_or(cfg, 500);
  const AdversaryResult adv = minimize_revenue(reserve_by_name(cfg, c), cfg.model, grid);
  if (!cfg.output.empty()) {
    const Cdf g = adv.minimizer.to_cdf();
    with_output(cfg.output, out, [&](std::ostream& o) { io::write_cdf_csv(o, *g.as_grid()); });
  }
  json j = envelope("adversary");
  j["constants"] = io::to_json(c);
  j["grid"] = grid;
  j["value"] = round12(adv.value);
  j["lambda_hat"] = round12(adv.lambda_hat);
  j["dual_bound"] = round12(adv.dual_bound);
  j["constraint_residual"] = round12(adv.constraint_residual);
  j["projection_change"] = round12(adv.projection_change);
  j["sup_distance_to_signal"] = round12(sup_distance_to_signal(adv.minimizer, c));
  if (cfg.output != "-") emit(out, j);
  return kOk;
}

int cmd_upper_bound(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  const UpperBoundResult ub = lp_max_revenue(c, cfg.lp_n, cfg.pairs == "adjacent" ? BicPairs::Adjacent : BicPairs::All);
  if (!cfg.output.empty()) {
    with_output(cfg.output, out, [&](std::ostream& o) { o << io::to_json(ub.mechanism).dump() << '\n'; });
  }
  json j = envelope("upper-bound");
  j["constants"] = io::to_json(c);
  j["n"] = cfg.lp_n;
  j["pairs"] = cfg.pairs;
  j["value"] = round12(ub.value);
  j["analytic_bound"] = round12(analytic_bound(c));
  j["iterations"] = ub.iterations;
  j["bic_violation"] = round12(ub.mechanism.bic_violation());
  j["bir_violation"] = round12(ub.mechanism.bir_violation());
  j["feasibility_violation"] = round12(ub.mechanism.feasibility_violation());
  if (cfg.output != "-") emit(out, j);
  return kOk;
}

int cmd_mps_check(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  const Cdf prior = cfg.three_point ? three_point_prior(*cfg.three_point) : io::read_cdf_csv(cfg.input);
  const MpsReport r = mps_check(prior, c, grid_or(cfg, 10'000), c.tol_quad);
  json j = envelope("mps-check");
  j["constants"] = io::to_json(c);
  j["passed"] = r.passed;
  j["max_violation"] = round12(r.max_violation);
  j["worst_x"] = round12(r.worst_x);
  j["endpoint_gap"] = round12(r.endpoint_gap);
  j["pivot_x"] = round12(r.pivot_x);
  j["points"] = r.points;
  emit(out, j);
  return r.passed ? kOk : kCheckFailed;
}

int cmd_second_moment(const Config& cfg, std::ostream& out) {
  const SecondMomentSolution s = second_moment_solution({cfg.delta});
  json j = envelope("second-moment");
  j["delta"] = round12(cfg.delta);
  j["a"] = round12(s.a);
  j["guarantee"] = round12(s.guarantee);
  j["reserve"] = "uniform";
  j["quadrature"] = round12(revenue_functional(s.signal, s.reserve).value);
  emit(out, j);
  return kOk;
}

int cmd_dominated(const Config& cfg, std::ostream& out) {
  const auto c = solve_a(cfg.model);
  json j = envelope("dominated");
  j["constants"] = io::to_json(c);
  j["revenue"] = round12(dominated_equilibrium_revenue(c, c.mu));
  emit(out, j);
  return kOk;
}

void add_mu(CLI::App* sub, Config& cfg) {
  sub->add_option("--mu", cfg.model.mu, "Prior mean in (0, 1)")->capture_default_str();
  sub->add_option("--tol-root", cfg.model.tol_root, "Root-finding tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--tol-quad", cfg.model.tol_quad, "Quadrature tolerance")->check(CLI::PositiveNumber);
}

void add_seed(CLI::App* sub, Config& cfg) {
  sub->add_option("--seed", cfg.seed, "RNG seed (falls back to MAXMIN_SEED, then 0)");
  sub->add_option("--samples", cfg.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  sub->add_option("--threads", cfg.threads, "Worker threads, 0 for all cores");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Maxmin auction: random-reserve second-price auction and its worst-case signal"};
  app.require_subcommand(1);

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
  const auto add = [&](const std::string& name, const std::string& help, auto body) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, [&cfg, &out, body] { return body(cfg, out); });
    return sub;
  };

  add_mu(add("solve", "Solve for a, lambda and the revenue guarantee", cmd_solve), cfg);

  auto* verify = add("verify", "Run the invariant suite", cmd_verify);
  add_mu(verify, cfg);
  add_seed(verify, cfg);
  verify->add_option("--grid", cfg.grid, "Adversary grid size")->check(CLI::PositiveNumber);
  verify->add_option("--n", cfg.lp_n, "LP quantile count")->check(CLI::PositiveNumber);

  auto* curves = add("curves", "Write reserve, signal or adversary CDF as CSV", cmd_curves);
  add_mu(curves, cfg);
  curves->add_option("--grid", cfg.grid, "Rows")->check(CLI::PositiveNumber);
  curves->add_option("--which", cfg.which)->check(CLI::IsMember({"reserve", "signal", "adversary"}));
  curves->add_option("--out", cfg.output, "Output CSV (default stdout)");

  auto* simulate = add("simulate", "Monte Carlo revenue of the random-reserve auction", cmd_simulate);
  add_mu(simulate, cfg);
  add_seed(simulate, cfg);
  simulate->add_option("--signal", cfg.signal)->check(CLI::IsMember({"equal-revenue", "uniform"}));
  simulate->add_option("--signal-csv", cfg.input, "Signal CDF as CSV");

  auto* adversary = add("adversary", "Minimise revenue over signal distributions", cmd_adversary);
  add_mu(adversary, cfg);
  adversary->add_option("--grid", cfg.grid, "Grid size K")->check(CLI::PositiveNumber);
  adversary->add_option("--reserve", cfg.reserve)->check(CLI::IsMember({"optimal", "atom-at-zero", "uniform"}));
  adversary->add_option("--reserve-csv", cfg.input, "Reserve CDF as CSV");
  adversary->add_option("--out", cfg.output, "Write the minimiser CDF as CSV");

  auto* upper = add("upper-bound", "LP bound over BIC/BIR direct mechanisms", cmd_upper_bound);
  add_mu(upper, cfg);
  upper->add_option("--n", cfg.lp_n, "Quantile count")->check(CLI::PositiveNumber);
  upper->add_option("--pairs", cfg.pairs)->check(CLI::IsMember({"all", "adjacent"}));
  upper->add_option("--mechanism-out", cfg.output, "Write the optimal mechanism as JSON");

  auto* mps = add("mps-check", "Mean-preserving-spread check of a prior", cmd_mps_check);
  add_mu(mps, cfg);
  auto* prior_csv = mps->add_option("--prior", cfg.input, "Prior CDF as CSV");
  auto* three = mps->add_option("--three-point", cfg.three_point, "Three-point prior weight b");
  prior_csv->excludes(three);
  three->excludes(prior_csv);
  mps->add_option("--grid", cfg.grid, "Grid size")->check(CLI::PositiveNumber);

  auto* second = add("second-moment", "Solution under a known second moment", cmd_second_moment);
  second->add_option("--delta", cfg.delta, "Second moment in (0, 1)")->capture_default_str();

  add_mu(add("dominated", "Revenue of the dominated equilibrium", cmd_dominated), cfg);

  std::vector<const char*> argv{"maxmin"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kDomain;
  }

  try {
    for (const auto& [sub, body] : commands) {
      if (!sub->parsed()) continue;
      if (sub == mps && cfg.input.empty() && !cfg.three_point) {
        throw DomainError("mps-check needs --prior or --three-point");
      }
      return body();
    }
    return kDomain;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const std::exception& e) {
    // domain, mean-mismatch, monotonicity and degenerate inputs
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace maxmin::cli
