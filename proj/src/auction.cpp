#include "maxmin/auction.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "maxmin/quadrature.hpp"
#include "maxmin/random.hpp"

namespace maxmin {

namespace {

void check_bid(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError(detail::describe("bids must lie in [0, 1]", s));
}

void validate_signal(const Cdf& signal) {
  if (std::abs(signal(1.0) - 1.0) > 1e-12) throw DomainError("signal CDF must equal 1 at x = 1");
}

constexpr std::uint64_t kChunk = 4096;

struct ChunkSums {
  double sum{0.0};
  double sum_sq{0.0};
};

}  // namespace

RandomReserveAuction::RandomReserveAuction(Cdf reserve, double tol_quad) : reserve_(std::move(reserve)), tol_quad_(tol_quad) {
  if (!(tol_quad > 0.0)) throw DomainError("quadrature tolerance must be positive");
  validate_signal(reserve_);
}

double RandomReserveAuction::reserve_integral(double lo, double hi) const {
  if (const auto* c = reserve_.as_reserve()) {
    return adaptive_simpson([c](double x) { return reserve_cdf(*c, x); }, lo, hi, tol_quad_);
  }
  if (reserve_.kind() == Cdf::Kind::Uniform) return 0.5 * (hi * hi - lo * lo);
  return reserve_.integral(hi) - reserve_.integral(lo);
}

double RandomReserveAuction::payment(double winner, double loser) const {
  return winner * reserve_(winner) - reserve_integral(loser, winner);
}

Outcome RandomReserveAuction::outcome(BidProfile bids) const {
  check_bid(bids.s1);
  check_bid(bids.s2);
  Outcome out;
  if (bids.s1 > bids.s2) {
    out.q1 = reserve_(bids.s1);
    out.t1 = payment(bids.s1, bids.s2);
  } else if (bids.s2 > bids.s1) {
    out.q2 = reserve_(bids.s2);
    out.t2 = payment(bids.s2, bids.s1);
  } else {
    const double x = bids.s1;
    const double h = reserve_(x);
    out.q1 = out.q2 = 0.5 * h;
    out.t1 = out.t2 = 0.5 * x * h;
  }
  return out;
}

Outcome outcome(const SolvedConstants<double>& c, BidProfile bids) {
  return RandomReserveAuction(Cdf::reserve(c), c.tol_quad).outcome(bids);
}

double sample_reserve(const SolvedConstants<double>& c, double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError(detail::describe("uniform draw must lie in [0, 1]", u));
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    if (reserve_cdf(c, mid) < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double x = std::abs(reserve_cdf(c, lo) - u) <= std::abs(reserve_cdf(c, hi) - u) ? lo : hi;
  // The CDF is flat to within rounding near 0, so judge convergence on the
  // bracket as well as on the residual.
  if (std::abs(reserve_cdf(c, x) - u) > c.tol_root && hi - lo > c.tol_root) {
    throw ConvergenceError(detail::describe("reserve inversion did not converge for u", u));
  }
  return x;
}

RevenueReport mc_revenue(const RandomReserveAuction& auction, const Cdf& signal, const MonteCarloOptions& options) {
  if (options.n_samples < 1) throw DomainError("Monte Carlo needs at least one sample");
  validate_signal(signal);

  const std::uint64_t n = options.n_samples;
  const std::uint64_t n_chunks = (n + kChunk - 1) / kChunk;
  std::vector<ChunkSums> chunks(n_chunks);

  auto run_chunk = [&](std::uint64_t chunk) {
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    CompensatedSum<double> sum;
    CompensatedSum<double> sum_sq;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double s1 = signal.quantile(counter_uniform(options.seed, i, 0));
      const double s2 = signal.quantile(counter_uniform(options.seed, i, 1));
      const double r = auction.outcome({s1, s2}).revenue();
      sum += r;
      sum_sq += r * r;
    }
    chunks[chunk] = {sum.value(), sum_sq.value()};
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));
  if (threads <= 1) {
    for (std::uint64_t k = 0; k < n_chunks; ++k) run_chunk(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t k = t; k < n_chunks; k += threads) run_chunk(k);
      });
    }
    for (auto& th : pool) th.join();
  }

  CompensatedSum<double> sum;
  CompensatedSum<double> sum_sq;
  for (const ChunkSums& c : chunks) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum.value() / nd;
  const double var = n > 1 ? std::max(0.0, (sum_sq.value() - nd * mean * mean) / (nd - 1.0)) : 0.0;

  RevenueReport report;
  report.method = "monte-carlo";
  report.value = mean;
  report.std_error = std::sqrt(var / nd);
  report.n_samples = n;
  report.seed = options.seed;
  return report;
}

RevenueReport mc_revenue(const SolvedConstants<double>& c, const Cdf& signal, std::uint64_t n_samples,
                         std::uint64_t seed) {
  MonteCarloOptions options;
  options.n_samples = n_samples;
  options.seed = seed;
  RevenueReport report = mc_revenue(RandomReserveAuction(Cdf::reserve(c), c.tol_quad), signal, options);
  report.mu = c.mu;
  report.a = c.a;
  return report;
}

double dominated_equilibrium_revenue(const SolvedConstants<double>& c, double mu) {
  if (!(mu > 0.0 && mu < 1.0)) throw DomainError(detail::describe("prior mean must lie in (0, 1)", mu));
  return outcome(c, {mu, 0.0}).revenue();
}

}  // namespace maxmin
