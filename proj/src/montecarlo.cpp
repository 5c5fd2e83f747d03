#include "patdens/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "patdens/exact.hpp"
#include "patdens/matcher.hpp"
#include "patdens/sampling.hpp"
#include "patdens/window_counting.hpp"

namespace patdens {

namespace {

constexpr std::size_t kBlock = 256;

void require_grid(std::span<const std::size_t> n_list) {
  if (n_list.empty()) throw std::invalid_argument("length grid is empty");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1) throw std::invalid_argument("lengths must be at least 1");
    if (i > 0 && n_list[i] <= n_list[i - 1]) {
      throw std::invalid_argument("length grid must be strictly increasing");
    }
  }
}

std::size_t block_count(std::uint64_t samples) {
  return static_cast<std::size_t>((samples + kBlock - 1) / kBlock);
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

}  // namespace

double EstimationResult::standard_error() const {
  return sample_count > 0 ? std::sqrt(variance / static_cast<double>(sample_count)) : nan();
}

std::vector<double> sample_densities(const Pattern& p, int q, std::size_t n, std::uint64_t samples,
                                     std::uint64_t seed, const MonteCarloOptions& opts) {
  if (n < 1) throw std::invalid_argument("word length must be at least 1");
  const CountingStrategy strategy = select_strategy(p);
  check_budget(static_cast<double>(samples) * strategy_cost(strategy, n), opts.budget);
  const double pairs = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;

  std::vector<double> values(samples);
  parallel_blocks(block_count(samples), opts.workers, [&](std::size_t b) {
    std::vector<Letter> word(n);
    const std::uint64_t end = std::min<std::uint64_t>(samples, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) {
      SampleStream stream(seed, n, i);
      fill_word(q, word, stream);
      values[i] = static_cast<double>(count_instance_windows(p, word)) / pairs;
    }
  });
  return values;
}

EstimationResult summarize(std::span<const double> values, const Pattern& p, int q, std::size_t n,
                           std::uint64_t seed, int p_max) {
  if (p_max < 1) throw std::invalid_argument("p_max must be at least 1");
  EstimationResult r;
  r.pattern = p;
  r.q = q;
  r.n = n;
  r.seed = seed;
  r.sample_count = values.size();
  const auto count = static_cast<long double>(values.size());
  if (values.empty()) throw std::invalid_argument("no samples");

  const int top = 2 * std::max(p_max, 2);
  std::vector<long double> raw(static_cast<std::size_t>(top) + 1, 0.0L);
  for (double x : values) {
    long double power = 1.0L;
    for (int k = 0; k <= top; ++k) {
      raw[k] += power;
      power *= x;
    }
  }
  for (auto& m : raw) m /= count;
  const long double mean = raw[1];

  std::vector<long double> central(static_cast<std::size_t>(top) + 1, 0.0L);
  for (double x : values) {
    const long double dev = std::fabs(static_cast<long double>(x) - mean);
    long double power = 1.0L;
    for (int k = 0; k <= top; ++k) {
      central[k] += power;
      power *= dev;
    }
  }
  for (auto& m : central) m /= count;

  r.mean = static_cast<double>(mean);
  r.variance = values.size() > 1 ? static_cast<double>(central[2] * count / (count - 1)) : 0.0;
  const long double m4_excess = std::max(0.0L, central[4] - central[2] * central[2]);
  r.variance_ci = kZ99 * static_cast<double>(std::sqrt(m4_excess / count));
  r.ci_half_width = kZ99 * std::sqrt(r.variance / static_cast<double>(count));

  for (int k = 0; k <= p_max; ++k) {
    r.raw_moments.push_back(static_cast<double>(raw[k]));
    r.central_moments.push_back(static_cast<double>(central[k]));
    const long double raw_spread = std::max(0.0L, raw[2 * k] - raw[k] * raw[k]);
    const long double central_spread = std::max(0.0L, central[2 * k] - central[k] * central[k]);
    r.raw_ci.push_back(kZ99 * static_cast<double>(std::sqrt(raw_spread / count)));
    r.central_ci.push_back(kZ99 * static_cast<double>(std::sqrt(central_spread / count)));
  }
  return r;
}

EstimationResult estimate_density_moments(const Pattern& p, int q, std::size_t n,
                                          std::uint64_t samples, std::uint64_t seed, int p_max,
                                          const MonteCarloOptions& opts) {
  if (samples < 2) throw std::invalid_argument("at least two samples are required");
  const auto values = sample_densities(p, q, n, samples, seed, opts);
  return summarize(values, p, q, n, seed, p_max);
}

EstimationResult estimate_instance_probability(const Pattern& p, int q, std::size_t n,
                                               std::uint64_t samples, std::uint64_t seed,
                                               const MonteCarloOptions& opts) {
  if (samples < 1) throw std::invalid_argument("at least one sample is required");
  if (n < 1) throw std::invalid_argument("word length must be at least 1");
  check_budget(static_cast<double>(samples) * static_cast<double>(n), opts.budget);

  std::vector<double> values(samples);
  parallel_blocks(block_count(samples), opts.workers, [&](std::size_t b) {
    std::vector<Letter> word(n);
    WindowMatcher matcher(p);
    PrefixIndex index;
    const std::uint64_t end = std::min<std::uint64_t>(samples, (b + 1) * kBlock);
    for (std::uint64_t i = b * kBlock; i < end; ++i) {
      SampleStream stream(seed, n, i);
      fill_word(q, word, stream);
      index.reset(word);
      values[i] = matcher.matches(index, n) ? 1.0 : 0.0;
    }
  });
  return summarize(values, p, q, n, seed, 2);
}

std::vector<EstimationResult> density_sweep(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                            std::uint64_t samples, std::uint64_t seed, int p_max,
                                            const MonteCarloOptions& opts) {
  require_grid(n_list);
  std::vector<EstimationResult> out;
  out.reserve(n_list.size());
  for (std::size_t n : n_list) out.push_back(estimate_density_moments(p, q, n, samples, seed, p_max, opts));
  return out;
}

Trajectory dichotomy_rows(std::span<const EstimationResult> sweep) {
  Trajectory rows;
  for (const auto& e : sweep) {
    rows.push_back(TrajectoryRow{e.n, e.mean, static_cast<double>(e.n) * e.mean, e.ci_half_width,
                                 e.sample_count});
  }
  return rows;
}

Trajectory dichotomy_trajectory(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                std::uint64_t samples, std::uint64_t seed,
                                const MonteCarloOptions& opts) {
  return dichotomy_rows(density_sweep(p, q, n_list, samples, seed, 1, opts));
}

Trajectory variance_rows(std::span<const EstimationResult> sweep) {
  Trajectory rows;
  for (const auto& e : sweep) {
    const double n = static_cast<double>(e.n);
    const double log_n = std::log(n);
    const double denom = log_n * log_n * log_n * e.mean * e.mean;
    const double scaled = denom > 0 ? e.variance * n / denom : nan();
    rows.push_back(TrajectoryRow{e.n, e.variance, scaled, e.variance_ci, e.sample_count});
  }
  return rows;
}

Trajectory variance_scaling(const Pattern& p, int q, std::span<const std::size_t> n_list,
                            std::uint64_t samples, std::uint64_t seed,
                            const MonteCarloOptions& opts, bool exploratory) {
  if (!exploratory && !is_doubled(p)) {
    throw std::invalid_argument("variance scaling needs a doubled pattern (or exploratory mode)");
  }
  return variance_rows(density_sweep(p, q, n_list, samples, seed, 2, opts));
}

Trajectory moment_rows(std::span<const EstimationResult> sweep, int order, MomentKind kind) {
  Trajectory rows;
  for (const auto& e : sweep) {
    const auto& moments = kind == MomentKind::kRaw ? e.raw_moments : e.central_moments;
    const auto& ci = kind == MomentKind::kRaw ? e.raw_ci : e.central_ci;
    if (order < 1 || static_cast<std::size_t>(order) >= moments.size()) {
      throw std::invalid_argument("moment order not estimated");
    }
    const double n = static_cast<double>(e.n);
    const double scale = std::pow(n / std::log(n), order);
    rows.push_back(TrajectoryRow{e.n, moments[order], moments[order] * scale, ci[order], e.sample_count});
  }
  return rows;
}

std::vector<Trajectory> moment_scaling(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                       std::uint64_t samples, std::uint64_t seed, int p_max,
                                       MomentKind kind, const MonteCarloOptions& opts) {
  if (!is_doubled(p)) throw std::invalid_argument("moment scaling needs a doubled pattern");
  if (p_max < 1 || p_max > 4) throw std::invalid_argument("p_max must be in [1, 4]");
  const auto sweep = density_sweep(p, q, n_list, samples, seed, p_max, opts);
  std::vector<Trajectory> out;
  for (int order = 1; order <= p_max; ++order) out.push_back(moment_rows(sweep, order, kind));
  return out;
}

Trajectory lemma_base_diagnostic(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const MonteCarloOptions& opts) {
  require_grid(n_list);
  if (samples < 1) throw std::invalid_argument("at least one sample is required");
  const bool trivial = lemma_base_core(p).empty();
  Trajectory rows;
  for (std::size_t n : n_list) {
    if (n % static_cast<std::size_t>(p.gcd_multiplicity()) != 0) {
      throw std::invalid_argument("length " + std::to_string(n) + " is not a multiple of " +
                                  std::to_string(p.gcd_multiplicity()));
    }
    check_budget(static_cast<double>(samples) * static_cast<double>(n), opts.budget);
    std::vector<Word> instances;
    if (!trivial) {
      ExactOptions exact;
      exact.workers = opts.workers;
      instances = enumerate_instances(p, q, static_cast<int>(n), exact);
    }
    if (trivial || instances.empty()) {
      rows.push_back(TrajectoryRow{n, 1.0, 1.0, 0.0, samples});
      continue;
    }
    std::vector<double> values(samples);
    parallel_blocks(block_count(samples), opts.workers, [&](std::size_t b) {
      const std::uint64_t end = std::min<std::uint64_t>(samples, (b + 1) * kBlock);
      for (std::uint64_t i = b * kBlock; i < end; ++i) {
        SampleStream stream(seed, n, i);
        const Word& w = instances[stream.below(instances.size())];
        values[i] = has_small_core_witness(p, w) ? 1.0 : 0.0;
      }
    });
    const auto e = summarize(values, p, q, n, seed, 1);
    rows.push_back(TrajectoryRow{n, e.mean, e.mean, e.ci_half_width, samples});
  }
  return rows;
}

double tail_ratio(const Trajectory& rows) {
  if (rows.empty()) return nan();
  const std::size_t from = rows.size() / 2;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = from; i < rows.size(); ++i) {
    lo = std::min(lo, rows[i].scaled_estimate);
    hi = std::max(hi, rows[i].scaled_estimate);
  }
  return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace patdens
