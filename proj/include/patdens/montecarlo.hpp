#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "patdens/parallel.hpp"
#include "patdens/words.hpp"

namespace patdens {

struct MonteCarloOptions {
  /// Maximum samples * (per-word counting cost) work units per estimate.
  std::uint64_t budget = budget_from_env(kDefaultSampleBudget);
  unsigned workers = 0;
};

/// Two-sided 99% normal quantile used for every confidence half-width.
inline constexpr double kZ99 = 2.5758293035489004;

/// Summary of one Monte Carlo estimate at a fixed (pattern, q, n).
///
/// raw_moments[p] = mean of X^p and central_moments[p] = mean of |X - mean|^p
/// for p = 0..p_max (index 0 holds 1). *_ci[p] are 99% half-widths of those
/// moment estimates.
struct EstimationResult {
  Pattern pattern{0};
  int q = 2;
  std::size_t n = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double variance_ci = 0;
  std::vector<double> raw_moments;
  std::vector<double> central_moments;
  std::vector<double> raw_ci;
  std::vector<double> central_ci;
  double ci_half_width = 0;

  double standard_error() const;
};

/// Per-sample density values delta(p, W) for sample indices [0, samples).
std::vector<double> sample_densities(const Pattern& p, int q, std::size_t n, std::uint64_t samples,
                                     std::uint64_t seed, const MonteCarloOptions& opts = {});

/// Summarizes per-sample values in index order (deterministic).
EstimationResult summarize(std::span<const double> values, const Pattern& p, int q, std::size_t n,
                           std::uint64_t seed, int p_max);

EstimationResult estimate_density_moments(const Pattern& p, int q, std::size_t n,
                                          std::uint64_t samples, std::uint64_t seed, int p_max = 2,
                                          const MonteCarloOptions& opts = {});

/// Mean of delta_sur(p, W_n).
EstimationResult estimate_instance_probability(const Pattern& p, int q, std::size_t n,
                                               std::uint64_t samples, std::uint64_t seed,
                                               const MonteCarloOptions& opts = {});

struct TrajectoryRow {
  std::size_t n = 0;
  double estimate = 0;
  double scaled_estimate = 0;
  double ci_half_width = 0;
  std::uint64_t sample_count = 0;
};

using Trajectory = std::vector<TrajectoryRow>;

/// Density estimates over a strictly increasing grid of lengths.
std::vector<EstimationResult> density_sweep(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                            std::uint64_t samples, std::uint64_t seed, int p_max,
                                            const MonteCarloOptions& opts = {});

/// Rows of (mean, n * mean).
Trajectory dichotomy_rows(std::span<const EstimationResult> sweep);
Trajectory dichotomy_trajectory(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                std::uint64_t samples, std::uint64_t seed,
                                const MonteCarloOptions& opts = {});

/// Rows of (Var, Var * n / ((ln n)^3 mean^2)).
Trajectory variance_rows(std::span<const EstimationResult> sweep);
/// Rejects nondoubled patterns unless `exploratory` is set.
Trajectory variance_scaling(const Pattern& p, int q, std::span<const std::size_t> n_list,
                            std::uint64_t samples, std::uint64_t seed,
                            const MonteCarloOptions& opts = {}, bool exploratory = false);

enum class MomentKind { kRaw, kCentral };

/// Rows of (moment_p, moment_p * (n / ln n)^p) for one order p.
Trajectory moment_rows(std::span<const EstimationResult> sweep, int order, MomentKind kind);
/// Element p-1 holds the trajectory of order p, for p = 1..p_max (p_max <= 4).
std::vector<Trajectory> moment_scaling(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                       std::uint64_t samples, std::uint64_t seed, int p_max,
                                       MomentKind kind, const MonteCarloOptions& opts = {});

/// Fraction of uniformly sampled length-n instances that admit a witness with
/// |phi(U)| < sqrt(n). Instances come from exhaustive enumeration, so only
/// small n are practical.
Trajectory lemma_base_diagnostic(const Pattern& p, int q, std::span<const std::size_t> n_list,
                                 std::uint64_t samples, std::uint64_t seed,
                                 const MonteCarloOptions& opts = {});

/// max / min of scaled_estimate over the last ceil(rows / 2) rows.
double tail_ratio(const Trajectory& rows);

}  // namespace patdens
