#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "patdens/words.hpp"

namespace patdens {

/// How the number of instance windows of a pattern is counted.
enum class CountingStrategy {
  kAllDistinct,  // every window of length >= |V| is an instance
  kPowerBlocks,  // V = u_1^{e_1} ... u_s^{e_s}, e_j >= 2, fresh distinct letters per root
  kShortBorder,  // V = xyx: bordered windows minus XX with X unbordered
  kCappedSweep,  // doubled V: matcher sweep over windows no longer than |V| * longest repeat
  kSweep,        // matcher on every window
};

std::string_view to_string(CountingStrategy s);

CountingStrategy select_strategy(const Pattern& p);

/// One block u^e of a power-block decomposition.
struct PowerBlock {
  int root_length = 0;  // |u|
  int exponent = 0;     // e
};

/// Decomposition used by kPowerBlocks; empty when the pattern has no such form.
std::vector<PowerBlock> power_blocks(const Pattern& p);

/// Number of windows [a, b) of `w` that are instances of `p`, using the
/// strategy picked by select_strategy().
std::uint64_t count_instance_windows(const Pattern& p, std::span<const Letter> w);

/// Reference count: the matcher on every window. Verdicts of short windows
/// (those whose letters pack into 56 bits) are memoized by content.
std::uint64_t count_instance_windows_sweep(const Pattern& p, std::span<const Letter> w,
                                           int alphabet_size, bool memoize = true);

/// Estimated work units to count one word of length n with strategy s.
double strategy_cost(CountingStrategy s, std::size_t n);

/// Start positions and root lengths of all e-th powers Y^e with |Y| >= min_root.
struct PowerOccurrence {
  std::uint32_t start = 0;
  std::uint32_t root = 0;
};
std::vector<PowerOccurrence> power_occurrences(std::span<const Letter> w, int exponent,
                                               int min_root = 1);

/// An upper bound on the length of the longest factor that occurs at two
/// distinct positions of w (overlaps allowed). Never below the true value.
std::size_t longest_repeat_bound(std::span<const Letter> w);

}  // namespace patdens
