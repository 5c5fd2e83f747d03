#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

#include "patdens/words.hpp"

namespace patdens {

/// Independent random stream for one sample of one experiment.
///
/// The stream depends only on (seed, n, index), so a sample draws the same
/// letters whichever worker evaluates it.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t n, std::uint64_t index);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Fills `out` with uniform letters over {0, ..., q-1}.
void fill_word(int q, std::span<Letter> out, SampleStream& stream);

/// Uniform word of Sigma^n.
Word sample_word(int q, std::size_t n, SampleStream& stream);

}  // namespace patdens
