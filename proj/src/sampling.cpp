#include "patdens/sampling.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <vector>

namespace patdens {

namespace {

std::seed_seq make_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t index) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed), hi(seed), lo(n), hi(n), lo(index), hi(index), 0x70617464U};
}

}  // namespace

SampleStream::SampleStream(std::uint64_t seed, std::uint64_t n, std::uint64_t index) {
  auto seq = make_seed(seed, n, index);
  engine_.seed(seq);
}

std::uint64_t SampleStream::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // Multiply-shift with rejection of the biased low region.
  std::uint64_t x = next();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next();
      m = static_cast<unsigned __int128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

void fill_word(int q, std::span<Letter> out, SampleStream& stream) {
  if (q < 1 || q > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in [1, 256]");
  if (q == 1) {
    std::fill(out.begin(), out.end(), Letter{0});
    return;
  }
  const auto uq = static_cast<unsigned>(q);
  if (std::has_single_bit(uq)) {
    const int bits = std::countr_zero(uq);
    const int per_draw = 64 / bits;
    const std::uint64_t mask = uq - 1;
    std::size_t i = 0;
    while (i < out.size()) {
      std::uint64_t x = stream.next();
      for (int j = 0; j < per_draw && i < out.size(); ++j, ++i) {
        out[i] = static_cast<Letter>(x & mask);
        x >>= bits;
      }
    }
    return;
  }
  for (auto& c : out) c = static_cast<Letter>(stream.below(uq));
}

Word sample_word(int q, std::size_t n, SampleStream& stream) {
  std::vector<Letter> letters(n);
  fill_word(q, letters, stream);
  return Word(std::move(letters), q);
}

}  // namespace patdens
