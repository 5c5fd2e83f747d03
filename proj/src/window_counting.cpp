#include "patdens/window_counting.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <unordered_map>

#include "patdens/matcher.hpp"

namespace patdens {

std::string_view to_string(CountingStrategy s) {
  switch (s) {
    case CountingStrategy::kAllDistinct: return "all-distinct";
    case CountingStrategy::kPowerBlocks: return "power-blocks";
    case CountingStrategy::kShortBorder: return "short-border";
    case CountingStrategy::kCappedSweep: return "capped-sweep";
    case CountingStrategy::kSweep: return "sweep";
  }
  return "unknown";
}

std::vector<PowerBlock> power_blocks(const Pattern& p) {
  const auto v = p.symbols();
  const std::size_t m = v.size();
  std::vector<bool> seen(static_cast<std::size_t>(p.variable_count()), false);
  std::vector<PowerBlock> blocks;
  std::size_t i = 0;
  while (i < m) {
    const int head = v[i];
    std::size_t j = i + 1;
    while (j < m && v[j] != head) ++j;
    if (j == m) return {};
    const std::size_t root = j - i;
    for (std::size_t t = i; t < j; ++t) {
      if (seen[v[t]]) return {};
      seen[v[t]] = true;  // also rejects a letter repeated inside the root
    }
    std::size_t e = 1;
    while (i + (e + 1) * root <= m &&
           std::equal(v.begin() + static_cast<std::ptrdiff_t>(i),
                      v.begin() + static_cast<std::ptrdiff_t>(j),
                      v.begin() + static_cast<std::ptrdiff_t>(i + e * root))) {
      ++e;
    }
    for (std::size_t t = i; t < j; ++t) {
      if (p.multiplicity(v[t]) != static_cast<int>(e)) return {};
    }
    blocks.push_back(PowerBlock{static_cast<int>(root), static_cast<int>(e)});
    i += e * root;
  }
  return blocks;
}

CountingStrategy select_strategy(const Pattern& p) {
  if (p.variable_count() == static_cast<int>(p.size())) return CountingStrategy::kAllDistinct;
  if (!power_blocks(p).empty()) return CountingStrategy::kPowerBlocks;
  if (p == Pattern{0, 1, 0}) return CountingStrategy::kShortBorder;
  if (is_doubled(p)) return CountingStrategy::kCappedSweep;
  return CountingStrategy::kSweep;
}

double strategy_cost(CountingStrategy s, std::size_t n) {
  const double dn = static_cast<double>(n);
  switch (s) {
    case CountingStrategy::kAllDistinct: return dn;
    case CountingStrategy::kPowerBlocks: return dn * (1.0 + std::ceil(std::log2(dn + 1.0)));
    case CountingStrategy::kShortBorder: return dn * dn / 2.0;
    case CountingStrategy::kCappedSweep:
    case CountingStrategy::kSweep: return dn * dn;
  }
  return dn * dn;
}

namespace {

/// Calls visit(first, last, l) for every maximal run of starts
/// first <= s <= last at which an e-th power with root length l begins.
std::uint64_t load8(const Letter* p) {
  std::uint64_t v;
  std::memcpy(&v, p, sizeof v);
  return v;
}

/// bits &= bits >> k over a little-endian bitset.
void and_shifted(std::vector<std::uint64_t>& bits, std::size_t k) {
  const std::size_t words = bits.size();
  const std::size_t skip = k / 64;
  const unsigned rem = static_cast<unsigned>(k % 64);
  for (std::size_t i = 0; i < words; ++i) {
    const std::size_t lo = i + skip;
    std::uint64_t shifted = 0;
    if (lo < words) {
      shifted = bits[lo] >> rem;
      if (rem != 0 && lo + 1 < words) shifted |= bits[lo + 1] << (64 - rem);
    }
    bits[i] &= shifted;
  }
}

constexpr std::size_t kProbeFrom = 32;

/// Bit planes of a word: bit i of plane k is bit k of w[i].
std::vector<std::vector<std::uint64_t>> bit_planes(std::span<const Letter> w) {
  const Letter top = w.empty() ? 0 : *std::max_element(w.begin(), w.end());
  const int count = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(top))));
  std::vector<std::vector<std::uint64_t>> planes(static_cast<std::size_t>(count),
                                                 std::vector<std::uint64_t>((w.size() + 63) / 64, 0));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (int k = 0; k < count; ++k) {
      planes[k][i / 64] |= static_cast<std::uint64_t>((w[i] >> k) & 1U) << (i % 64);
    }
  }
  return planes;
}

/// Word i of the bitset shifted right by k.
std::uint64_t shifted_word(const std::vector<std::uint64_t>& bits, std::size_t i, std::size_t k) {
  const std::size_t lo = i + k / 64;
  const unsigned rem = static_cast<unsigned>(k % 64);
  if (lo >= bits.size()) return 0;
  std::uint64_t out = bits[lo] >> rem;
  if (rem != 0 && lo + 1 < bits.size()) out |= bits[lo + 1] << (64 - rem);
  return out;
}

template <class Visit>
void scan_powers(std::span<const Letter> w, int exponent, int min_root, Visit&& visit) {
  const std::size_t n = w.size();
  const auto e = static_cast<std::size_t>(exponent);
  if (e < 2) return;
  const Letter* text = w.data();
  std::vector<std::vector<std::uint64_t>> planes;
  std::vector<std::uint64_t> bits;
  for (std::size_t l = static_cast<std::size_t>(std::max(1, min_root)); e * l <= n; ++l) {
    const std::size_t need = (e - 1) * l;
    if (l < kProbeFrom) {
      // Short roots: bit s of the mask says w[s] == w[s+l]; a power starts
      // at s iff the mask holds `need` ones from s on.
      if (planes.empty()) planes = bit_planes(w);
      const std::size_t m = n - l;
      bits.assign((m + 63) / 64, ~std::uint64_t{0});
      for (const auto& plane : planes) {
        for (std::size_t i = 0; i < bits.size(); ++i) bits[i] &= ~(plane[i] ^ shifted_word(plane, i, l));
      }
      if (m % 64 != 0) bits.back() &= (std::uint64_t{1} << (m % 64)) - 1;
      std::size_t have = 1;
      while (have * 2 <= need) {
        and_shifted(bits, have);
        have *= 2;
      }
      if (have < need) and_shifted(bits, need - have);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        for (std::uint64_t x = bits[i]; x != 0; x &= x - 1) {
          const std::size_t s = i * 64 + static_cast<std::size_t>(std::countr_zero(x));
          visit(s, s, l);
        }
      }
      continue;
    }
    // A run of positions p with w[p] == w[p+l] of length >= need >= l
    // contains 8 consecutive positions starting at a multiple of l - 7,
    // which are compared at once.
    const std::size_t step = l - 7;
    std::size_t j = 0;
    while (j + l < n) {
      const bool hit = j + l + 8 <= n ? load8(text + j) == load8(text + j + l) : text[j] == text[j + l];
      if (!hit) {
        j += step;
        continue;
      }
      std::size_t lo = j;
      while (lo > 0 && text[lo - 1] == text[lo - 1 + l]) --lo;
      std::size_t hi = j + 1;
      while (hi + l < n && text[hi] == text[hi + l]) ++hi;
      if (hi - lo >= need) visit(lo, hi - need, l);
      while (j <= hi) j += step;
    }
  }
}

}  // namespace

std::vector<PowerOccurrence> power_occurrences(std::span<const Letter> w, int exponent,
                                               int min_root) {
  std::vector<PowerOccurrence> out;
  scan_powers(w, exponent, min_root, [&](std::size_t first, std::size_t last, std::size_t l) {
    for (std::size_t s = first; s <= last; ++s) {
      out.push_back(PowerOccurrence{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(l)});
    }
  });
  return out;
}

std::size_t longest_repeat_bound(std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (n < 2) return 0;
  constexpr std::uint64_t kMod = (std::uint64_t{1} << 61) - 1;
  constexpr std::uint64_t kBase = 1000003;
  auto mul = [](std::uint64_t a, std::uint64_t b) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    std::uint64_t r = static_cast<std::uint64_t>(prod >> 61) + static_cast<std::uint64_t>(prod & kMod);
    return r >= kMod ? r - kMod : r;
  };
  std::vector<std::uint64_t> prefix(n + 1, 0), power(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = (mul(prefix[i], kBase) + w[i] + 1) % kMod;
    power[i + 1] = mul(power[i], kBase);
  }
  std::vector<std::uint64_t> hashes;
  // Equal factors always hash equal, so a "no" answer is exact and the
  // binary search never undershoots.
  auto repeated = [&](std::size_t l) {
    hashes.clear();
    for (std::size_t i = 0; i + l <= n; ++i) {
      const std::uint64_t h = (prefix[i + l] + kMod - mul(prefix[i], power[l])) % kMod;
      hashes.push_back(h);
    }
    std::sort(hashes.begin(), hashes.end());
    return std::adjacent_find(hashes.begin(), hashes.end()) != hashes.end();
  };
  std::size_t lo = 0, hi = n - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo + 1) / 2;
    if (repeated(mid)) lo = mid; else hi = mid - 1;
  }
  return lo;
}

namespace {

class SweepCounter {
 public:
  SweepCounter(const Pattern& p, int alphabet_size, bool memoize)
      : matcher_(p), memoize_(memoize),
        bits_(std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(alphabet_size - 1))))) {}

  std::uint64_t count(std::span<const Letter> w, std::size_t max_len) {
    std::uint64_t total = 0;
    const std::size_t m = matcher_.pattern().size();
    for (std::size_t a = 0; a < w.size(); ++a) {
      const std::size_t top = std::min(w.size() - a, max_len);
      if (top < m) continue;
      index_.reset(w.subspan(a, top));
      std::uint64_t packed = 0;
      for (std::size_t len = 1; len <= top; ++len) {
        const bool packable = memoize_ && len * static_cast<std::size_t>(bits_) <= 56;
        if (packable) packed |= static_cast<std::uint64_t>(w[a + len - 1]) << ((len - 1) * bits_);
        if (len < m) continue;
        if (packable) {
          const std::uint64_t key = (static_cast<std::uint64_t>(len) << 56) | packed;
          auto it = memo_.find(key);
          if (it == memo_.end()) it = memo_.emplace(key, matcher_.matches(index_, len)).first;
          total += it->second ? 1 : 0;
        } else {
          total += matcher_.matches(index_, len) ? 1 : 0;
        }
      }
    }
    return total;
  }

 private:
  WindowMatcher matcher_;
  PrefixIndex index_;
  bool memoize_;
  int bits_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

std::uint64_t count_all_distinct(std::size_t m, std::size_t n) {
  if (n < m) return 0;
  const std::uint64_t t = n - m + 1;
  return t * (t + 1) / 2;
}

std::uint64_t count_power_blocks(const std::vector<PowerBlock>& blocks, std::span<const Letter> w) {
  const std::size_t n = w.size();
  if (blocks.size() == 1) {
    std::uint64_t count = 0;
    scan_powers(w, blocks[0].exponent, blocks[0].root_length,
                [&](std::size_t first, std::size_t last, std::size_t) { count += last - first + 1; });
    return count;
  }

  // Occurrence lists bucketed by start (CSR), shared by equal blocks.
  struct Table {
    int exponent = 0;
    int min_root = 0;
    std::vector<std::uint32_t> offset;
    std::vector<std::uint32_t> root;
  };
  std::vector<Table> tables;
  std::vector<std::size_t> table_of;
  for (const PowerBlock& b : blocks) {
    auto same = std::find_if(tables.begin(), tables.end(), [&](const Table& t) {
      return t.exponent == b.exponent && t.min_root == b.root_length;
    });
    if (same != tables.end()) {
      table_of.push_back(static_cast<std::size_t>(same - tables.begin()));
      continue;
    }
    const auto occ = power_occurrences(w, b.exponent, b.root_length);
    Table t;
    t.exponent = b.exponent;
    t.min_root = b.root_length;
    t.offset.assign(n + 2, 0);
    for (const auto& o : occ) ++t.offset[o.start + 1];
    for (std::size_t i = 0; i <= n; ++i) t.offset[i + 1] += t.offset[i];
    t.root.resize(occ.size());
    std::vector<std::uint32_t> fill(t.offset.begin(), t.offset.end() - 1);
    for (const auto& o : occ) t.root[fill[o.start]++] = o.root;
    table_of.push_back(tables.size());
    tables.push_back(std::move(t));
  }

  std::uint64_t total = 0;
  std::vector<std::uint32_t> frontier, next;
  for (std::size_t a = 0; a < n; ++a) {
    frontier.assign(1, static_cast<std::uint32_t>(a));
    for (std::size_t j = 0; j < blocks.size() && !frontier.empty(); ++j) {
      const Table& t = tables[table_of[j]];
      const auto e = static_cast<std::uint32_t>(blocks[j].exponent);
      next.clear();
      for (std::uint32_t p : frontier) {
        if (p >= n) continue;
        for (std::uint32_t s = t.offset[p]; s < t.offset[p + 1]; ++s) next.push_back(p + e * t.root[s]);
      }
      // Ends reached from a single start are distinct already.
      if (frontier.size() > 1) {
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
      }
      frontier.swap(next);
    }
    total += frontier.size();
  }
  return total;
}

bool unbordered(std::span<const Letter> x) {
  std::vector<int> pi(x.size(), 0);
  for (std::size_t i = 1; i < x.size(); ++i) {
    int b = pi[i - 1];
    while (b > 0 && x[i] != x[static_cast<std::size_t>(b)]) b = pi[static_cast<std::size_t>(b) - 1];
    if (x[i] == x[static_cast<std::size_t>(b)]) ++b;
    pi[i] = b;
  }
  return x.empty() || pi.back() == 0;
}

std::uint64_t count_short_border(std::span<const Letter> w) {
  const std::size_t n = w.size();
  std::uint64_t bordered = 0;
  // [a, b) is bordered iff some c in (a, b) has c + lcp(a, c) >= b.
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const Letter head = w[a];
    std::size_t reach = 0;
    for (std::size_t c = a + 1; c < n; ++c) {
      if (w[c] == head) {
        std::size_t l = 1;
        while (c + l < n && w[a + l] == w[c + l]) ++l;
        reach = std::max(reach, c + l);
      }
      if (reach > c) ++bordered;
    }
  }
  std::uint64_t excluded = 0;
  for (const auto& sq : power_occurrences(w, 2, 1)) {
    if (unbordered(w.subspan(sq.start, sq.root))) ++excluded;
  }
  return bordered - excluded;
}

}  // namespace

std::uint64_t count_instance_windows_sweep(const Pattern& p, std::span<const Letter> w,
                                           int alphabet_size, bool memoize) {
  SweepCounter counter(p, alphabet_size, memoize);
  return counter.count(w, w.size());
}

std::uint64_t count_instance_windows(const Pattern& p, std::span<const Letter> w) {
  switch (select_strategy(p)) {
    case CountingStrategy::kAllDistinct:
      return count_all_distinct(p.size(), w.size());
    case CountingStrategy::kPowerBlocks:
      return count_power_blocks(power_blocks(p), w);
    case CountingStrategy::kShortBorder:
      return count_short_border(w);
    case CountingStrategy::kCappedSweep: {
      const std::size_t cap = p.size() * longest_repeat_bound(w);
      SweepCounter counter(p, kMaxAlphabet, false);
      return counter.count(w, cap);
    }
    case CountingStrategy::kSweep: {
      SweepCounter counter(p, kMaxAlphabet, false);
      return counter.count(w, w.size());
    }
  }
  return 0;
}

}  // namespace patdens
