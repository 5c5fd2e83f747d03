#include "patdens/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "patdens/matcher.hpp"
#include "patdens/window_counting.hpp"

namespace patdens {

namespace {

void require_alphabet(int q) {
  if (q < 1 || q > kMaxAlphabet) throw std::invalid_argument("alphabet size must be in [1, 256]");
}

void require_length(int n) {
  if (n < 1) throw std::invalid_argument("word length must be at least 1");
}

/// Visits every length-n word over q letters, split into contiguous ranges
/// of the lexicographic order. make_visitor(block) is called once per range
/// on a worker thread and returns the callable that receives each word.
template <class MakeVisitor>
std::size_t for_each_word(int q, int n, const ExactOptions& opts, MakeVisitor&& make_visitor) {
  require_alphabet(q);
  require_length(n);
  const double total_d = std::pow(static_cast<double>(q), n);
  check_budget(total_d * n, opts.budget);
  const auto total = static_cast<std::uint64_t>(std::llround(total_d));
  const std::size_t blocks = static_cast<std::size_t>(std::min<std::uint64_t>(total, 256));

  parallel_blocks(blocks, opts.workers, [&](std::size_t b) {
    const std::uint64_t begin = total * b / blocks;
    const std::uint64_t end = total * (b + 1) / blocks;
    std::vector<Letter> word(static_cast<std::size_t>(n), 0);
    std::uint64_t rest = begin;
    for (int i = n - 1; i >= 0; --i) {
      word[static_cast<std::size_t>(i)] = static_cast<Letter>(rest % static_cast<std::uint64_t>(q));
      rest /= static_cast<std::uint64_t>(q);
    }
    auto visit = make_visitor(b);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      visit(std::span<const Letter>(word));
      for (int i = n - 1; i >= 0; --i) {
        auto& c = word[static_cast<std::size_t>(i)];
        if (c + 1 < q) {
          ++c;
          break;
        }
        c = 0;
      }
    }
  });
  return blocks;
}

BigInt power(int base, int exponent) {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exponent));
  return out;
}

void require_doubled(const Pattern& p) {
  if (!is_doubled(p)) throw std::invalid_argument("pattern " + p.str() + " is not doubled");
}

}  // namespace

CompositionSpec CompositionSpec::of(const Pattern& p) {
  return CompositionSpec{std::vector<int>(p.multiplicities().begin(), p.multiplicities().end())};
}

int CompositionSpec::gcd() const {
  return std::accumulate(multiplicities.begin(), multiplicities.end(), 0,
                         [](int a, int b) { return std::gcd(a, b); });
}

int CompositionSpec::min() const {
  return *std::min_element(multiplicities.begin(), multiplicities.end());
}

BigInt instance_count(const Pattern& p, int q, int n, const ExactOptions& opts) {
  std::vector<std::uint64_t> counts(256, 0);
  for_each_word(q, n, opts, [&](std::size_t b) {
    return [&count = counts[b], matcher = WindowMatcher(p), index = PrefixIndex()](
               std::span<const Letter> w) mutable {
      index.reset(w);
      if (matcher.matches(index, w.size())) ++count;
    };
  });
  return big(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
}

Rational instance_probability(const Pattern& p, int q, int n, const ExactOptions& opts) {
  Rational r(instance_count(p, q, n, opts), power(q, n));
  r.canonicalize();
  return r;
}

Rational expected_density(const Pattern& p, int q, int n, const ExactOptions& opts) {
  require_alphabet(q);
  require_length(n);
  Rational sum = 0;
  for (int m = static_cast<int>(p.size()); m <= n; ++m) {
    sum += Rational(n + 1 - m) * instance_probability(p, q, m, opts);
  }
  const long long pairs = static_cast<long long>(n) * (n + 1) / 2;
  Rational out = sum / Rational(big(static_cast<std::uint64_t>(pairs)));
  out.canonicalize();
  return out;
}

Rational expected_hom(const Pattern& p, int q, int n) {
  require_alphabet(q);
  require_length(n);
  const auto un = static_cast<std::size_t>(n);
  // ways[L][S]: image-length vectors with total image length L and letter sum S.
  std::vector<std::vector<BigInt>> ways(un + 1, std::vector<BigInt>(un + 1, 0));
  ways[0][0] = 1;
  for (int r : p.multiplicities()) {
    std::vector<std::vector<BigInt>> next(un + 1, std::vector<BigInt>(un + 1, 0));
    for (std::size_t L = 0; L <= un; ++L) {
      for (std::size_t S = 0; S <= L; ++S) {
        if (ways[L][S] == 0) continue;
        for (std::size_t l = 1; L + static_cast<std::size_t>(r) * l <= un; ++l) {
          next[L + static_cast<std::size_t>(r) * l][S + l] += ways[L][S];
        }
      }
    }
    ways = std::move(next);
  }
  Rational total = 0;
  for (std::size_t L = 1; L <= un; ++L) {
    for (std::size_t S = 1; S <= L; ++S) {
      if (ways[L][S] == 0) continue;
      Rational term(ways[L][S] * static_cast<unsigned long>(un - L + 1),
                    power(q, static_cast<int>(L - S)));
      term.canonicalize();
      total += term;
    }
  }
  return total;
}

BigInt count_compositions(const CompositionSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("composition target must be nonnegative");
  const auto un = static_cast<std::size_t>(n);
  std::vector<BigInt> ways(un + 1, 0);
  ways[0] = 1;
  for (int r : spec.multiplicities) {
    if (r < 1) throw std::invalid_argument("multiplicities must be positive");
    std::vector<BigInt> next(un + 1, 0);
    for (std::size_t t = 0; t <= un; ++t) {
      if (ways[t] == 0) continue;
      for (std::size_t s = t + static_cast<std::size_t>(r); s <= un; s += static_cast<std::size_t>(r)) {
        next[s] += ways[t];
      }
    }
    ways = std::move(next);
  }
  return ways[un];
}

std::optional<std::vector<int>> frobenius_coeffs(const CompositionSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const int k = spec.k();
  if (k == 0) return std::nullopt;
  const auto target = static_cast<std::size_t>(spec.gcd()) * static_cast<std::size_t>(n);
  // reachable[j][t]: t is a positive combination of the first j multiplicities.
  std::vector<std::vector<char>> reachable(static_cast<std::size_t>(k) + 1,
                                           std::vector<char>(target + 1, 0));
  reachable[0][0] = 1;
  for (int j = 0; j < k; ++j) {
    const auto r = static_cast<std::size_t>(spec.multiplicities[j]);
    for (std::size_t t = 0; t <= target; ++t) {
      if (!reachable[j][t]) continue;
      for (std::size_t s = t + r; s <= target; s += r) reachable[j + 1][s] = 1;
    }
  }
  if (!reachable[k][target]) return std::nullopt;
  std::vector<int> a(static_cast<std::size_t>(k), 0);
  std::size_t rest = target;
  for (int j = k - 1; j >= 0; --j) {
    const auto r = static_cast<std::size_t>(spec.multiplicities[j]);
    for (std::size_t c = 1; c * r <= rest; ++c) {
      if (reachable[j][rest - c * r]) {
        a[j] = static_cast<int>(c);
        rest -= c * r;
        break;
      }
    }
  }
  return a;
}

double generalized_binomial(double x, int y) {
  double out = 1.0;
  for (int i = 0; i < y; ++i) out *= (x - i) / (i + 1);
  return out;
}

double instance_count_bound(const Pattern& p, int q, int n) {
  require_doubled(p);
  if (q < 2) throw std::invalid_argument("bound requires q >= 2");
  const int k = p.variable_count();
  const double d = p.gcd_multiplicity();
  const double r = p.min_multiplicity();
  return generalized_binomial(n / d + k + 1, k + 1) * std::pow(static_cast<double>(q), n * (1.0 - r) / r);
}

double tail_bound(const Pattern& p, int q, int n, double f_value) {
  require_doubled(p);
  if (!(f_value > 0)) throw std::invalid_argument("f must be positive");
  const int k = p.variable_count();
  const double r = p.min_multiplicity();
  return std::pow(static_cast<double>(n), k + 3) * std::pow(static_cast<double>(q), f_value * (1.0 - r) / r);
}

Rational tail_probability(const Pattern& p, int q, int n, double f_value,
                          const ExactOptions& opts) {
  const double threshold = n * f_value;
  std::vector<std::uint64_t> counts(256, 0);
  for_each_word(q, n, opts, [&](std::size_t b) {
    return [&count = counts[b], &p, threshold](std::span<const Letter> w) {
      if (static_cast<double>(count_instance_windows(p, w)) > threshold) ++count;
    };
  });
  Rational r(big(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})), power(q, n));
  r.canonicalize();
  return r;
}

std::vector<BigInt> unbordered_counts(int q, int n_max) {
  std::vector<BigInt> u;
  if (n_max < 1) return u;
  u.reserve(static_cast<std::size_t>(n_max));
  u.emplace_back(q);
  for (int len = 2; len <= n_max; ++len) {
    const BigInt& prev = u[static_cast<std::size_t>(len - 2)];
    if (len % 2 == 1) {
      u.push_back(prev * q);
    } else {
      u.push_back(prev * q - u[static_cast<std::size_t>(len / 2 - 1)]);
    }
  }
  return u;
}

double bordered_limit(int q, double tol) {
  if (q < 2) throw std::invalid_argument("bordered limit requires q >= 2");
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  // v_n = u_n / q^n: v_{2m+1} = v_{2m}, v_{2m} = v_{2m-1} - v_m q^{-m}.
  // Every later step removes at most q^{-m}, so the tail after 2m is at most
  // q^{-m} / (q - 1).
  std::vector<long double> v{1.0L};
  const long double inv_q = 1.0L / q;
  long double scale = 1.0L;  // q^{-m}
  for (int m = 1;; ++m) {
    scale *= inv_q;
    v.push_back(v.back() - v[static_cast<std::size_t>(m - 1)] * scale);  // v_{2m}
    if (scale / (q - 1) < tol / 16) break;
    v.push_back(v.back());  // v_{2m+1}
  }
  return static_cast<double>(1.0L - v.back());
}

std::vector<Word> enumerate_instances(const Pattern& p, int q, int n, const ExactOptions& opts) {
  std::vector<std::vector<Word>> found(256);
  for_each_word(q, n, opts, [&](std::size_t b) {
    return [&out = found[b], q, matcher = WindowMatcher(p), index = PrefixIndex()](
               std::span<const Letter> w) mutable {
      index.reset(w);
      if (matcher.matches(index, w.size())) out.emplace_back(std::vector<Letter>(w.begin(), w.end()), q);
    };
  });
  std::vector<Word> out;
  for (auto& block : found) {
    std::move(block.begin(), block.end(), std::back_inserter(out));
  }
  return out;
}

std::vector<int> lemma_base_core(const Pattern& p) {
  const int r = p.min_multiplicity();
  std::vector<int> core;
  for (int v : p.symbols()) {
    if (p.multiplicity(v) > r) core.push_back(v);
  }
  return core;
}

bool has_small_core_witness(const Pattern& p, const Word& instance) {
  const int r = p.min_multiplicity();
  const auto n = static_cast<long long>(instance.size());
  PrefixIndex index(instance.letters());
  WindowMatcher matcher(p);
  bool found = false;
  matcher.for_each_witness(index, instance.size(), [&](std::span<const int> lengths) {
    long long core = 0;
    for (int v = 0; v < p.variable_count(); ++v) {
      if (p.multiplicity(v) > r) core += static_cast<long long>(p.multiplicity(v)) * lengths[v];
    }
    found = core * core < n;
    return !found;
  });
  return found;
}

Rational lemma_base_fraction(const Pattern& p, int q, int n, const ExactOptions& opts) {
  require_length(n);
  if (n % p.gcd_multiplicity() != 0) {
    throw std::invalid_argument("length must be a multiple of the multiplicity gcd " +
                                std::to_string(p.gcd_multiplicity()));
  }
  if (lemma_base_core(p).empty()) return Rational(1);
  const auto instances = enumerate_instances(p, q, n, opts);
  if (instances.empty()) return Rational(1);
  std::uint64_t good = 0;
  for (const Word& w : instances) good += has_small_core_witness(p, w) ? 1 : 0;
  return make_rational(good, instances.size());
}

}  // namespace patdens
