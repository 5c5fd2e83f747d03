#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "patdens/parallel.hpp"
#include "patdens/rational.hpp"
#include "patdens/words.hpp"

namespace patdens {

/// Options for operations that enumerate the whole word space.
struct ExactOptions {
  /// Maximum q^n * n work units per enumeration of length-n words.
  std::uint64_t budget = budget_from_env(kDefaultExactBudget);
  unsigned workers = 0;
};

/// Multiplicity vector (r_1, ..., r_k) of a pattern.
struct CompositionSpec {
  std::vector<int> multiplicities;

  static CompositionSpec of(const Pattern& p);

  int k() const { return static_cast<int>(multiplicities.size()); }
  int gcd() const;
  int min() const;
};

/// Number of length-n words over a q-letter alphabet that are instances of p.
BigInt instance_count(const Pattern& p, int q, int n, const ExactOptions& opts = {});

/// I_n(p, q): the fraction of length-n words that are instances of p.
Rational instance_probability(const Pattern& p, int q, int n, const ExactOptions& opts = {});

/// E(delta(p, W_n)) = C(n+1, 2)^{-1} * sum_{m=1..n} (n+1-m) I_m.
Rational expected_density(const Pattern& p, int q, int n, const ExactOptions& opts = {});

/// E(hom(p, W_n)) from the closed form over image-length vectors; depends on
/// the multiset of multiplicities only.
Rational expected_hom(const Pattern& p, int q, int n);

/// a_n(r): positive tuples with sum a_i r_i = n.
BigInt count_compositions(const CompositionSpec& spec, int n);

/// Positive a with sum a_i r_i = d * n, minimizing a_k first, then a_{k-1},
/// and so on. Empty when d * n has no such representation.
std::optional<std::vector<int>> frobenius_coeffs(const CompositionSpec& spec, int n);

/// (x choose y) = prod_{i<y} (x - i) / y!, for real x.
double generalized_binomial(double x, int y);

/// Upper bound (n/d + k + 1 choose k + 1) q^{n(1-r)/r} on I_n for doubled p.
double instance_count_bound(const Pattern& p, int q, int n);

/// n^{k+3} q^{f(1-r)/r}; bounds P(C(n+1,2) delta > n f) for doubled p.
double tail_bound(const Pattern& p, int q, int n, double f_value);

/// P(C(n+1, 2) delta(p, W_n) > n f) by exhaustive enumeration.
Rational tail_probability(const Pattern& p, int q, int n, double f_value,
                          const ExactOptions& opts = {});

/// Unbordered word counts u_1..u_{n_max} from the recurrence u_1 = q,
/// u_{2m+1} = q u_{2m}, u_{2m} = q u_{2m-1} - u_m. Element i holds u_{i+1}.
std::vector<BigInt> unbordered_counts(int q, int n_max);

/// lim I_n(xyx, q) = 1 - lim u_n / q^n, accurate to within tol.
double bordered_limit(int q, double tol);

/// All length-n instances of p in lexicographic order.
std::vector<Word> enumerate_instances(const Pattern& p, int q, int n, const ExactOptions& opts = {});

/// p with every letter of minimum multiplicity removed; empty if none remain.
std::vector<int> lemma_base_core(const Pattern& p);

/// Fraction of length-n instances having a witness phi with |phi(U)| < sqrt(n),
/// U = lemma_base_core(p). Requires d | n. Returns 1 when U is empty or when
/// there are no instances.
Rational lemma_base_fraction(const Pattern& p, int q, int n, const ExactOptions& opts = {});

/// Does a word whose letters are all known have a small-core witness?
bool has_small_core_witness(const Pattern& p, const Word& instance);

}  // namespace patdens
