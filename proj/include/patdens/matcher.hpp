#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "patdens/rational.hpp"
#include "patdens/words.hpp"

namespace patdens {

/// Nonerasing homomorphism; images[v] is the image of variable v.
struct Homomorphism {
  std::vector<Word> images;

  Word apply(const Pattern& p) const;
  std::vector<int> image_lengths() const;

  bool operator==(const Homomorphism&) const = default;
};

/// W[start, end) = phi(V).
struct Encounter {
  std::size_t start = 0;
  std::size_t end = 0;
  Homomorphism phi;
};

/// Exact density: numerator instance windows out of denominator = C(|W|+1, 2).
struct DensityValue {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  Rational value;

  double to_double() const { return value.get_d(); }
};

/// Prefix function and Z-array of a text.
///
/// Every window [0, L) of the text shares these tables: z(p) >= l with
/// p + l <= L means the window prefix of length l reoccurs at p, and the
/// border chain of the window is read off the prefix function at L - 1.
class PrefixIndex {
 public:
  PrefixIndex() = default;
  explicit PrefixIndex(std::span<const Letter> text) { reset(text); }

  /// Rebuilds the tables for `text`, reusing storage.
  void reset(std::span<const Letter> text);

  std::span<const Letter> text() const { return text_; }
  std::size_t size() const { return text_.size(); }

  /// Length of the longest common prefix of text and text[pos, ...).
  int z(std::size_t pos) const { return z_[pos]; }

  /// Longest proper border of the prefix of length len (len >= 1).
  int border(std::size_t len) const { return pi_[len - 1]; }

 private:
  std::span<const Letter> text_;
  std::vector<int> z_;
  std::vector<int> pi_;
};

/// Backtracking matcher for one pattern.
///
/// Image lengths are assigned to variables in first-occurrence order; a
/// repeated variable is checked against its first image inside the window.
/// Candidates are pruned by length accounting (remaining length, gcd of the
/// multiplicities still unassigned), the first variable is checked through
/// the Z-array and, when the pattern also ends with it, restricted to the
/// border chain of the window. Witnesses come out in lexicographic order of
/// the image-length vector.
class WindowMatcher {
 public:
  explicit WindowMatcher(const Pattern& p);

  const Pattern& pattern() const { return pattern_; }

  /// Is text[0, len) an instance?
  bool matches(const PrefixIndex& index, std::size_t len);

  /// Lexicographically smallest image-length vector, if any.
  std::optional<std::vector<int>> first_witness(const PrefixIndex& index, std::size_t len);

  /// Number of distinct homomorphisms mapping the pattern onto text[0, len).
  std::uint64_t count_witnesses(const PrefixIndex& index, std::size_t len);

  /// Calls visit(lengths) per witness in lexicographic order until it
  /// returns false.
  void for_each_witness(const PrefixIndex& index, std::size_t len,
                        const std::function<bool(std::span<const int>)>& visit);

 private:
  template <class Visit>
  bool search(std::size_t i, std::size_t pos, std::size_t fixed_tail, Visit& visit);

  Pattern pattern_;
  int k_ = 0;
  bool ends_with_first_ = false;
  std::vector<std::size_t> tail_min_;  // sum of multiplicities of variables >= j
  std::vector<int> tail_gcd_;          // gcd of multiplicities of variables >= j

  // per-call state
  const PrefixIndex* index_ = nullptr;
  std::size_t len_ = 0;
  std::vector<int> length_;
  std::vector<std::size_t> start_;
  std::vector<int> borders_;
};

/// Builds the homomorphism with the given image lengths over `window`.
/// The lengths must describe a valid witness.
Homomorphism homomorphism_from_lengths(const Pattern& p, const Word& window,
                                       std::span<const int> lengths);

/// delta_sur: is w (nonempty) an instance of p?
bool is_instance(const Word& w, const Pattern& p);

/// Witness with the lexicographically smallest image-length vector.
std::optional<Homomorphism> find_witness(const Word& w, const Pattern& p);

/// hom(p, w): number of encounters (a, b, phi).
std::uint64_t count_encounters(const Pattern& p, const Word& w);

/// delta(p, w) as an exact rational. Uses the fastest exact counting
/// strategy available for the pattern (see window_counting.hpp).
DensityValue density(const Pattern& p, const Word& w);

/// All encounters ordered by (start, end, image lengths).
/// Throws std::length_error when |w| exceeds `guard`.
std::vector<Encounter> enumerate_encounters(const Pattern& p, const Word& w,
                                            std::size_t guard = 64);

/// Renders phi as "c→b, o→an, l→a" using the given variable names.
std::string render_witness(const Homomorphism& phi, const std::vector<std::string>& names);

}  // namespace patdens
