#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace patdens {

/// A letter of a concrete alphabet, stored as an index in [0, q).
using Letter = std::uint8_t;

/// Largest alphabet the library supports (one byte per letter).
inline constexpr int kMaxAlphabet = 256;

/// Pattern word over a variable alphabet.
///
/// Variables are always renumbered 0..k-1 in order of first occurrence, so two
/// patterns that are renamings of each other compare equal.
class Pattern {
 public:
  /// Canonicalizes `symbols`; any nonnegative identifiers are accepted.
  /// Throws std::invalid_argument on an empty sequence or negative ids.
  explicit Pattern(std::span<const int> symbols);
  Pattern(std::initializer_list<int> symbols);

  /// Parses ASCII letters, case-sensitive ("ZzZ" has two variables).
  static Pattern parse(std::string_view text);

  std::span<const int> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  int operator[](std::size_t i) const { return symbols_[i]; }

  /// Number of distinct variables (k).
  int variable_count() const { return static_cast<int>(multiplicity_.size()); }

  /// Occurrence count r_i of each variable, indexed by variable.
  std::span<const int> multiplicities() const { return multiplicity_; }
  int multiplicity(int var) const { return multiplicity_[var]; }

  int min_multiplicity() const;
  int gcd_multiplicity() const;

  /// Letter repeats, |V| - |L(V)|.
  int repeats() const { return static_cast<int>(size()) - variable_count(); }

  /// Renders variable i as 'a'+i (then 'A'.. for i >= 26).
  std::string str() const;

  bool operator==(const Pattern&) const = default;

 private:
  std::vector<int> symbols_;
  std::vector<int> multiplicity_;
};

/// Concrete word over the alphabet {0, ..., q-1}. May be empty.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, int alphabet_size);

  /// Parses lowercase ASCII ('a' -> 0). Throws std::invalid_argument on
  /// characters outside 'a'..'z' or letters not below `alphabet_size`.
  static Word parse(std::string_view text, int alphabet_size = 26);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  int alphabet_size() const { return alphabet_size_; }

  /// The factor W[begin, end) in the half-open convention used throughout.
  Word factor(std::size_t begin, std::size_t end) const;

  std::string str() const;

  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
  int alphabet_size_ = 1;
};

struct LetterStats {
  std::size_t length = 0;
  std::size_t distinct = 0;
  std::size_t repeats = 0;

  bool operator==(const LetterStats&) const = default;
};

LetterStats letter_stats(const Word& w);
LetterStats letter_stats(const Pattern& p);

/// Every variable occurs at least twice.
bool is_doubled(const Pattern& p);

/// Zimin word Z_n (Z_1 = a, Z_{i+1} = Z_i x_{i+1} Z_i). Requires n >= 1.
Pattern zimin(int n);

/// True iff the patterns have the same multiset of multiplicities, i.e. one is
/// a rearrangement of a renaming of the other.
bool is_anagram(const Pattern& lhs, const Pattern& rhs);

/// Renders a single letter index as used by Word::str().
std::string render_letter(int letter);

}  // namespace patdens
