#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "patdens/words.hpp"

using namespace patdens;

TEST_CASE("patterns are canonical under renaming") {
  CHECK(Pattern::parse("xyx") == Pattern::parse("aba"));
  CHECK(Pattern::parse("cool").str() == "abbc");
  CHECK(Pattern{7, 3, 7} == Pattern{0, 1, 0});
  CHECK(Pattern::parse("ZzZ").variable_count() == 2);
  CHECK_THROWS_AS(Pattern::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Pattern::parse("a1"), std::invalid_argument);
  CHECK_THROWS_AS((Pattern{0, -1}), std::invalid_argument);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<int> raw(1 + rng() % 9);
    for (auto& s : raw) s = static_cast<int>(rng() % 5);
    std::vector<int> perm = {0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> renamed;
    for (int s : raw) renamed.push_back(perm[s] * 3 + 10);
    const Pattern p(raw);
    CHECK(p == Pattern(renamed));
    CHECK(std::vector<int>(p.symbols().begin(), p.symbols().end()) == oracle::canonical(raw));
  }
}

TEST_CASE("multiplicities and repeats") {
  const Pattern p = Pattern::parse("xxyzyx");
  CHECK(p.variable_count() == 3);
  CHECK(p.multiplicity(0) == 3);
  CHECK(p.multiplicity(1) == 2);
  CHECK(p.multiplicity(2) == 1);
  CHECK(p.min_multiplicity() == 1);
  CHECK(p.gcd_multiplicity() == 1);
  CHECK(p.repeats() == 3);
  CHECK(Pattern::parse("xxyy").gcd_multiplicity() == 2);
}

TEST_CASE("letter stats identity") {
  CHECK(letter_stats(Word::parse("banana")) == LetterStats{6, 3, 3});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letter> letters(rng() % 20);
    for (auto& c : letters) c = static_cast<Letter>(rng() % 4);
    const auto s = letter_stats(Word(letters, 4));
    CHECK(s.length == s.distinct + s.repeats);
    CHECK(s.distinct <= 4);
  }
  const auto ps = letter_stats(Pattern::parse("xyxzx"));
  CHECK(ps == LetterStats{5, 3, 2});
}

TEST_CASE("words") {
  const Word w = Word::parse("banana");
  CHECK(w.size() == 6);
  CHECK(w.str() == "banana");
  CHECK(w.factor(1, 4).str() == "ana");
  CHECK(w.factor(2, 2).empty());
  CHECK_THROWS_AS(w.factor(4, 7), std::out_of_range);
  CHECK_THROWS_AS(Word::parse("Abc"), std::invalid_argument);
  CHECK_THROWS_AS(Word::parse("abc", 2), std::invalid_argument);
  CHECK_THROWS_AS(Word({0, 3}, 3), std::invalid_argument);
  CHECK(Word::parse("", 2).empty());
  CHECK(Word::parse("ab") < Word::parse("b"));
}

TEST_CASE("doubled patterns") {
  CHECK(is_doubled(Pattern::parse("xx")));
  CHECK(is_doubled(Pattern::parse("xyxy")));
  CHECK(is_doubled(Pattern::parse("xxyy")));
  CHECK_FALSE(is_doubled(Pattern::parse("xyx")));
  CHECK_FALSE(is_doubled(Pattern::parse("ab")));
}

TEST_CASE("zimin words") {
  CHECK(zimin(1).str() == "a");
  CHECK(zimin(2).str() == "aba");
  CHECK(zimin(3).str() == "abacaba");
  CHECK_THROWS_AS(zimin(0), std::invalid_argument);
  for (int n = 1; n <= 8; ++n) {
    const Pattern z = zimin(n);
    CHECK(z.size() == (std::size_t{1} << n) - 1);
    CHECK(z.variable_count() == n);
    // Variable i occurs 2^(n-1-i) times; the last one exactly once.
    for (int i = 0; i < n; ++i) CHECK(z.multiplicity(i) == (1 << (n - 1 - i)));
    CHECK_FALSE(is_doubled(z));
  }
}

TEST_CASE("anagrams") {
  CHECK(is_anagram(Pattern::parse("xyxy"), Pattern::parse("xxyy")));
  CHECK(is_anagram(Pattern::parse("xxy"), Pattern::parse("yxx")));
  CHECK(is_anagram(Pattern::parse("aab"), Pattern::parse("abb")));
  CHECK_FALSE(is_anagram(Pattern::parse("xxy"), Pattern::parse("xyz")));
  CHECK_FALSE(is_anagram(Pattern::parse("xx"), Pattern::parse("xxx")));

  // Equivalent to: some renaming of rhs has the same letter counts as lhs.
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<int> a(1 + rng() % 6), b(1 + rng() % 6);
    for (auto& s : a) s = static_cast<int>(rng() % 3);
    for (auto& s : b) s = static_cast<int>(rng() % 3);
    std::vector<int> ca(3, 0), cb(3, 0);
    for (int s : a) ++ca[s];
    for (int s : b) ++cb[s];
    bool expected = false;
    std::vector<int> perm = {0, 1, 2};
    do {
      bool same = true;
      for (int i = 0; i < 3; ++i) same = same && ca[i] == cb[perm[i]];
      expected = expected || same;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(is_anagram(Pattern(a), Pattern(b)) == expected);
  }
}
