#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "patdens/matcher.hpp"

using namespace patdens;

namespace {

std::vector<int> symbols(const Pattern& p) { return {p.symbols().begin(), p.symbols().end()}; }

std::vector<Letter> letters(const Word& w) { return {w.letters().begin(), w.letters().end()}; }

Pattern random_pattern(std::mt19937& rng, int max_len, int max_vars) {
  std::vector<int> s(1 + rng() % max_len);
  for (auto& v : s) v = static_cast<int>(rng() % max_vars);
  return Pattern(s);
}

Word random_word(std::mt19937& rng, int q, int min_len, int max_len) {
  std::vector<Letter> w(min_len + rng() % (max_len - min_len + 1));
  for (auto& c : w) c = static_cast<Letter>(rng() % q);
  return Word(w, q);
}

}  // namespace

TEST_CASE("worked examples") {
  const auto d = density(Pattern::parse("xx"), Word::parse("banana"));
  CHECK(d.numerator == 2);
  CHECK(d.denominator == 21);
  CHECK(d.value == make_rational(2, 21));

  const auto s = density(Pattern::parse("xyx"), Word::parse("science"));
  CHECK(s.numerator == 2);
  CHECK(s.denominator == 28);
  CHECK(density(Pattern::parse("huh"), Word::parse("science")).value == make_rational(2, 28));

  CHECK(count_encounters(Pattern::parse("ab"), Word::parse("cde")) == 4);
  CHECK(density(Pattern::parse("x"), Word::parse("banana")).value == 1);

  const auto phi = find_witness(Word::parse("banana"), Pattern::parse("cool"));
  REQUIRE(phi.has_value());
  CHECK(phi->apply(Pattern::parse("cool")) == Word::parse("banana"));
  CHECK(render_witness(*phi, {"c", "o", "l"}) == "c→b, o→an, l→a");
}

TEST_CASE("instance checks") {
  CHECK(is_instance(Word::parse("abab"), Pattern::parse("xx")));
  CHECK_FALSE(is_instance(Word::parse("aba"), Pattern::parse("xx")));
  CHECK(is_instance(Word::parse("aba"), Pattern::parse("xyx")));
  CHECK(is_instance(Word::parse("aaa"), Pattern::parse("xyx")));
  CHECK_FALSE(is_instance(Word::parse("ab"), Pattern::parse("xyx")));
  CHECK_FALSE(is_instance(Word::parse("abcab"), Pattern::parse("xx")));
  CHECK(is_instance(Word::parse("abacaba"), zimin(3)));
  CHECK_FALSE(is_instance(Word::parse("a"), Pattern::parse("xy")));
  CHECK_THROWS_AS(is_instance(Word::parse(""), Pattern::parse("x")), std::invalid_argument);
  CHECK_THROWS_AS(density(Pattern::parse("x"), Word::parse("")), std::invalid_argument);
}

TEST_CASE("matcher agrees with brute force") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const Pattern p = random_pattern(rng, 5, 3);
    const int q = 2 + static_cast<int>(rng() % 2);
    const Word w = random_word(rng, q, 1, 12);
    const auto sp = symbols(p);
    const auto sw = letters(w);
    CAPTURE(p.str());
    CAPTURE(w.str());

    const bool expected = oracle::is_instance(sp, sw);
    CHECK(is_instance(w, p) == expected);

    const auto phi = find_witness(w, p);
    CHECK(phi.has_value() == expected);
    if (phi) {
      CHECK(phi->apply(p) == w);
      std::optional<std::vector<int>> first;
      oracle::for_each_length_vector(sp, sw.size(), [&](const std::vector<int>& len) {
        if (!first && oracle::consistent(sp, sw, 0, len)) first = len;
      });
      CHECK(phi->image_lengths() == *first);
    }

    CHECK(count_encounters(p, w) == oracle::hom(sp, sw));
    const auto d = density(p, w);
    CHECK(d.numerator == oracle::instance_windows(sp, sw));
    CHECK(d.denominator == w.size() * (w.size() + 1) / 2);
  }
}

TEST_CASE("every length-n instance is found") {
  for (const char* text : {"xx", "xyx", "xyxy", "xxyy", "xyzxy", "abacaba"}) {
    const Pattern p = Pattern::parse(text);
    for (std::size_t n = 1; n <= 9; ++n) {
      const auto expected = oracle::instances_by_images(symbols(p), 2, n);
      std::size_t found = 0;
      oracle::for_each_word(2, n, [&](const oracle::Letters& w) {
        const bool inst = is_instance(Word(w, 2), p);
        found += inst ? 1 : 0;
        CHECK(inst == (expected.count(w) > 0));
      });
      CHECK(found == expected.size());
    }
  }
}

TEST_CASE("instance windows never exceed encounters") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pattern p = random_pattern(rng, 6, 4);
    const Word w = random_word(rng, 2 + static_cast<int>(rng() % 2), 1, 14);
    CHECK(density(p, w).numerator <= count_encounters(p, w));
  }
}

TEST_CASE("density is invariant under renaming letters") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const Pattern p = random_pattern(rng, 5, 3);
    const Word w = random_word(rng, 3, 1, 16);
    std::vector<Letter> perm = {0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Letter> renamed;
    for (Letter c : w.letters()) renamed.push_back(perm[c]);
    CHECK(density(p, w).numerator == density(p, Word(renamed, 3)).numerator);
    CHECK(count_encounters(p, w) == count_encounters(p, Word(renamed, 3)));
  }
}

TEST_CASE("enumerated encounters") {
  const Pattern p = Pattern::parse("xyx");
  const Word w = Word::parse("abaab");
  const auto all = enumerate_encounters(p, w);
  CHECK(all.size() == count_encounters(p, w));
  for (const auto& e : all) CHECK(e.phi.apply(p) == w.factor(e.start, e.end));
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto& a = all[i - 1];
    const auto& b = all[i];
    CHECK(std::make_tuple(a.start, a.end, a.phi.image_lengths()) <
          std::make_tuple(b.start, b.end, b.phi.image_lengths()));
  }
  CHECK_THROWS_AS(enumerate_encounters(p, w, 4), std::length_error);
}

TEST_CASE("prefix index") {
  const std::vector<Letter> text = {0, 1, 0, 0, 1, 0, 1};
  PrefixIndex index(text);
  CHECK(index.z(0) == 7);
  CHECK(index.z(3) == 3);
  CHECK(index.z(1) == 0);
  CHECK(index.border(6) == 3);
  CHECK(index.border(1) == 0);
}
