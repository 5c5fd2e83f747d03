#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "patdens/exact.hpp"
#include "patdens/window_counting.hpp"

using namespace patdens;

namespace {

std::vector<int> symbols(const Pattern& p) { return {p.symbols().begin(), p.symbols().end()}; }

BigInt pow_big(int q, int n) {
  BigInt out = 1;
  for (int i = 0; i < n; ++i) out *= q;
  return out;
}

const std::vector<std::string> kSuite = {"xx", "xyx", "xyxy", "xxyy", "ab", "xyzxy", "xxx"};

}  // namespace

TEST_CASE("instance counts match image enumeration") {
  for (const auto& text : kSuite) {
    const Pattern p = Pattern::parse(text);
    CAPTURE(text);
    for (int n = 1; n <= 9; ++n) {
      CHECK(instance_count(p, 2, n) == oracle::instances_by_images(symbols(p), 2, n).size());
    }
    for (int n = 1; n <= 5; ++n) {
      CHECK(instance_count(p, 3, n) == oracle::instances_by_images(symbols(p), 3, n).size());
    }
  }
  CHECK(instance_probability(Pattern::parse("xx"), 2, 4) == make_rational(1, 4));
  CHECK(instance_probability(Pattern::parse("xx"), 2, 3) == 0);
}

TEST_CASE("results do not depend on the worker count") {
  ExactOptions one, many;
  one.workers = 1;
  many.workers = 7;
  for (const auto& text : kSuite) {
    const Pattern p = Pattern::parse(text);
    CHECK(instance_count(p, 2, 11, one) == instance_count(p, 2, 11, many));
    CHECK(enumerate_instances(p, 2, 9, one) == enumerate_instances(p, 2, 9, many));
  }
}

TEST_CASE("expected density equals exhaustive averaging") {
  CHECK(expected_density(Pattern::parse("xx"), 2, 2) == make_rational(1, 6));
  for (const auto& text : kSuite) {
    const Pattern p = Pattern::parse(text);
    CAPTURE(text);
    for (int n = 1; n <= 8; ++n) {
      std::uint64_t windows = 0;
      oracle::for_each_word(2, static_cast<std::size_t>(n),
                            [&](const oracle::Letters& w) { windows += oracle::instance_windows(symbols(p), w); });
      Rational expected(big(windows), pow_big(2, n) * (n * (n + 1) / 2));
      expected.canonicalize();
      CHECK(expected_density(p, 2, n) == expected);
    }
  }
}

TEST_CASE("expected hom equals exhaustive averaging") {
  for (const auto& text : kSuite) {
    const Pattern p = Pattern::parse(text);
    CAPTURE(text);
    for (int q = 2; q <= 3; ++q) {
      for (int n = 1; n <= (q == 2 ? 8 : 5); ++n) {
        std::uint64_t total = 0;
        oracle::for_each_word(q, static_cast<std::size_t>(n),
                              [&](const oracle::Letters& w) { total += oracle::hom(symbols(p), w); });
        Rational expected(big(total), pow_big(q, n));
        expected.canonicalize();
        CHECK(expected_hom(p, q, n) == expected);
      }
    }
  }
}

TEST_CASE("anagrams have equal expected hom") {
  for (int q = 2; q <= 3; ++q) {
    for (int n = 1; n <= 14; ++n) {
      CHECK(expected_hom(Pattern::parse("xyxy"), q, n) == expected_hom(Pattern::parse("xxyy"), q, n));
      CHECK(expected_hom(Pattern::parse("xxyzy"), q, n) == expected_hom(Pattern::parse("yzxyx"), q, n));
    }
  }
}

TEST_CASE("composition counts") {
  const CompositionSpec spec{{2, 3}};
  for (int n = 0; n <= 30; ++n) {
    int brute = 0;
    for (int a = 1; 2 * a <= n; ++a) {
      for (int b = 1; 2 * a + 3 * b <= n; ++b) brute += (2 * a + 3 * b == n) ? 1 : 0;
    }
    CHECK(count_compositions(spec, n) == brute);
  }
  CHECK(CompositionSpec::of(Pattern::parse("xxyxy")).multiplicities == std::vector<int>{3, 2});
  CHECK(CompositionSpec::of(Pattern::parse("xxyy")).gcd() == 2);
  CHECK(CompositionSpec::of(Pattern::parse("xxyyy")).min() == 2);
}

TEST_CASE("Frobenius coefficients") {
  const CompositionSpec spec{{2, 3, 4}};
  for (int n = 1; n <= 20; ++n) {
    const auto a = frobenius_coeffs(spec, n);
    // Brute force: the minimizing a_3, then a_2, then a_1.
    std::optional<std::vector<int>> best;
    for (int c = 1; 4 * c <= n; ++c) {
      for (int b = 1; 3 * b + 4 * c <= n; ++b) {
        const int rest = n - 3 * b - 4 * c;
        if (rest < 2 || rest % 2 != 0) continue;
        std::vector<int> cand = {rest / 2, b, c};
        if (!best || std::make_tuple(cand[2], cand[1], cand[0]) <
                         std::make_tuple((*best)[2], (*best)[1], (*best)[0])) {
          best = cand;
        }
      }
    }
    CAPTURE(n);
    CHECK(a.has_value() == best.has_value());
    if (a) {
      CHECK(2 * (*a)[0] + 3 * (*a)[1] + 4 * (*a)[2] == n);
      CHECK(*a == *best);
    }
  }
}

TEST_CASE("generalized binomial") {
  CHECK(generalized_binomial(5, 2) == doctest::Approx(10));
  CHECK(generalized_binomial(7.5, 0) == 1);
  CHECK(generalized_binomial(2.5, 2) == doctest::Approx(1.875));
}

TEST_CASE("instance probability bound on small lengths") {
  for (const char* text : {"xx", "xyxy", "xxyy", "xxx", "xyxzyz"}) {
    const Pattern p = Pattern::parse(text);
    for (int q = 2; q <= 3; ++q) {
      for (int n = 1; n <= (q == 2 ? 12 : 8); ++n) {
        CHECK(instance_probability(p, q, n).get_d() <= instance_count_bound(p, q, n));
      }
    }
  }
  CHECK_THROWS_AS(instance_count_bound(Pattern::parse("xyx"), 2, 5), std::invalid_argument);
}

TEST_CASE("tail probability") {
  const Pattern p = Pattern::parse("xx");
  for (int n = 2; n <= 9; ++n) {
    for (double f : {0.5, 1.0, 2.0}) {
      std::uint64_t hits = 0;
      oracle::for_each_word(2, static_cast<std::size_t>(n), [&](const oracle::Letters& w) {
        hits += static_cast<double>(oracle::instance_windows({0, 0}, w)) > n * f ? 1 : 0;
      });
      Rational expected(big(hits), pow_big(2, n));
      expected.canonicalize();
      CHECK(tail_probability(p, 2, n, f) == expected);
      CHECK(tail_probability(p, 2, n, f).get_d() <= tail_bound(p, 2, n, f));
    }
  }
  CHECK_THROWS_AS(tail_bound(p, 2, 5, 0), std::invalid_argument);
}

TEST_CASE("unbordered counts") {
  for (int q = 2; q <= 3; ++q) {
    const int top = q == 2 ? 16 : 10;
    const auto u = unbordered_counts(q, top);
    REQUIRE(u.size() == static_cast<std::size_t>(top));
    for (int n = 1; n <= top; ++n) CHECK(u[n - 1] == oracle::unbordered_count(q, static_cast<std::size_t>(n)));
  }
  CHECK(unbordered_counts(2, 0).empty());
}

TEST_CASE("xyx instances are bordered words without unbordered square roots") {
  const Pattern p = Pattern::parse("xyx");
  for (int q = 2; q <= 3; ++q) {
    const int top = q == 2 ? 14 : 9;
    const auto u = unbordered_counts(q, top);
    for (int n = 1; n <= top; ++n) {
      BigInt expected = pow_big(q, n) - u[n - 1];
      if (n % 2 == 0) expected -= u[n / 2 - 1];
      CHECK(instance_count(p, q, n) == expected);
    }
  }
}

TEST_CASE("bordered limit") {
  CHECK(std::fabs(bordered_limit(2, 1e-7) - 0.7322132) < 1e-7);
  CHECK(std::fabs(bordered_limit(3, 1e-9) - 0.4430202) < 1e-7);
  CHECK_THROWS_AS(bordered_limit(1, 1e-7), std::invalid_argument);
  CHECK_THROWS_AS(bordered_limit(2, 0), std::invalid_argument);
  const double limit = bordered_limit(2, 1e-12);
  CHECK(instance_probability(Pattern::parse("xyx"), 2, 16).get_d() == doctest::Approx(limit).epsilon(0.01));
}

TEST_CASE("xyx instance probability is at least one half") {
  const Pattern p = Pattern::parse("xyx");
  for (int n = 3; n <= 14; ++n) CHECK(instance_probability(p, 2, n) >= make_rational(1, 2));
}

TEST_CASE("instance enumeration") {
  const Pattern p = Pattern::parse("xyxy");
  const auto all = enumerate_instances(p, 2, 10);
  CHECK(all.size() == instance_count(p, 2, 10));
  CHECK(std::is_sorted(all.begin(), all.end()));
  for (const auto& w : all) CHECK(w.size() == 10);
}

TEST_CASE("small-core helpers") {
  CHECK(lemma_base_core(Pattern::parse("xxyy")).empty());
  CHECK(lemma_base_core(Pattern::parse("xxyyy")) == std::vector<int>{1, 1, 1});
  CHECK(lemma_base_fraction(Pattern::parse("xxyy"), 2, 8) == 1);
  CHECK_THROWS_AS(lemma_base_fraction(Pattern::parse("xxyy"), 2, 7), std::invalid_argument);
  // xxyyy at n = 11: image lengths (4, 1) give a core of length 3 < sqrt(11),
  // lengths (1, 3) a core of length 9.
  const Pattern p = Pattern::parse("xxyyy");
  const Rational f = lemma_base_fraction(p, 2, 11);
  CHECK(f > 0);
  CHECK(f < 1);
  CHECK(lemma_base_fraction(p, 2, 12) == 0);
  CHECK(has_small_core_witness(p, Word::parse("aaaaaaaabbb", 2)));
  CHECK_FALSE(has_small_core_witness(p, Word::parse("aaabbabbabb", 2)));
}

TEST_CASE("budget guard") {
  ExactOptions tiny;
  tiny.budget = 1000;
  CHECK_THROWS_AS(instance_count(Pattern::parse("xx"), 2, 12, tiny), BudgetExceeded);
  try {
    instance_count(Pattern::parse("xx"), 2, 12, tiny);
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == doctest::Approx(4096.0 * 12));
    CHECK(e.limit() == 1000);
  }
}
