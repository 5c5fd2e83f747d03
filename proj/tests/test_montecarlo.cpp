#include <doctest.h>

#include <cmath>
#include <numeric>

#include "patdens/exact.hpp"
#include "patdens/montecarlo.hpp"
#include "patdens/sampling.hpp"

using namespace patdens;

TEST_CASE("sample streams are reproducible and independent of order") {
  SampleStream a(7, 100, 3), b(7, 100, 3), c(7, 100, 4), d(8, 100, 3);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  CHECK(x != d.next());
}

TEST_CASE("bounded draws are uniform") {
  SampleStream s(1, 1, 1);
  std::vector<int> hist(3, 0);
  const int draws = 300000;
  for (int i = 0; i < draws; ++i) ++hist[s.below(3)];
  for (int h : hist) CHECK(std::abs(h - draws / 3) < 1500);
  CHECK_THROWS_AS(s.below(0), std::invalid_argument);
}

TEST_CASE("sampled words stay in the alphabet") {
  for (int q : {1, 2, 3, 4, 5, 16, 26, 256}) {
    SampleStream s(3, 50, 0);
    const Word w = sample_word(q, 500, s);
    CHECK(w.size() == 500);
    std::vector<int> seen(256, 0);
    for (Letter c : w.letters()) {
      CHECK(c < q);
      seen[c] = 1;
    }
    if (q <= 26) CHECK(std::accumulate(seen.begin(), seen.end(), 0) == q);
  }
}

TEST_CASE("estimates do not depend on the worker count") {
  MonteCarloOptions one, many;
  one.workers = 1;
  many.workers = 6;
  for (const char* text : {"xx", "xyx", "xyxzx"}) {
    const Pattern p = Pattern::parse(text);
    CHECK(sample_densities(p, 2, 40, 3000, 11, one) == sample_densities(p, 2, 40, 3000, 11, many));
    const auto a = estimate_density_moments(p, 2, 40, 3000, 11, 4, one);
    const auto b = estimate_density_moments(p, 2, 40, 3000, 11, 4, many);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
    CHECK(a.central_moments == b.central_moments);
    CHECK(estimate_instance_probability(p, 2, 30, 3000, 5, one).mean ==
          estimate_instance_probability(p, 2, 30, 3000, 5, many).mean);
  }
  CHECK(sample_densities(Pattern::parse("xx"), 2, 40, 100, 1) !=
        sample_densities(Pattern::parse("xx"), 2, 40, 100, 2));
}

TEST_CASE("summary statistics") {
  const std::vector<double> values = {0, 1, 1, 0};
  const auto r = summarize(values, Pattern::parse("xx"), 2, 4, 0, 3);
  CHECK(r.mean == doctest::Approx(0.5));
  CHECK(r.variance == doctest::Approx(1.0 / 3));
  CHECK(r.raw_moments[0] == doctest::Approx(1));
  CHECK(r.raw_moments[2] == doctest::Approx(0.5));
  CHECK(r.central_moments[2] == doctest::Approx(0.25));
  CHECK(r.central_moments[3] == doctest::Approx(0.125));
  CHECK(r.ci_half_width == doctest::Approx(kZ99 * std::sqrt(1.0 / 12)));
  CHECK(r.standard_error() == doctest::Approx(std::sqrt(1.0 / 12)));
  CHECK(r.raw_moments.size() == 4);
  CHECK_THROWS_AS(summarize(std::vector<double>{}, Pattern::parse("xx"), 2, 4, 0, 2), std::invalid_argument);
}

TEST_CASE("Monte Carlo agrees with exact values") {
  MonteCarloOptions opts;
  for (const char* text : {"xx", "xyx", "xyxy", "xxyy", "ab"}) {
    const Pattern p = Pattern::parse(text);
    CAPTURE(text);
    for (int n : {6, 12}) {
      const auto est = estimate_density_moments(p, 2, static_cast<std::size_t>(n), 100000, 99, 2, opts);
      const double exact = expected_density(p, 2, n).get_d();
      CHECK(std::fabs(est.mean - exact) <= 5 * est.standard_error() + 1e-12);
      CHECK(est.variance >= 0);
      CHECK(est.mean >= 0);
      CHECK(est.mean <= 1);

      const auto prob = estimate_instance_probability(p, 2, static_cast<std::size_t>(n), 100000, 99, opts);
      const double exact_prob = instance_probability(p, 2, n).get_d();
      CHECK(std::fabs(prob.mean - exact_prob) <= 5 * prob.standard_error() + 1e-12);
    }
  }
}

TEST_CASE("doubled patterns thin out along the grid") {
  const std::vector<std::size_t> grid = {8, 16, 32, 64, 128};
  for (const char* text : {"xx", "xyxy", "xxyy"}) {
    const auto rows = dichotomy_trajectory(Pattern::parse(text), 2, grid, 2000, 3);
    REQUIRE(rows.size() == grid.size());
    CHECK(rows.back().estimate < rows.front().estimate);
    for (const auto& r : rows) CHECK(r.scaled_estimate == doctest::Approx(r.n * r.estimate));
  }
}

TEST_CASE("scaling helpers") {
  const std::vector<std::size_t> grid = {16, 32, 64};
  CHECK_THROWS_AS(variance_scaling(Pattern::parse("xyx"), 2, grid, 500, 1), std::invalid_argument);
  CHECK(variance_scaling(Pattern::parse("xyx"), 2, grid, 500, 1, {}, true).size() == 3);
  const auto moments = moment_scaling(Pattern::parse("xx"), 2, grid, 500, 1, 3, MomentKind::kCentral);
  REQUIRE(moments.size() == 3);
  for (const auto& rows : moments) CHECK(rows.size() == 3);
  CHECK_THROWS_AS(moment_scaling(Pattern::parse("xx"), 2, grid, 500, 1, 5, MomentKind::kRaw),
                  std::invalid_argument);
  const std::vector<std::size_t> bad = {32, 16};
  CHECK_THROWS_AS(density_sweep(Pattern::parse("xx"), 2, bad, 10, 1, 2), std::invalid_argument);

  Trajectory rows(4);
  const double scaled[] = {1.0, 9.0, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) rows[i].scaled_estimate = scaled[i];
  CHECK(tail_ratio(rows) == doctest::Approx(1.5));
  rows.pop_back();
  CHECK(tail_ratio(rows) == doctest::Approx(4.5));
}

TEST_CASE("Monte Carlo budget guard") {
  MonteCarloOptions tiny;
  tiny.budget = 100;
  CHECK_THROWS_AS(sample_densities(Pattern::parse("xyxzx"), 2, 64, 1000, 1, tiny), BudgetExceeded);
}

TEST_CASE("small-core diagnostic") {
  const std::vector<std::size_t> grid = {8, 12};
  for (const auto& r : lemma_base_diagnostic(Pattern::parse("xxyy"), 2, grid, 100, 1)) {
    CHECK(r.estimate == 1);
  }
  const Pattern p = Pattern::parse("xxyyy");
  const std::vector<std::size_t> n11 = {11};
  const auto rows = lemma_base_diagnostic(p, 2, n11, 20000, 4);
  const double exact = lemma_base_fraction(p, 2, 11).get_d();
  CHECK(std::fabs(rows[0].estimate - exact) <= rows[0].ci_half_width * 5 / kZ99 + 1e-12);
}
