#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "repeatcode/errors.hpp"
#include "repeatcode/repeat_dist.hpp"

using namespace repeatcode;

TEST_CASE("deletion pmf") {
  for (double d : {0.0, 0.1, 0.3, 0.5, 0.9}) {
    const RepeatDistribution r = make_deletion(d);
    CHECK(r.max_r() == 1);
    CHECK(r(0) == doctest::Approx(d).epsilon(1e-15));
    CHECK(r(1) == doctest::Approx(1.0 - d).epsilon(1e-15));
    CHECK(r.mean == doctest::Approx(1.0 - d).epsilon(1e-12));
    CHECK(r.variance == doctest::Approx(d * (1.0 - d)).epsilon(1e-12));
    CHECK(r.tail_mass_dropped == 0.0);
  }
  CHECK_THROWS_AS(make_deletion(1.0), config_error);
  CHECK_THROWS_AS(make_deletion(-0.1), config_error);
}

TEST_CASE("table construction normalizes and validates") {
  const RepeatDistribution r = make_repeat_table({{0, 2.0}, {2, 6.0}});
  CHECK(r.max_r() == 2);
  CHECK(r(0) == doctest::Approx(0.25));
  CHECK(r(1) == doctest::Approx(0.0));
  CHECK(r(2) == doctest::Approx(0.75));
  CHECK(r.mean == doctest::Approx(1.5));
  CHECK(r(3) == 0.0);
  CHECK(r(-1) == 0.0);
  CHECK_THROWS_AS(make_repeat_table({{0, 1.0}, {1, -0.5}}), config_error);
  CHECK_THROWS_AS(make_repeat_table({{-1, 1.0}}), config_error);
  CHECK_THROWS_AS(make_repeat_table({{0, 0.0}}), config_error);
  CHECK_THROWS_AS(make_repeat_table({}), config_error);
}

TEST_CASE("poisson truncation is tolerance-driven") {
  const double lambda = 1.0;
  const RepeatDistribution r = make_poisson(lambda);
  // Untruncated masses: e^-1 / r!.
  CHECK(r(0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  CHECK(r(1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
  CHECK(r(2) == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-7));
  CHECK(r.mean == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.tail_mass_dropped > 0.0);
  CHECK(r.tail_mass_dropped < 1e-9);
  double sum = 0.0;
  for (int k = 0; k <= r.max_r(); ++k) sum += r(k);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // A looser tolerance truncates earlier; tightening extends the support.
  const RepeatDistribution loose = make_poisson(2.0, 1e-3);
  const RepeatDistribution tight = make_poisson(2.0, 1e-12);
  CHECK(loose.max_r() < tight.max_r());
  CHECK(loose.tail_mass_dropped < 1e-3);

  CHECK_THROWS_AS(make_poisson(0.0), config_error);
  CHECK_THROWS_AS(make_poisson(1.0, 0.0), config_error);
  CHECK_THROWS_AS(make_poisson(1.0, 1.0), config_error);
}

TEST_CASE("sampling matches the pmf") {
  const RepeatDistribution r = make_repeat_table({{0, 0.2}, {1, 0.5}, {3, 0.3}});
  Rng rng(99);
  const int trials = 200000;
  std::vector<int> counts(4, 0);
  for (int t = 0; t < trials; ++t) {
    const int k = r.sample(rng);
    REQUIRE(k >= 0);
    REQUIRE(k <= 3);
    counts[static_cast<std::size_t>(k)]++;
  }
  for (int k = 0; k <= 3; ++k) {
    const double p = r(k);
    const double se = std::sqrt(p * (1.0 - p) / trials);
    CHECK(std::abs(counts[static_cast<std::size_t>(k)] / double(trials) - p) < 5.0 * se + 1e-9);
  }
}
