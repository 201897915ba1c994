#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "proph/distribution.hpp"
#include "proph/errors.hpp"
#include "proph/instance.hpp"
#include "proph/order_stats.hpp"
#include "proph/rng.hpp"
#include "support/random_instances.hpp"

using namespace proph;

namespace {

Instance three_two_one(int num_agents, TieRule rule) {
  return Instance({Distribution::point(3), Distribution::point(2),
                   Distribution::point(1)},
                  num_agents, rule);
}

}  // namespace

TEST_CASE("discrete distributions are validated and canonicalized") {
  CHECK_THROWS_AS(Distribution::discrete({}), ConfigError);
  CHECK_THROWS_AS(Distribution::discrete({{1.0, 0.5}, {2.0, 0.4}}),
                  ConfigError);
  CHECK_THROWS_AS(Distribution::discrete({{1.0, -0.5}, {2.0, 1.5}}),
                  ConfigError);
  CHECK_THROWS_AS(Distribution::discrete({{1.0, 0.0}, {2.0, 1.0}}),
                  ConfigError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Distribution::discrete({{inf, 1.0}}), ConfigError);

  const Distribution d =
      Distribution::discrete({{2.0, 0.25}, {1.0, 0.5}, {2.0, 0.25}});
  REQUIRE(d.support_size() == 2);
  CHECK(d.support()[0].value == 1.0);
  CHECK(d.support()[0].probability == doctest::Approx(0.5));
  CHECK(d.support()[1].value == 2.0);
  CHECK(d.support()[1].probability == doctest::Approx(0.5));
  CHECK(d.mean() == doctest::Approx(1.5));
}

TEST_CASE("point, uniform and exponential factories") {
  const Distribution p = Distribution::point(4.0);
  CHECK(p.is_discrete());
  CHECK(p.support_size() == 1);
  CHECK(p.mean() == 4.0);

  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(Distribution::uniform(2.0, 1.0), ConfigError);
  const Distribution u = Distribution::uniform(1.0, 3.0);
  CHECK_FALSE(u.is_discrete());
  CHECK(u.mean() == doctest::Approx(2.0));
  CHECK_THROWS_AS(u.support(), NotDiscreteError);

  CHECK_THROWS_AS(Distribution::exponential(0.0), ConfigError);
  CHECK_THROWS_AS(Distribution::exponential(-1.0), ConfigError);
  CHECK(Distribution::exponential(2.0).mean() == doctest::Approx(0.5));
}

TEST_CASE("sampling follows the law") {
  RngStream rng(12345);

  SUBCASE("point draws are constant") {
    const Distribution d = Distribution::point(7.0);
    for (int i = 0; i < 10; ++i) CHECK(d.sample(rng) == 7.0);
  }

  SUBCASE("discrete sample mean converges") {
    const Distribution d = Distribution::discrete({{0.0, 0.25}, {4.0, 0.75}});
    double sum = 0.0;
    const int reps = 40000;
    for (int i = 0; i < reps; ++i) sum += d.sample(rng);
    CHECK(sum / reps == doctest::Approx(3.0).epsilon(0.02));
  }

  SUBCASE("uniform draws stay inside the interval") {
    const Distribution d = Distribution::uniform(2.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
      const double v = d.sample(rng);
      CHECK(v >= 2.0);
      CHECK(v < 5.0);
    }
  }

  SUBCASE("exponential draws are non-negative with the right mean") {
    const Distribution d = Distribution::exponential(0.5);
    double sum = 0.0;
    const int reps = 40000;
    for (int i = 0; i < reps; ++i) {
      const double v = d.sample(rng);
      REQUIRE(v >= 0.0);
      sum += v;
    }
    CHECK(sum / reps == doctest::Approx(2.0).epsilon(0.05));
  }
}

TEST_CASE("instance validation and capability flags") {
  CHECK_THROWS_AS(Instance({}, 2, TieRule::random), ConfigError);
  CHECK_THROWS_AS(Instance({Distribution::point(1)}, 0, TieRule::random),
                  ConfigError);
  CHECK_THROWS_AS(Instance({Distribution::point(1)}, 33, TieRule::random),
                  ConfigError);

  const Instance inst = three_two_one(2, TieRule::random);
  CHECK(inst.horizon() == 3);
  CHECK(inst.num_agents() == 2);
  CHECK(inst.fully_discrete());
  CHECK(inst.joint_support_size() == 1);
  CHECK(inst.with_tie_rule(TieRule::ranked).tie_rule() == TieRule::ranked);
  CHECK(inst.with_num_agents(3).num_agents() == 3);

  const Instance mixed({Distribution::point(1), Distribution::uniform(0, 1)},
                       1, TieRule::random);
  CHECK_FALSE(mixed.fully_discrete());

  const Distribution coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
  const Instance wide(std::vector<Distribution>(70, coin), 1, TieRule::random);
  CHECK(wide.joint_support_size() ==
        std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("enumeration visits every joint realization exactly once") {
  const Distribution coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
  const Distribution tri =
      Distribution::discrete({{1.0, 0.2}, {2.0, 0.3}, {3.0, 0.5}});
  const Instance inst({coin, tri, Distribution::point(5)}, 1, TieRule::random);

  const auto all = all_realizations(inst);
  REQUIRE(all.size() == 6);
  double total = 0.0;
  for (const Realization& r : all) {
    REQUIRE(r.values.size() == 3);
    CHECK(r.values[2] == 5.0);
    total += r.probability;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("cap and discreteness guards") {
    CHECK_THROWS_AS(all_realizations(inst, 5), ExplosionCapError);
    const Instance param({Distribution::uniform(0, 1)}, 1, TieRule::random);
    CHECK_THROWS_AS(all_realizations(param), NotDiscreteError);
  }
}

TEST_CASE("exact expected order statistics") {
  SUBCASE("deterministic rewards sort themselves") {
    const auto stats = expected_order_stats_exact(three_two_one(2, TieRule::random));
    REQUIRE(stats.expectations.size() == 3);
    CHECK(stats.expectations[0] == doctest::Approx(3.0));
    CHECK(stats.expectations[1] == doctest::Approx(2.0));
    CHECK(stats.expectations[2] == doctest::Approx(1.0));
    CHECK(stats.method == EstimateMethod::exact);
  }

  SUBCASE("two fair coins") {
    const Distribution coin = Distribution::discrete({{0.0, 0.5}, {1.0, 0.5}});
    const Instance inst({coin, coin}, 1, TieRule::random);
    const auto stats = expected_order_stats_exact(inst);
    // max is 1 unless both miss; min is 1 only when both hit
    CHECK(stats.expectations[0] == doctest::Approx(0.75));
    CHECK(stats.expectations[1] == doctest::Approx(0.25));
  }

  SUBCASE("order statistics are non-increasing on random instances") {
    RngStream rng(99);
    for (int rep = 0; rep < 25; ++rep) {
      const Instance inst = testsupport::random_instance(rng, TieRule::random);
      const auto stats = expected_order_stats_exact(inst);
      for (std::size_t j = 1; j < stats.expectations.size(); ++j) {
        CHECK(stats.expectations[j] <= stats.expectations[j - 1] + 1e-12);
      }
      CHECK(stats.expectations.back() >= -1e-12);
    }
  }
}

TEST_CASE("monte carlo order statistics agree with exact values") {
  RngStream rng(7);
  const Instance inst = testsupport::random_instance(rng, TieRule::random);
  const auto exact = expected_order_stats_exact(inst);
  const auto mc = expected_order_stats_mc(inst, 60000, 2024);
  REQUIRE(mc.expectations.size() == exact.expectations.size());
  CHECK(mc.num_samples == 60000);
  for (std::size_t j = 0; j < exact.expectations.size(); ++j) {
    const double gap = std::abs(mc.expectations[j] - exact.expectations[j]);
    CHECK(gap <= 4.0 * mc.std_errors[j] + 1e-9);
  }

  SUBCASE("fixed seeds reproduce, sample floor enforced") {
    const auto again = expected_order_stats_mc(inst, 60000, 2024);
    CHECK(again.expectations == mc.expectations);
    CHECK_THROWS_AS(expected_order_stats_mc(inst, 1, 2024), ConfigError);
  }
}

TEST_CASE("sampled realizations carry their joint point mass") {
  const Distribution coin = Distribution::discrete({{0.0, 0.25}, {2.0, 0.75}});
  const Instance inst({coin, Distribution::point(1)}, 1, TieRule::random);
  RngStream rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const Realization r = sample_realization(inst, rng);
    const double expected = r.values[0] == 0.0 ? 0.25 : 0.75;
    CHECK(r.probability == doctest::Approx(expected));
  }

  const Instance param({Distribution::uniform(0, 1)}, 1, TieRule::random);
  RngStream rng2(6);
  CHECK(sample_realization(param, rng2).probability == 0.0);
}

TEST_CASE("rng streams are deterministic and well-ranged") {
  RngStream a(42);
  RngStream b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.next_unit();
    CHECK(u == b.next_unit());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }

  RngStream s1 = RngStream::substream(42, 0);
  RngStream s2 = RngStream::substream(42, 1);
  CHECK(s1.next_u64() != s2.next_u64());

  RngStream idx(9);
  for (int i = 0; i < 1000; ++i) {
    CHECK(idx.next_index(3) < 3);
  }
}
