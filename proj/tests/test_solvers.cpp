#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "proph/errors.hpp"
#include "proph/order_stats.hpp"
#include "proph/solvers.hpp"
#include "support/random_instances.hpp"

using namespace proph;

namespace {

Instance three_two_one(int num_agents, TieRule rule) {
  return Instance({Distribution::point(3), Distribution::point(2),
                   Distribution::point(1)},
                  num_agents, rule);
}

StrategyProfile uniform_profile(int k, double threshold) {
  StrategyProfile profile;
  for (int i = 0; i < k; ++i) {
    profile.agents.push_back(Strategy::single_threshold(threshold));
  }
  return profile;
}

}  // namespace

TEST_CASE("single-slot backward induction on a hand example") {
  const Instance inst(
      {Distribution::discrete({{0.0, 0.5}, {2.0, 0.5}}), Distribution::point(1)},
      1, TieRule::ranked);
  const ThresholdTable table = solve_k_select(inst, 1);
  REQUIRE(table.horizon() == 2);
  REQUIRE(table.num_slots() == 1);
  // From the end: V_1(1) = 1, so accept at t=0 only when v >= 1.
  CHECK(table.value(1, 1) == doctest::Approx(1.0));
  CHECK(table.threshold(0, 1) == doctest::Approx(1.0));
  // V_0(1) = 0.5 * 2 + 0.5 * 1
  CHECK(table.value(0, 1) == doctest::Approx(1.5));
  CHECK(table.value(0, 0) == 0.0);
}

TEST_CASE("two-slot backward induction on a hand example") {
  const Instance inst({Distribution::point(1), Distribution::point(10)}, 2,
                      TieRule::ranked);
  const ThresholdTable table = solve_k_select(inst);
  // At t=1 one reward of 10 remains; it is the last round, so both
  // thresholds there are zero.
  CHECK(table.value(1, 1) == doctest::Approx(10.0));
  CHECK(table.value(1, 2) == doctest::Approx(10.0));
  CHECK(table.threshold(1, 1) == doctest::Approx(0.0));
  CHECK(table.threshold(1, 2) == doctest::Approx(0.0));
  // With two slots both rewards are collected.
  CHECK(table.value(0, 2) == doctest::Approx(11.0));
  // With one slot, skipping the 1 and taking the 10 is optimal.
  CHECK(table.value(0, 1) == doctest::Approx(10.0));
  CHECK(table.threshold(0, 1) == doctest::Approx(10.0));
  CHECK(table.threshold(0, 2) == doctest::Approx(0.0));
}

TEST_CASE("value tables are monotone and concave in the slot count") {
  RngStream rng(51);
  for (int rep = 0; rep < 25; ++rep) {
    const Instance inst = testsupport::random_instance(rng, TieRule::ranked);
    const ThresholdTable table = solve_k_select(inst);
    for (int t = 0; t <= inst.horizon(); ++t) {
      for (int i = 1; i <= inst.num_agents(); ++i) {
        CHECK(table.value(t, i) >= table.value(t, i - 1) - 1e-12);
        if (i >= 2) {
          const double gain_i = table.value(t, i) - table.value(t, i - 1);
          const double gain_prev = table.value(t, i - 1) - table.value(t, i - 2);
          CHECK(gain_i <= gain_prev + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("table indices are validated") {
  const ThresholdTable table =
      solve_k_select(three_two_one(2, TieRule::ranked));
  CHECK_THROWS_AS(table.value(-1, 0), std::out_of_range);
  CHECK_THROWS_AS(table.value(4, 0), std::out_of_range);
  CHECK_THROWS_AS(table.value(0, 3), std::out_of_range);
  CHECK_THROWS_AS(table.threshold(3, 1), std::out_of_range);
  CHECK_THROWS_AS(solve_k_select(three_two_one(2, TieRule::ranked), 0),
                  ConfigError);
}

TEST_CASE("the ranked equilibrium realizes the planner optimum") {
  RngStream rng(61);
  int checked = 0;
  while (checked < 20) {
    const Instance inst = testsupport::random_instance(rng, TieRule::ranked);
    auto table = std::make_shared<ThresholdTable>(solve_k_select(inst));
    const StrategyProfile profile = spe_profile(inst, table);
    const GameReport report = expected_utilities_exact(inst, profile);
    CHECK(report.welfare ==
          doctest::Approx(table->value(0, inst.num_agents())).epsilon(1e-9));

    if (inst.num_agents() <= 4) {
      const NashReport nash = verify_nash(inst, profile);
      CHECK(nash.is_nash);
      for (const auto& check : nash.agents) {
        CHECK(check.best_response <= check.utility + 1e-9);
      }
    }
    ++checked;
  }
}

TEST_CASE("equilibrium play takes exactly the planner's accept set") {
  RngStream rng(71);
  int checked = 0;
  while (checked < 30) {
    const Instance inst = testsupport::random_instance(rng, TieRule::ranked);
    auto table = std::make_shared<ThresholdTable>(solve_k_select(inst));
    if (testsupport::has_threshold_collision(inst, *table)) continue;
    const StrategyProfile profile = spe_profile(inst, table);
    for (const Realization& r : all_realizations(inst)) {
      const auto planner =
          testsupport::k_select_accepts(*table, r.values, inst.num_agents());
      const auto played = testsupport::profile_accepts(inst, profile, r);
      CHECK(planner == played);
    }
    ++checked;
  }
}

TEST_CASE("spe profiles require the ranked rule and a matching table") {
  const Instance random_inst = three_two_one(2, TieRule::random);
  auto table = std::make_shared<ThresholdTable>(
      solve_k_select(three_two_one(2, TieRule::ranked)));
  CHECK_THROWS_AS(spe_profile(random_inst, table), RuleMismatchError);

  const Instance short_inst({Distribution::point(1)}, 1, TieRule::ranked);
  CHECK_THROWS_AS(spe_profile(short_inst, table), ConfigError);
  CHECK_THROWS_AS(spe_profile(three_two_one(2, TieRule::ranked), nullptr),
                  ConfigError);
}

TEST_CASE("worst cases of fixed thresholds on the 3,2,1 instance") {
  const Instance inst = three_two_one(2, TieRule::random);
  const auto random_cert = worst_case_utility_random(inst, 2, 1.25, 1.25);
  CHECK(random_cert.worst_case_utility == doctest::Approx(2.5));
  CHECK(random_cert.pass);
  CHECK(random_cert.strategy_threshold == 1.25);
  CHECK(random_cert.guarantee_claimed == 1.25);
  CHECK_FALSE(random_cert.adversary_policy_digest.empty());

  const auto ranked_cert = worst_case_utility_ranked(inst, 2, 2, 1.0, 1.0);
  CHECK(ranked_cert.worst_case_utility == doctest::Approx(2.0));
  CHECK(ranked_cert.pass);

  // Rank 1 is never blocked, so it just runs the single-agent threshold rule.
  const auto top_cert = worst_case_utility_ranked(inst, 2, 1, 1.5);
  CHECK(top_cert.worst_case_utility == doctest::Approx(3.0));

  const auto failing = worst_case_utility_random(inst, 2, 1.25, 2.6);
  CHECK_FALSE(failing.pass);
  CHECK(failing.worst_case_utility == doctest::Approx(2.5));
}

TEST_CASE("worst cases never exceed the utility against concrete opponents") {
  RngStream rng(81);
  for (int rep = 0; rep < 25; ++rep) {
    const TieRule rule = rep % 2 == 0 ? TieRule::random : TieRule::ranked;
    const Instance inst = testsupport::random_instance(rng, rule);
    const int k = inst.num_agents();
    const double threshold = 3.0 * rng.next_unit();
    const StrategyProfile profile = uniform_profile(k, threshold);
    const GameReport report = expected_utilities_exact(inst, profile);

    if (rule == TieRule::random) {
      const auto cert = worst_case_utility_random(inst, k, threshold);
      for (int i = 0; i < k; ++i) {
        CHECK(cert.worst_case_utility <= report.per_agent_utility[i] + 1e-9);
      }
    } else {
      for (int rank = 1; rank <= k; ++rank) {
        const auto cert = worst_case_utility_ranked(inst, k, rank, threshold);
        CHECK(cert.worst_case_utility <=
              report.per_agent_utility[rank - 1] + 1e-9);
      }
    }
  }
}

TEST_CASE("guarantee thresholds certify on random instances") {
  RngStream rng(91);
  for (int rep = 0; rep < 40; ++rep) {
    const Instance inst = testsupport::random_instance(rng, TieRule::random);
    const OrderStatReport stats = expected_order_stats_exact(inst);
    const int k = inst.num_agents();
    const int n = inst.horizon();

    for (int ell = 1; ell <= n; ++ell) {
      const double t = random_tie_threshold(stats, k, ell);
      const auto cert = worst_case_utility_random(inst, k, t, t);
      CHECK(cert.worst_case_utility >= t - 1e-9);
    }
    for (int rank = 1; rank <= std::min(k, n); ++rank) {
      for (int ell = 0; ell <= n - rank; ++ell) {
        const double t = ranked_tie_threshold(stats, rank, ell);
        const auto cert =
            worst_case_utility_ranked(inst.with_tie_rule(TieRule::ranked), k,
                                      rank, t, t);
        CHECK(cert.worst_case_utility >= t - 1e-9);
      }
    }
  }
}

TEST_CASE("best responses are attained by the returned policy") {
  RngStream rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    const TieRule rule = rep % 2 == 0 ? TieRule::random : TieRule::ranked;
    const Instance inst = testsupport::random_instance(rng, rule);
    StrategyProfile profile;
    for (int i = 0; i < inst.num_agents(); ++i) {
      profile.agents.push_back(
          Strategy::single_threshold(4.0 * rng.next_unit()));
    }
    const int agent = static_cast<int>(rng.next_index(
        static_cast<std::uint64_t>(inst.num_agents())));
    const BestResponse br = best_response_value(inst, profile, agent);

    StrategyProfile deviated = profile;
    deviated.agents[agent] = br.policy;
    const GameReport report = expected_utilities_exact(inst, deviated);
    CHECK(report.per_agent_utility[agent] == doctest::Approx(br.value));

    const GameReport original = expected_utilities_exact(inst, profile);
    CHECK(br.value >= original.per_agent_utility[agent] - 1e-9);
  }
}

TEST_CASE("nash verification flags profitable deviations") {
  // Two agents grabbing everything leave the chance reward on the table.
  const Distribution chance = Distribution::discrete({{0.0, 0.5}, {5.0, 0.5}});
  const Instance inst({Distribution::point(1), Distribution::point(1), chance},
                      2, TieRule::random);
  const NashReport report = verify_nash(inst, uniform_profile(2, 0.0));
  CHECK_FALSE(report.is_nash);
  REQUIRE(report.agents.size() == 2);
  for (const auto& check : report.agents) {
    CHECK(check.utility == doctest::Approx(1.0));
    CHECK(check.best_response == doctest::Approx(2.5));
    CHECK_FALSE(check.is_best_response);
  }
}

TEST_CASE("solver guards on capability limits") {
  const Instance big(std::vector<Distribution>(6, Distribution::point(1)), 5,
                     TieRule::random);
  CHECK_THROWS_AS(best_response_value(big, uniform_profile(5, 0.0), 0),
                  TooManyAgentsError);
  CHECK_THROWS_AS(best_response_value(big, uniform_profile(5, 0.0), 0, 21),
                  ConfigError);
  CHECK_THROWS_AS(
      best_response_value(three_two_one(2, TieRule::random),
                          uniform_profile(2, 0.0), 2),
      IndexOutOfRangeError);

  const Instance param({Distribution::uniform(0, 1)}, 1, TieRule::random);
  CHECK_THROWS_AS(solve_k_select(param), NotDiscreteError);
  CHECK_THROWS_AS(best_response_value(param, uniform_profile(1, 0.0), 0),
                  NotDiscreteError);
}
