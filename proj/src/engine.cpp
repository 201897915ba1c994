#include "proph/engine.hpp"

#include <cmath>
#include <string>

#include "proph/errors.hpp"
#include "proph/order_stats.hpp"
#include "proph/rng.hpp"

namespace proph {

namespace {

void require_playable(const Instance& inst, const StrategyProfile& profile,
                      const Realization& realization) {
  if (profile.size() != inst.num_agents()) {
    throw ConfigError("profile has " + std::to_string(profile.size()) +
                      " strategies for " + std::to_string(inst.num_agents()) +
                      " agents");
  }
  if (static_cast<int>(realization.values.size()) != inst.horizon()) {
    throw ConfigError("realization length does not match the horizon");
  }
}

std::uint32_t full_mask(int num_agents) {
  return num_agents == 32 ? ~0u : (1u << num_agents) - 1u;
}

std::vector<int> selectors_at(const StrategyProfile& profile, int t,
                              double value, std::uint32_t mask) {
  std::vector<int> out;
  for (int j = 0; j < profile.size(); ++j) {
    if (((mask >> j) & 1u) != 0 &&
        profile.agents[j].selects(t, value, mask, j)) {
      out.push_back(j);
    }
  }
  return out;
}

void finish_outcome(GameOutcome& outcome) {
  double welfare = 0.0;
  for (double u : outcome.per_agent_utility) welfare += u;
  outcome.welfare = welfare;
}

void branch_outcomes(const Instance& inst, const StrategyProfile& profile,
                     const Realization& realization, int t, std::uint32_t mask,
                     double prob, GameOutcome& partial,
                     std::vector<std::pair<double, GameOutcome>>& leaves) {
  if (t == inst.horizon() || mask == 0) {
    GameOutcome leaf = partial;
    finish_outcome(leaf);
    leaves.emplace_back(prob, std::move(leaf));
    return;
  }
  const double v = realization.values[t];
  const std::vector<int> sel = selectors_at(profile, t, v, mask);
  if (sel.empty()) {
    branch_outcomes(inst, profile, realization, t + 1, mask, prob, partial,
                    leaves);
    return;
  }

  const bool split =
      inst.tie_rule() == TieRule::random && sel.size() > 1;
  const double child_prob = split ? prob / static_cast<double>(sel.size())
                                  : prob;
  const std::size_t num_children = split ? sel.size() : 1;
  for (std::size_t c = 0; c < num_children; ++c) {
    const int winner = sel[c];  // ranked rule: sel[0] has the lowest index
    partial.assignment[winner] = GameOutcome::Assigned{t, v};
    partial.per_agent_utility[winner] = v;
    branch_outcomes(inst, profile, realization, t + 1,
                    mask & ~(1u << winner), child_prob, partial, leaves);
    partial.assignment[winner].reset();
    partial.per_agent_utility[winner] = 0.0;
  }
}

void accumulate_utilities(const Instance& inst, const StrategyProfile& profile,
                          const std::vector<double>& values, int t,
                          std::uint32_t mask, double weight,
                          std::vector<double>& acc) {
  if (t == inst.horizon() || mask == 0) return;
  const double v = values[t];
  const std::vector<int> sel = selectors_at(profile, t, v, mask);
  if (sel.empty()) {
    accumulate_utilities(inst, profile, values, t + 1, mask, weight, acc);
    return;
  }
  if (inst.tie_rule() == TieRule::ranked || sel.size() == 1) {
    const int winner = sel[0];
    acc[winner] += weight * v;
    accumulate_utilities(inst, profile, values, t + 1, mask & ~(1u << winner),
                         weight, acc);
    return;
  }
  const double w = weight / static_cast<double>(sel.size());
  for (int winner : sel) {
    acc[winner] += w * v;
    accumulate_utilities(inst, profile, values, t + 1, mask & ~(1u << winner),
                         w, acc);
  }
}

}  // namespace

GameOutcome play_once(const Instance& inst, const StrategyProfile& profile,
                      const Realization& realization, RngStream& rng) {
  require_playable(inst, profile, realization);
  const int k = inst.num_agents();
  GameOutcome outcome;
  outcome.assignment.resize(k);
  outcome.per_agent_utility.assign(k, 0.0);

  std::uint32_t mask = full_mask(k);
  for (int t = 0; t < inst.horizon() && mask != 0; ++t) {
    const double v = realization.values[t];
    const std::vector<int> sel = selectors_at(profile, t, v, mask);
    if (sel.empty()) continue;
    int winner = sel[0];
    if (sel.size() > 1 && inst.tie_rule() == TieRule::random) {
      winner = sel[rng.next_index(sel.size())];
    }
    outcome.assignment[winner] = GameOutcome::Assigned{t, v};
    outcome.per_agent_utility[winner] = v;
    mask &= ~(1u << winner);
  }
  finish_outcome(outcome);
  return outcome;
}

std::vector<std::pair<double, GameOutcome>> tie_branches(
    const Instance& inst, const StrategyProfile& profile,
    const Realization& realization) {
  require_playable(inst, profile, realization);
  const int k = inst.num_agents();
  GameOutcome partial;
  partial.assignment.resize(k);
  partial.per_agent_utility.assign(k, 0.0);

  std::vector<std::pair<double, GameOutcome>> leaves;
  branch_outcomes(inst, profile, realization, 0, full_mask(k), 1.0, partial,
                  leaves);
  return leaves;
}

GameReport expected_utilities_exact(const Instance& inst,
                                    const StrategyProfile& profile,
                                    std::uint64_t cap) {
  if (profile.size() != inst.num_agents()) {
    throw ConfigError("profile has " + std::to_string(profile.size()) +
                      " strategies for " + std::to_string(inst.num_agents()) +
                      " agents");
  }
  const int k = inst.num_agents();
  std::vector<double> acc(k, 0.0);
  enumerate_realizations(
      inst,
      [&](const Realization& r) {
        accumulate_utilities(inst, profile, r.values, 0, full_mask(k),
                             r.probability, acc);
      },
      cap);

  GameReport report;
  report.per_agent_utility = std::move(acc);
  for (double u : report.per_agent_utility) report.welfare += u;
  report.method = EstimateMethod::exact;
  report.num_samples = 0;
  report.std_errors.assign(k, 0.0);
  return report;
}

GameReport expected_utilities_mc(const Instance& inst,
                                 const StrategyProfile& profile,
                                 std::int64_t num_samples,
                                 std::uint64_t seed) {
  if (num_samples < 2) {
    throw ConfigError("monte carlo requires at least 2 samples");
  }
  const int k = inst.num_agents();
  std::vector<double> sums(k, 0.0);
  std::vector<double> sq_sums(k, 0.0);

  for (std::int64_t rep = 0; rep < num_samples; ++rep) {
    RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(rep));
    const Realization r = sample_realization(inst, rng);
    const GameOutcome outcome = play_once(inst, profile, r, rng);
    for (int j = 0; j < k; ++j) {
      const double u = outcome.per_agent_utility[j];
      sums[j] += u;
      sq_sums[j] += u * u;
    }
  }

  GameReport report;
  report.method = EstimateMethod::monte_carlo;
  report.num_samples = num_samples;
  report.per_agent_utility.resize(k);
  report.std_errors.resize(k);
  const double s = static_cast<double>(num_samples);
  for (int j = 0; j < k; ++j) {
    const double mean = sums[j] / s;
    const double var =
        std::max(0.0, (sq_sums[j] - s * mean * mean) / (s - 1.0));
    report.per_agent_utility[j] = mean;
    report.std_errors[j] = std::sqrt(var / s);
    report.welfare += mean;
  }
  return report;
}

}  // namespace proph
