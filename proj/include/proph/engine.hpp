#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "proph/instance.hpp"
#include "proph/strategy.hpp"

namespace proph {

class RngStream;

/// Result of one played-out game: which reward each agent ended up with,
/// per-agent utilities, and their sum.
struct GameOutcome {
  struct Assigned {
    int time;  // 0-based
    double value;
  };
  std::vector<std::optional<Assigned>> assignment;
  std::vector<double> per_agent_utility;
  double welfare = 0.0;
};

/// Expected utilities per agent. Exact reports have zero std_errors.
struct GameReport {
  std::vector<double> per_agent_utility;
  double welfare = 0.0;
  EstimateMethod method = EstimateMethod::exact;
  std::int64_t num_samples = 0;
  std::vector<double> std_errors;
};

/// Plays one game round by round: every active agent whose strategy selects
/// the revealed reward competes for it; the winner (uniform among selectors
/// under the random rule, lowest index under the ranked rule) takes it and
/// becomes inactive. Unselected rewards are lost. Deterministic under the
/// ranked rule.
GameOutcome play_once(const Instance& inst, const StrategyProfile& profile,
                      const Realization& realization, RngStream& rng);

/// Expands the random-rule tie tree of a single realization: every round
/// with c selectors branches into c equiprobable winner choices. Returns
/// (probability, outcome) leaves; probabilities sum to 1. Under the ranked
/// rule this is the single deterministic outcome.
std::vector<std::pair<double, GameOutcome>> tie_branches(
    const Instance& inst, const StrategyProfile& profile,
    const Realization& realization);

/// Exact expected utilities: enumerates all realizations and, within each,
/// the tie-break branch tree. Requires a fully discrete instance within the
/// enumeration cap.
GameReport expected_utilities_exact(
    const Instance& inst, const StrategyProfile& profile,
    std::uint64_t cap = kDefaultEnumerationCap);

/// Monte Carlo estimate averaging play_once over seeded independent
/// replications; deterministic for a fixed seed. Requires num_samples >= 2.
GameReport expected_utilities_mc(const Instance& inst,
                                 const StrategyProfile& profile,
                                 std::int64_t num_samples, std::uint64_t seed);

}  // namespace proph
