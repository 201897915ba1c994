#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "proph/engine.hpp"
#include "proph/instance.hpp"
#include "proph/strategy.hpp"
#include "proph/threshold_table.hpp"

namespace proph {

inline constexpr double kSolverTolerance = 1e-9;
inline constexpr int kDefaultBestResponseAgentCap = 4;

/// Backward induction for a single decision maker who may accept up to
/// `num_slots` rewards and maximizes their expected sum:
///
///   V_t(i) = E[ max(v_t + V_{t+1}(i-1), V_{t+1}(i)) ],  V_horizon = 0,
///   V_t(0) = 0.
///
/// Requires a fully discrete instance. The returned table satisfies the
/// concavity invariant (checked after the solve).
ThresholdTable solve_k_select(const Instance& inst, int num_slots);

/// Convenience: num_slots = inst.num_agents().
ThresholdTable solve_k_select(const Instance& inst);

/// The subgame-perfect profile of the ranked-rule game: every agent selects
/// the reward at time t iff it weakly exceeds the table threshold for her
/// current rank among the active agents. Requires tie_rule == ranked and a
/// table solved for this instance with num_slots == num_agents.
StrategyProfile spe_profile(const Instance& inst,
                            std::shared_ptr<const ThresholdTable> table);

/// Exact worst case of a fixed single-threshold policy against adversarial
/// opponents, plus the claim it is checked against.
struct WorstCaseCertificate {
  double strategy_threshold = 0.0;
  double guarantee_claimed = 0.0;
  double worst_case_utility = 0.0;
  bool pass = false;  // worst_case_utility >= guarantee_claimed - 1e-9
  /// Minimizing adversary decisions per DP state, one line per state.
  std::string adversary_policy_digest;
};

/// Worst-case expected utility of an agent playing the fixed threshold
/// `my_threshold` under the random tie rule, minimized exactly over all
/// joint behaviors of the other num_agents-1 agents. DP state: (time,
/// number of active adversaries). Fully discrete instances only.
WorstCaseCertificate worst_case_utility_random(const Instance& inst,
                                               int num_agents,
                                               double my_threshold,
                                               double guarantee_claimed);
WorstCaseCertificate worst_case_utility_random(const Instance& inst,
                                               int num_agents,
                                               double my_threshold);

/// Ranked-rule analogue for the agent ranked `my_rank` (1-based). Only the
/// my_rank-1 higher-ranked agents can take a contested reward away, so the
/// DP state is (time, number of active higher-ranked adversaries).
WorstCaseCertificate worst_case_utility_ranked(const Instance& inst,
                                               int num_agents, int my_rank,
                                               double my_threshold,
                                               double guarantee_claimed);
WorstCaseCertificate worst_case_utility_ranked(const Instance& inst,
                                               int num_agents, int my_rank,
                                               double my_threshold);

struct BestResponse {
  double value = 0.0;
  /// A policy attaining `value` against the fixed opponents.
  Strategy policy;
};

/// Optimal deviation value for one agent with every other strategy held
/// fixed: backward induction over (time, active-agent set) under the
/// instance's tie rule. Requires a fully discrete instance and
/// num_agents <= max_agents (the DP state contains the active-set bitmask).
BestResponse best_response_value(const Instance& inst,
                                 const StrategyProfile& profile, int agent,
                                 int max_agents = kDefaultBestResponseAgentCap);

struct AgentEquilibriumCheck {
  int agent = 0;  // 0-based
  double utility = 0.0;
  double best_response = 0.0;
  bool is_best_response = false;  // best_response <= utility + 1e-9
};

struct NashReport {
  std::vector<AgentEquilibriumCheck> agents;
  bool is_nash = false;
};

/// Nash check: every agent's utility in the profile against her
/// best-response value, at tolerance 1e-9.
NashReport verify_nash(const Instance& inst, const StrategyProfile& profile,
                       int max_agents = kDefaultBestResponseAgentCap,
                       std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace proph
