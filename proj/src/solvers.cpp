#include "proph/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

#include "proph/errors.hpp"
#include "proph/threshold_table.hpp"

namespace proph {

namespace {

void require_discrete(const Instance& inst, const char* what) {
  if (!inst.fully_discrete()) {
    throw NotDiscreteError(std::string(what) +
                           " requires a fully discrete instance");
  }
}

std::string digest_value(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

ThresholdTable::ThresholdTable(int horizon, int num_slots)
    : horizon_(horizon), num_slots_(num_slots) {
  if (horizon < 0 || num_slots < 0) {
    throw ConfigError("threshold table dimensions must be non-negative");
  }
  values_.assign(static_cast<std::size_t>(horizon + 1) * (num_slots + 1), 0.0);
}

std::size_t ThresholdTable::idx(int t, int slots_left) const {
  if (t < 0 || t > horizon_ || slots_left < 0 || slots_left > num_slots_) {
    throw std::out_of_range("threshold table index out of range");
  }
  return static_cast<std::size_t>(t) * (num_slots_ + 1) + slots_left;
}

ThresholdTable solve_k_select(const Instance& inst, int num_slots) {
  if (num_slots < 1) {
    throw ConfigError("num_slots must be at least 1");
  }
  require_discrete(inst, "k-select backward induction");

  const int n = inst.horizon();
  ThresholdTable table(n, num_slots);
  for (int t = n - 1; t >= 0; --t) {
    for (int i = 1; i <= num_slots; ++i) {
      double expectation = 0.0;
      for (const Distribution::Atom& atom : inst.dist(t).support()) {
        expectation +=
            atom.probability * std::max(atom.value + table.value(t + 1, i - 1),
                                        table.value(t + 1, i));
      }
      table.set_value(t, i, expectation);
    }
  }

  const double slack = 1e-9 * std::max(1.0, table.value(0, num_slots));
  for (int t = 0; t <= n; ++t) {
    for (int i = 1; i <= num_slots; ++i) {
      if (table.value(t, i) + slack < table.value(t, i - 1)) {
        throw std::logic_error("k-select value lost monotonicity in slots");
      }
      if (t < n && i >= 2 &&
          table.threshold(t, i) > table.threshold(t, i - 1) + slack) {
        throw std::logic_error("k-select thresholds lost monotonicity");
      }
    }
  }
  return table;
}

ThresholdTable solve_k_select(const Instance& inst) {
  return solve_k_select(inst, inst.num_agents());
}

StrategyProfile spe_profile(const Instance& inst,
                            std::shared_ptr<const ThresholdTable> table) {
  if (inst.tie_rule() != TieRule::ranked) {
    throw RuleMismatchError(
        "subgame-perfect thresholds require the ranked tie rule");
  }
  if (!table) {
    throw ConfigError("spe_profile requires a threshold table");
  }
  if (table->horizon() != inst.horizon() ||
      table->num_slots() != inst.num_agents()) {
    throw ConfigError("threshold table was not solved for this instance");
  }
  StrategyProfile profile;
  profile.agents.reserve(inst.num_agents());
  for (int j = 0; j < inst.num_agents(); ++j) {
    profile.agents.push_back(Strategy::rank_table(table));
  }
  return profile;
}

WorstCaseCertificate worst_case_utility_random(const Instance& inst,
                                               int num_agents,
                                               double my_threshold,
                                               double guarantee_claimed) {
  if (num_agents < 1) {
    throw ConfigError("num_agents must be at least 1");
  }
  require_discrete(inst, "worst-case certification");

  const int n = inst.horizon();
  const int a_max = num_agents - 1;
  // W[t][a]: my worst-case continuation value from time t with a adversaries
  // still active, given I always select iff v >= my_threshold.
  std::vector<std::vector<double>> W(
      n + 1, std::vector<double>(a_max + 1, 0.0));
  std::vector<std::vector<std::vector<std::string>>> actions(
      n, std::vector<std::vector<std::string>>(a_max + 1));

  for (int t = n - 1; t >= 0; --t) {
    for (int a = 0; a <= a_max; ++a) {
      double expectation = 0.0;
      for (const Distribution::Atom& atom : inst.dist(t).support()) {
        const double v = atom.value;
        double best;
        std::string action;
        if (v >= my_threshold) {
          // I select. c adversaries contesting leaves me v/(c+1) now and,
          // when I lose, one of them gone.
          best = v;
          action = "yield";
          for (int c = 1; c <= a; ++c) {
            const double val = (v + c * W[t + 1][a - 1]) / (c + 1);
            if (val < best) {
              best = val;
              action = "contest c=" + std::to_string(c);
            }
          }
        } else {
          // I pass. The adversaries either let the reward go or spend one
          // of their own on it.
          best = W[t + 1][a];
          action = "pass";
          if (a >= 1 && W[t + 1][a - 1] < best) {
            best = W[t + 1][a - 1];
            action = "take";
          }
        }
        expectation += atom.probability * best;
        actions[t][a].push_back("t=" + std::to_string(t + 1) +
                                " adversaries=" + std::to_string(a) +
                                " v=" + digest_value(v) + ": " + action);
      }
      W[t][a] = expectation;
    }
  }

  std::string digest;
  for (int t = 0; t < n; ++t) {
    for (int a = 0; a <= a_max; ++a) {
      for (const std::string& line : actions[t][a]) {
        digest += line;
        digest += '\n';
      }
    }
  }

  WorstCaseCertificate cert;
  cert.strategy_threshold = my_threshold;
  cert.guarantee_claimed = guarantee_claimed;
  cert.worst_case_utility = W[0][a_max];
  cert.pass = cert.worst_case_utility >= guarantee_claimed - kSolverTolerance;
  cert.adversary_policy_digest = std::move(digest);
  return cert;
}

WorstCaseCertificate worst_case_utility_random(const Instance& inst,
                                               int num_agents,
                                               double my_threshold) {
  return worst_case_utility_random(inst, num_agents, my_threshold,
                                   my_threshold);
}

WorstCaseCertificate worst_case_utility_ranked(const Instance& inst,
                                               int num_agents, int my_rank,
                                               double my_threshold,
                                               double guarantee_claimed) {
  if (num_agents < 1) {
    throw ConfigError("num_agents must be at least 1");
  }
  if (my_rank < 1 || my_rank > num_agents) {
    throw RankOutOfRangeError("rank must lie in 1.." +
                              std::to_string(num_agents) + ", got " +
                              std::to_string(my_rank));
  }
  require_discrete(inst, "worst-case certification");

  const int n = inst.horizon();
  const int h_max = my_rank - 1;
  // W[t][h]: worst case with h higher-ranked adversaries active. Lower
  // ranks can never take a contested reward from me and their selections
  // do not change h, so they drop out of the state.
  std::vector<std::vector<double>> W(
      n + 1, std::vector<double>(h_max + 1, 0.0));
  std::vector<std::vector<std::vector<std::string>>> actions(
      n, std::vector<std::vector<std::string>>(h_max + 1));

  for (int t = n - 1; t >= 0; --t) {
    for (int h = 0; h <= h_max; ++h) {
      double expectation = 0.0;
      for (const Distribution::Atom& atom : inst.dist(t).support()) {
        const double v = atom.value;
        double best;
        std::string action;
        if (v >= my_threshold) {
          best = v;
          action = "yield";
          if (h >= 1 && W[t + 1][h - 1] < best) {
            best = W[t + 1][h - 1];
            action = "contest";
          }
        } else {
          best = W[t + 1][h];
          action = "pass";
          if (h >= 1 && W[t + 1][h - 1] < best) {
            best = W[t + 1][h - 1];
            action = "take";
          }
        }
        expectation += atom.probability * best;
        actions[t][h].push_back("t=" + std::to_string(t + 1) +
                                " higher_active=" + std::to_string(h) +
                                " v=" + digest_value(v) + ": " + action);
      }
      W[t][h] = expectation;
    }
  }

  std::string digest;
  for (int t = 0; t < n; ++t) {
    for (int h = 0; h <= h_max; ++h) {
      for (const std::string& line : actions[t][h]) {
        digest += line;
        digest += '\n';
      }
    }
  }

  WorstCaseCertificate cert;
  cert.strategy_threshold = my_threshold;
  cert.guarantee_claimed = guarantee_claimed;
  cert.worst_case_utility = W[0][h_max];
  cert.pass = cert.worst_case_utility >= guarantee_claimed - kSolverTolerance;
  cert.adversary_policy_digest = std::move(digest);
  return cert;
}

WorstCaseCertificate worst_case_utility_ranked(const Instance& inst,
                                               int num_agents, int my_rank,
                                               double my_threshold) {
  return worst_case_utility_ranked(inst, num_agents, my_rank, my_threshold,
                                   my_threshold);
}

BestResponse best_response_value(const Instance& inst,
                                 const StrategyProfile& profile, int agent,
                                 int max_agents) {
  const int k = inst.num_agents();
  if (profile.size() != k) {
    throw ConfigError("profile has " + std::to_string(profile.size()) +
                      " strategies for " + std::to_string(k) + " agents");
  }
  if (agent < 0 || agent >= k) {
    throw IndexOutOfRangeError("agent index must lie in 0.." +
                               std::to_string(k - 1) + ", got " +
                               std::to_string(agent));
  }
  if (max_agents < 1 || max_agents > 20) {
    throw ConfigError("max_agents must lie in 1..20");
  }
  if (k > max_agents) {
    throw TooManyAgentsError("best-response search supports at most " +
                             std::to_string(max_agents) +
                             " agents, the instance has " + std::to_string(k));
  }
  require_discrete(inst, "best-response search");

  const int n = inst.horizon();
  const std::uint32_t full = (1u << k) - 1u;
  const std::uint32_t my_bit = 1u << agent;

  // value[t][mask]: my optimal continuation value when the active set is
  // `mask` (which must contain me) at time t.
  std::vector<std::vector<double>> value(
      n + 1, std::vector<double>(full + 1, 0.0));
  ExactPolicy policy;

  std::vector<int> opponents;
  for (int t = n - 1; t >= 0; --t) {
    for (std::uint32_t mask = 0; mask <= full; ++mask) {
      if ((mask & my_bit) == 0) continue;
      double expectation = 0.0;
      std::vector<double> accepted;
      for (const Distribution::Atom& atom : inst.dist(t).support()) {
        const double v = atom.value;
        opponents.clear();
        for (int j = 0; j < k; ++j) {
          if (j != agent && ((mask >> j) & 1u) != 0 &&
              profile.agents[j].selects(t, v, mask, j)) {
            opponents.push_back(j);
          }
        }

        double pass_val;
        if (opponents.empty()) {
          pass_val = value[t + 1][mask];
        } else if (inst.tie_rule() == TieRule::ranked) {
          pass_val = value[t + 1][mask & ~(1u << opponents.front())];
        } else {
          pass_val = 0.0;
          for (int w : opponents) pass_val += value[t + 1][mask & ~(1u << w)];
          pass_val /= static_cast<double>(opponents.size());
        }

        double select_val;
        if (inst.tie_rule() == TieRule::ranked) {
          if (opponents.empty() || agent < opponents.front()) {
            select_val = v;
          } else {
            select_val = value[t + 1][mask & ~(1u << opponents.front())];
          }
        } else {
          select_val = v;
          for (int w : opponents) select_val += value[t + 1][mask & ~(1u << w)];
          select_val /= static_cast<double>(opponents.size() + 1);
        }

        if (select_val >= pass_val) accepted.push_back(v);
        expectation += atom.probability * std::max(select_val, pass_val);
      }
      value[t][mask] = expectation;
      policy.set(t, mask, std::move(accepted));
    }
  }

  BestResponse response{value[0][full], Strategy::exact_policy(std::move(policy))};
  return response;
}

NashReport verify_nash(const Instance& inst, const StrategyProfile& profile,
                       int max_agents, std::uint64_t cap) {
  const GameReport utilities = expected_utilities_exact(inst, profile, cap);

  NashReport report;
  report.is_nash = true;
  for (int agent = 0; agent < inst.num_agents(); ++agent) {
    const BestResponse br =
        best_response_value(inst, profile, agent, max_agents);
    AgentEquilibriumCheck check;
    check.agent = agent;
    check.utility = utilities.per_agent_utility[agent];
    check.best_response = br.value;
    check.is_best_response = br.value <= check.utility + kSolverTolerance;
    report.is_nash = report.is_nash && check.is_best_response;
    report.agents.push_back(check);
  }
  return report;
}

}  // namespace proph
