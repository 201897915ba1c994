#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "proph/order_stats.hpp"
#include "proph/threshold_table.hpp"

namespace proph {

/// Exact per-state accept sets, produced by the best-response solver for
/// fully discrete instances. For each (time, active set) state it lists the
/// support values to accept; anything else is passed.
class ExactPolicy {
 public:
  void set(int t, std::uint32_t active_mask, std::vector<double> accepted);
  bool selects(int t, double value, std::uint32_t active_mask) const;

  const std::map<std::pair<int, std::uint32_t>, std::vector<double>>& states()
      const {
    return accepted_;
  }

 private:
  std::map<std::pair<int, std::uint32_t>, std::vector<double>> accepted_;
};

/// A decision rule for one agent. Every rule reduces, per state, to a
/// threshold test with weak inequality: select the reward iff its value is
/// >= the rule's threshold there. Rules may depend only on the time, the
/// revealed value, and the set of still-active agents.
class Strategy {
 public:
  enum class Kind {
    single_threshold,    // one fixed threshold for the whole game
    per_time_threshold,  // one threshold per time step
    rank_table,          // threshold(t, own rank among active agents)
    exact_policy,        // per-(t, active set) accept sets
  };

  static Strategy single_threshold(double threshold);
  static Strategy per_time_threshold(std::vector<double> thresholds);
  static Strategy rank_table(std::shared_ptr<const ThresholdTable> table);
  static Strategy exact_policy(ExactPolicy policy);

  Kind kind() const;

  /// Decision of agent `self` (0-based) at time t (0-based) given the
  /// revealed value and the bitmask of active agents. `self` must be active.
  bool selects(int t, double value, std::uint32_t active_mask, int self) const;

  double threshold() const;                       // single_threshold
  const std::vector<double>& thresholds() const;  // per_time_threshold
  const ThresholdTable& table() const;            // rank_table
  const ExactPolicy& policy() const;              // exact_policy

 private:
  struct Single {
    double threshold;
  };
  struct PerTime {
    std::vector<double> thresholds;
  };
  struct RankTable {
    std::shared_ptr<const ThresholdTable> table;
  };

  explicit Strategy(std::variant<Single, PerTime, RankTable, ExactPolicy> impl)
      : impl_(std::move(impl)) {}

  std::variant<Single, PerTime, RankTable, ExactPolicy> impl_;
};

/// One strategy per agent; the list index is the agent's a-priori rank under
/// ranked tie-breaking (index 0 = highest rank).
struct StrategyProfile {
  std::vector<Strategy> agents;

  int size() const { return static_cast<int>(agents.size()); }
};

/// 1-based rank of `self` among the agents set in `active_mask`.
int rank_among_active(std::uint32_t active_mask, int self);

/// Threshold of the random tie-breaking guarantee family: the mean of the
/// top `ell` expected order statistics divided by (num_agents + ell).
/// Requires 1 <= ell <= n.
double random_tie_threshold(const OrderStatReport& stats, int num_agents,
                            int ell);

/// Threshold of the ranked tie-breaking guarantee family for the agent of
/// rank `i` (1-based): the mean of expected order statistics i..i+ell divided
/// by (ell + 2). Requires 1 <= i <= n and 0 <= ell <= n - i.
double ranked_tie_threshold(const OrderStatReport& stats, int rank, int ell);

struct BestEll {
  int ell;
  double threshold;
};

/// The ell maximizing the corresponding threshold; ties break toward the
/// smaller ell.
BestEll best_ell_random(const OrderStatReport& stats, int num_agents);
BestEll best_ell_ranked(const OrderStatReport& stats, int rank);

}  // namespace proph
