#pragma once

#include <cstdint>
#include <vector>

#include "proph/distribution.hpp"

namespace proph {

/// How a reward selected by several agents is assigned: uniformly at random
/// among the selectors, or to the selector with the highest a-priori rank
/// (lowest agent index).
enum class TieRule { random, ranked };

/// A complete game description: the ordered reward laws, the number of
/// competing agents, and the tie-breaking rule. Immutable after
/// construction.
class Instance {
 public:
  Instance(std::vector<Distribution> distributions, int num_agents,
           TieRule tie_rule);

  int horizon() const { return static_cast<int>(distributions_.size()); }
  int num_agents() const { return num_agents_; }
  TieRule tie_rule() const { return tie_rule_; }

  const std::vector<Distribution>& distributions() const {
    return distributions_;
  }
  /// Law of the reward revealed at time t (0-based).
  const Distribution& dist(int t) const { return distributions_.at(t); }

  /// Exact operations require every law to have finite support.
  bool fully_discrete() const;

  /// Product of support sizes, saturating at UINT64_MAX.
  std::uint64_t joint_support_size() const;

  Instance with_tie_rule(TieRule rule) const {
    return Instance(distributions_, num_agents_, rule);
  }
  Instance with_num_agents(int k) const {
    return Instance(distributions_, k, tie_rule_);
  }

 private:
  std::vector<Distribution> distributions_;
  int num_agents_;
  TieRule tie_rule_;
};

/// One joint draw of the reward sequence. `probability` is the joint point
/// mass and is meaningful only for fully discrete instances (0 otherwise).
struct Realization {
  std::vector<double> values;
  double probability = 0.0;
};

}  // namespace proph
