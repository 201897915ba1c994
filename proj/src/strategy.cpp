#include "proph/strategy.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "proph/errors.hpp"

namespace proph {

void ExactPolicy::set(int t, std::uint32_t active_mask,
                      std::vector<double> accepted) {
  std::sort(accepted.begin(), accepted.end());
  accepted_[{t, active_mask}] = std::move(accepted);
}

bool ExactPolicy::selects(int t, double value,
                          std::uint32_t active_mask) const {
  const auto it = accepted_.find({t, active_mask});
  if (it == accepted_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), value);
}

Strategy Strategy::single_threshold(double threshold) {
  return Strategy(Single{threshold});
}

Strategy Strategy::per_time_threshold(std::vector<double> thresholds) {
  if (thresholds.empty()) {
    throw ConfigError("per_time_threshold requires at least one threshold");
  }
  return Strategy(PerTime{std::move(thresholds)});
}

Strategy Strategy::rank_table(std::shared_ptr<const ThresholdTable> table) {
  if (!table) {
    throw ConfigError("rank_table requires a threshold table");
  }
  return Strategy(RankTable{std::move(table)});
}

Strategy Strategy::exact_policy(ExactPolicy policy) {
  return Strategy(std::move(policy));
}

Strategy::Kind Strategy::kind() const {
  if (std::holds_alternative<Single>(impl_)) return Kind::single_threshold;
  if (std::holds_alternative<PerTime>(impl_)) return Kind::per_time_threshold;
  if (std::holds_alternative<RankTable>(impl_)) return Kind::rank_table;
  return Kind::exact_policy;
}

bool Strategy::selects(int t, double value, std::uint32_t active_mask,
                       int self) const {
  if (self < 0 || ((active_mask >> self) & 1u) == 0) {
    throw ConfigError("selects() requires an active deciding agent");
  }
  if (const auto* s = std::get_if<Single>(&impl_)) {
    return value >= s->threshold;
  }
  if (const auto* p = std::get_if<PerTime>(&impl_)) {
    if (t < 0 || t >= static_cast<int>(p->thresholds.size())) {
      throw ConfigError("per_time_threshold has no threshold for time " +
                        std::to_string(t + 1));
    }
    return value >= p->thresholds[static_cast<std::size_t>(t)];
  }
  if (const auto* r = std::get_if<RankTable>(&impl_)) {
    const int rank = rank_among_active(active_mask, self);
    if (t < 0 || t >= r->table->horizon() || rank > r->table->num_slots()) {
      throw ConfigError("rank_table does not cover time " +
                        std::to_string(t + 1) + ", rank " +
                        std::to_string(rank));
    }
    return value >= r->table->threshold(t, rank);
  }
  return std::get<ExactPolicy>(impl_).selects(t, value, active_mask);
}

double Strategy::threshold() const {
  if (const auto* s = std::get_if<Single>(&impl_)) return s->threshold;
  throw ConfigError("threshold() requires a single_threshold strategy");
}

const std::vector<double>& Strategy::thresholds() const {
  if (const auto* p = std::get_if<PerTime>(&impl_)) return p->thresholds;
  throw ConfigError("thresholds() requires a per_time_threshold strategy");
}

const ThresholdTable& Strategy::table() const {
  if (const auto* r = std::get_if<RankTable>(&impl_)) return *r->table;
  throw ConfigError("table() requires a rank_table strategy");
}

const ExactPolicy& Strategy::policy() const {
  if (const auto* e = std::get_if<ExactPolicy>(&impl_)) return *e;
  throw ConfigError("policy() requires an exact_policy strategy");
}

int rank_among_active(std::uint32_t active_mask, int self) {
  if (self < 0 || ((active_mask >> self) & 1u) == 0) {
    throw ConfigError("rank_among_active requires an active agent");
  }
  const std::uint32_t higher = active_mask & ((1u << self) - 1u);
  return 1 + std::popcount(higher);
}

double random_tie_threshold(const OrderStatReport& stats, int num_agents,
                            int ell) {
  const int n = static_cast<int>(stats.expectations.size());
  if (num_agents < 1) {
    throw ConfigError("num_agents must be at least 1");
  }
  if (ell < 1 || ell > n) {
    throw EllOutOfRangeError("ell must lie in 1.." + std::to_string(n) +
                             ", got " + std::to_string(ell));
  }
  double sum = 0.0;
  for (int j = 1; j <= ell; ++j) sum += stats.expectations[j - 1];
  return sum / (num_agents + ell);
}

double ranked_tie_threshold(const OrderStatReport& stats, int rank, int ell) {
  const int n = static_cast<int>(stats.expectations.size());
  if (rank < 1 || rank > n) {
    throw RankOutOfRangeError("rank must lie in 1.." + std::to_string(n) +
                              ", got " + std::to_string(rank));
  }
  if (ell < 0 || ell > n - rank) {
    throw EllOutOfRangeError("ell must lie in 0.." + std::to_string(n - rank) +
                             " for rank " + std::to_string(rank) + ", got " +
                             std::to_string(ell));
  }
  double sum = 0.0;
  for (int j = rank; j <= rank + ell; ++j) sum += stats.expectations[j - 1];
  return sum / (ell + 2);
}

BestEll best_ell_random(const OrderStatReport& stats, int num_agents) {
  const int n = static_cast<int>(stats.expectations.size());
  BestEll best{1, random_tie_threshold(stats, num_agents, 1)};
  for (int ell = 2; ell <= n; ++ell) {
    const double t = random_tie_threshold(stats, num_agents, ell);
    if (t > best.threshold) best = {ell, t};
  }
  return best;
}

BestEll best_ell_ranked(const OrderStatReport& stats, int rank) {
  const int n = static_cast<int>(stats.expectations.size());
  BestEll best{0, ranked_tie_threshold(stats, rank, 0)};
  for (int ell = 1; ell <= n - rank; ++ell) {
    const double t = ranked_tie_threshold(stats, rank, ell);
    if (t > best.threshold) best = {ell, t};
  }
  return best;
}

}  // namespace proph
