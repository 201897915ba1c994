#include "proph/instance.hpp"

#include <limits>
#include <string>

#include "proph/errors.hpp"

namespace proph {

Instance::Instance(std::vector<Distribution> distributions, int num_agents,
                   TieRule tie_rule)
    : distributions_(std::move(distributions)),
      num_agents_(num_agents),
      tie_rule_(tie_rule) {
  if (distributions_.empty()) {
    throw ConfigError("instance requires at least one distribution");
  }
  if (num_agents_ < 1) {
    throw ConfigError("num_agents must be at least 1, got " +
                      std::to_string(num_agents_));
  }
  // Active-agent sets travel as 32-bit masks throughout the engine.
  if (num_agents_ > 32) {
    throw ConfigError("num_agents must be at most 32, got " +
                      std::to_string(num_agents_));
  }
}

bool Instance::fully_discrete() const {
  for (const Distribution& d : distributions_) {
    if (!d.is_discrete()) return false;
  }
  return true;
}

std::uint64_t Instance::joint_support_size() const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (!fully_discrete()) return kMax;
  std::uint64_t total = 1;
  for (const Distribution& d : distributions_) {
    const std::uint64_t s = d.support_size();
    if (total > kMax / s) return kMax;
    total *= s;
  }
  return total;
}

}  // namespace proph
