#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "proph/engine.hpp"
#include "proph/instance.hpp"
#include "proph/rng.hpp"
#include "proph/strategy.hpp"
#include "proph/threshold_table.hpp"

namespace testsupport {

/// Discrete law with up to 4 atoms, values drawn from [0, 10). Continuous
/// draws keep threshold-equality events out of generated fixtures.
inline proph::Distribution random_discrete(proph::RngStream& rng) {
  const int size = 1 + static_cast<int>(rng.next_index(4));
  std::vector<proph::Distribution::Atom> atoms;
  double total = 0.0;
  for (int s = 0; s < size; ++s) {
    atoms.push_back({10.0 * rng.next_unit(), 0.05 + rng.next_unit()});
    total += atoms.back().probability;
  }
  for (proph::Distribution::Atom& atom : atoms) atom.probability /= total;
  return proph::Distribution::discrete(std::move(atoms));
}

/// k in 1..4, n in k..6, support sizes at most 4.
inline proph::Instance random_instance(proph::RngStream& rng,
                                       proph::TieRule rule) {
  const int k = 1 + static_cast<int>(rng.next_index(4));
  const int n =
      k + static_cast<int>(rng.next_index(static_cast<std::size_t>(7 - k)));
  std::vector<proph::Distribution> dists;
  dists.reserve(n);
  for (int t = 0; t < n; ++t) dists.push_back(random_discrete(rng));
  return proph::Instance(std::move(dists), k, rule);
}

/// True when some support value sits within tol of some dynamic threshold;
/// correspondence fixtures exclude these, since the equilibrium is unique
/// only away from indifference.
inline bool has_threshold_collision(const proph::Instance& inst,
                                    const proph::ThresholdTable& table,
                                    double tol = 1e-9) {
  for (int t = 0; t < inst.horizon(); ++t) {
    for (const proph::Distribution::Atom& atom : inst.dist(t).support()) {
      for (int i = 1; i <= table.num_slots(); ++i) {
        if (std::abs(atom.value - table.threshold(t, i)) < tol) return true;
      }
    }
  }
  return false;
}

/// Rewards a single k-slot decision maker accepts on one realization,
/// sorted ascending.
inline std::vector<double> k_select_accepts(const proph::ThresholdTable& table,
                                            const std::vector<double>& values,
                                            int num_slots) {
  std::vector<double> out;
  int slots = num_slots;
  for (int t = 0; t < static_cast<int>(values.size()); ++t) {
    if (slots > 0 && values[t] >= table.threshold(t, slots)) {
      out.push_back(values[t]);
      --slots;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Rewards assigned to any agent when the profile plays out one realization
/// of a ranked-rule game (deterministic), sorted ascending.
inline std::vector<double> profile_accepts(const proph::Instance& inst,
                                           const proph::StrategyProfile& profile,
                                           const proph::Realization& r) {
  const auto branches = proph::tie_branches(inst, profile, r);
  std::vector<double> out;
  for (const auto& assigned : branches.front().second.assignment) {
    if (assigned.has_value()) out.push_back(assigned->value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
