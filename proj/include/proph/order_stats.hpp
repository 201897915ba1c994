#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "proph/instance.hpp"

namespace proph {

class RngStream;

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

enum class EstimateMethod { exact, monte_carlo };

/// Expected order statistics of the realized reward multiset: entry j-1
/// estimates the mean of the j-th largest reward. Entries are non-increasing
/// and non-negative; exact reports carry zero std_errors.
struct OrderStatReport {
  std::vector<double> expectations;
  EstimateMethod method = EstimateMethod::exact;
  std::int64_t num_samples = 0;
  std::vector<double> std_errors;
};

/// Visits every joint realization of a fully discrete instance exactly once,
/// with its product probability. Throws NotDiscreteError for parametric laws
/// and ExplosionCapError when the joint support exceeds `cap`.
void enumerate_realizations(const Instance& inst,
                            const std::function<void(const Realization&)>& visit,
                            std::uint64_t cap = kDefaultEnumerationCap);

std::vector<Realization> all_realizations(
    const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap);

OrderStatReport expected_order_stats_exact(
    const Instance& inst, std::uint64_t cap = kDefaultEnumerationCap);

/// Sample means of per-draw sorted reward vectors; std_errors are sample
/// standard deviations over sqrt(num_samples). Deterministic for a fixed
/// seed. Requires num_samples >= 2.
OrderStatReport expected_order_stats_mc(const Instance& inst,
                                        std::int64_t num_samples,
                                        std::uint64_t seed);

/// One independent draw per coordinate via inverse-CDF. The joint probability
/// field is filled only for fully discrete instances.
Realization sample_realization(const Instance& inst, RngStream& rng);

}  // namespace proph
