#include "proph/order_stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proph/errors.hpp"
#include "proph/rng.hpp"

namespace proph {

namespace {

void require_enumerable(const Instance& inst, std::uint64_t cap) {
  for (int t = 0; t < inst.horizon(); ++t) {
    if (!inst.dist(t).is_discrete()) {
      throw NotDiscreteError("exact enumeration requires discrete laws; "
                             "distribution " +
                             std::to_string(t + 1) + " is parametric");
    }
  }
  const std::uint64_t size = inst.joint_support_size();
  if (size > cap) {
    throw ExplosionCapError("joint support size " + std::to_string(size) +
                            " exceeds the enumeration cap " +
                            std::to_string(cap));
  }
}

}  // namespace

void enumerate_realizations(
    const Instance& inst, const std::function<void(const Realization&)>& visit,
    std::uint64_t cap) {
  require_enumerable(inst, cap);
  const int n = inst.horizon();

  std::vector<std::size_t> index(n, 0);
  Realization r;
  r.values.resize(n);
  for (;;) {
    r.probability = 1.0;
    for (int t = 0; t < n; ++t) {
      const Distribution::Atom& atom = inst.dist(t).support()[index[t]];
      r.values[t] = atom.value;
      r.probability *= atom.probability;
    }
    visit(r);

    int t = n - 1;
    while (t >= 0 && ++index[t] == inst.dist(t).support_size()) {
      index[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
}

std::vector<Realization> all_realizations(const Instance& inst,
                                          std::uint64_t cap) {
  require_enumerable(inst, cap);
  std::vector<Realization> out;
  out.reserve(inst.joint_support_size());
  enumerate_realizations(
      inst, [&out](const Realization& r) { out.push_back(r); }, cap);
  return out;
}

OrderStatReport expected_order_stats_exact(const Instance& inst,
                                           std::uint64_t cap) {
  const int n = inst.horizon();
  std::vector<double> sums(n, 0.0);
  std::vector<double> sorted(n);
  enumerate_realizations(
      inst,
      [&](const Realization& r) {
        sorted = r.values;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        for (int j = 0; j < n; ++j) sums[j] += r.probability * sorted[j];
      },
      cap);

  OrderStatReport report;
  report.expectations = std::move(sums);
  report.method = EstimateMethod::exact;
  report.num_samples = 0;
  report.std_errors.assign(n, 0.0);
  return report;
}

OrderStatReport expected_order_stats_mc(const Instance& inst,
                                        std::int64_t num_samples,
                                        std::uint64_t seed) {
  if (num_samples < 2) {
    throw ConfigError("monte carlo requires at least 2 samples");
  }
  const int n = inst.horizon();
  std::vector<double> sums(n, 0.0);
  std::vector<double> sq_sums(n, 0.0);
  std::vector<double> sorted(n);

  for (std::int64_t rep = 0; rep < num_samples; ++rep) {
    RngStream rng = RngStream::substream(seed, static_cast<std::uint64_t>(rep));
    const Realization r = sample_realization(inst, rng);
    sorted = r.values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (int j = 0; j < n; ++j) {
      sums[j] += sorted[j];
      sq_sums[j] += sorted[j] * sorted[j];
    }
  }

  OrderStatReport report;
  report.method = EstimateMethod::monte_carlo;
  report.num_samples = num_samples;
  report.expectations.resize(n);
  report.std_errors.resize(n);
  const double s = static_cast<double>(num_samples);
  for (int j = 0; j < n; ++j) {
    const double mean = sums[j] / s;
    const double var =
        std::max(0.0, (sq_sums[j] - s * mean * mean) / (s - 1.0));
    report.expectations[j] = mean;
    report.std_errors[j] = std::sqrt(var / s);
  }
  return report;
}

Realization sample_realization(const Instance& inst, RngStream& rng) {
  const int n = inst.horizon();
  Realization r;
  r.values.resize(n);
  const bool discrete = inst.fully_discrete();
  double prob = discrete ? 1.0 : 0.0;
  for (int t = 0; t < n; ++t) {
    const double v = inst.dist(t).sample(rng);
    r.values[t] = v;
    if (discrete) {
      for (const Distribution::Atom& atom : inst.dist(t).support()) {
        if (atom.value == v) {
          prob *= atom.probability;
          break;
        }
      }
    }
  }
  r.probability = prob;
  return r;
}

}  // namespace proph
