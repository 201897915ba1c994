#pragma once

#include <cstddef>
#include <vector>

namespace proph {

class RngStream;

/// Probability law of a single reward. Finite-support laws (discrete, point)
/// admit exact computation; the parametric families (uniform, exponential)
/// exist for Monte Carlo only.
///
/// Discrete supports are canonical after construction: values strictly
/// increasing, duplicates merged, probabilities in (0, 1] and summing to
/// one within 1e-12.
class Distribution {
 public:
  enum class Kind { discrete, uniform, exponential, point };

  struct Atom {
    double value;
    double probability;
  };

  static Distribution discrete(std::vector<Atom> support);
  static Distribution point(double value);
  static Distribution uniform(double lo, double hi);
  static Distribution exponential(double rate);

  Kind kind() const { return kind_; }

  /// True for finite-support laws (discrete and point).
  bool is_discrete() const {
    return kind_ == Kind::discrete || kind_ == Kind::point;
  }

  /// Canonical support; throws NotDiscreteError for parametric families.
  const std::vector<Atom>& support() const;
  std::size_t support_size() const { return support().size(); }

  double lo() const;    // uniform
  double hi() const;    // uniform
  double rate() const;  // exponential

  double mean() const;

  /// Inverse-CDF draw consuming one variate (none for point laws).
  double sample(RngStream& rng) const;

 private:
  Distribution() = default;

  Kind kind_ = Kind::point;
  std::vector<Atom> support_;  // discrete and point
  double lo_ = 0.0;
  double hi_ = 0.0;
  double rate_ = 0.0;
};

}  // namespace proph
