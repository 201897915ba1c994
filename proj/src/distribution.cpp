#include "proph/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proph/errors.hpp"
#include "proph/rng.hpp"

namespace proph {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw ConfigError(std::string(what) + " must be finite");
  }
}

}  // namespace

Distribution Distribution::discrete(std::vector<Atom> support) {
  if (support.empty()) {
    throw ConfigError("discrete support must be non-empty");
  }
  for (const Atom& atom : support) {
    require_finite(atom.value, "support value");
    require_finite(atom.probability, "support probability");
    if (atom.probability <= 0.0) {
      throw ConfigError("support probability must be positive, got " +
                        std::to_string(atom.probability));
    }
  }
  std::sort(support.begin(), support.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  merged.reserve(support.size());
  for (const Atom& atom : support) {
    if (!merged.empty() && merged.back().value == atom.value) {
      merged.back().probability += atom.probability;
    } else {
      merged.push_back(atom);
    }
  }

  double total = 0.0;
  for (const Atom& atom : merged) total += atom.probability;
  if (std::abs(total - 1.0) > 1e-12) {
    throw ConfigError("support probabilities must sum to 1, got " +
                      std::to_string(total));
  }

  Distribution d;
  d.kind_ = Kind::discrete;
  d.support_ = std::move(merged);
  return d;
}

Distribution Distribution::point(double value) {
  require_finite(value, "point value");
  Distribution d;
  d.kind_ = Kind::point;
  d.support_ = {{value, 1.0}};
  return d;
}

Distribution Distribution::uniform(double lo, double hi) {
  require_finite(lo, "uniform lo");
  require_finite(hi, "uniform hi");
  if (!(lo < hi)) {
    throw ConfigError("uniform requires lo < hi");
  }
  Distribution d;
  d.kind_ = Kind::uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

Distribution Distribution::exponential(double rate) {
  require_finite(rate, "exponential rate");
  if (!(rate > 0.0)) {
    throw ConfigError("exponential rate must be positive");
  }
  Distribution d;
  d.kind_ = Kind::exponential;
  d.rate_ = rate;
  return d;
}

const std::vector<Distribution::Atom>& Distribution::support() const {
  if (!is_discrete()) {
    throw NotDiscreteError("support() requires a finite-support distribution");
  }
  return support_;
}

double Distribution::lo() const {
  if (kind_ != Kind::uniform) {
    throw ConfigError("lo() requires a uniform distribution");
  }
  return lo_;
}

double Distribution::hi() const {
  if (kind_ != Kind::uniform) {
    throw ConfigError("hi() requires a uniform distribution");
  }
  return hi_;
}

double Distribution::rate() const {
  if (kind_ != Kind::exponential) {
    throw ConfigError("rate() requires an exponential distribution");
  }
  return rate_;
}

double Distribution::mean() const {
  switch (kind_) {
    case Kind::discrete:
    case Kind::point: {
      double m = 0.0;
      for (const Atom& atom : support_) m += atom.value * atom.probability;
      return m;
    }
    case Kind::uniform:
      return 0.5 * (lo_ + hi_);
    case Kind::exponential:
      return 1.0 / rate_;
  }
  return 0.0;  // unreachable
}

double Distribution::sample(RngStream& rng) const {
  switch (kind_) {
    case Kind::point:
      return support_.front().value;
    case Kind::discrete: {
      const double u = rng.next_unit();
      double cum = 0.0;
      for (const Atom& atom : support_) {
        cum += atom.probability;
        if (u < cum) return atom.value;
      }
      return support_.back().value;  // guards cum rounding below 1
    }
    case Kind::uniform:
      return lo_ + rng.next_unit() * (hi_ - lo_);
    case Kind::exponential:
      return -std::log1p(-rng.next_unit()) / rate_;
  }
  return 0.0;  // unreachable
}

}  // namespace proph
