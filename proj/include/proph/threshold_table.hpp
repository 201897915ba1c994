#pragma once

#include <vector>

namespace proph {

/// Value function and dynamic thresholds of the k-select decision maker.
///
/// value(t, i) is the optimal expected sum collectable from time t onward
/// with i selection slots left; threshold(t, i) = value(t+1, i) -
/// value(t+1, i-1) is the marginal worth of the i-th slot, i.e. accept the
/// reward at time t iff it weakly exceeds threshold(t, i).
///
/// value(t, .) is non-decreasing and concave in the slot count, so
/// threshold(t, i) is non-increasing in i; the solver asserts this after
/// every solve.
class ThresholdTable {
 public:
  ThresholdTable(int horizon, int num_slots);

  int horizon() const { return horizon_; }
  int num_slots() const { return num_slots_; }

  /// V_t(i); t in 0..horizon (value(horizon, .) == 0), i in 0..num_slots.
  double value(int t, int slots_left) const {
    return values_[idx(t, slots_left)];
  }

  /// T_t^i; t in 0..horizon-1, i in 1..num_slots.
  double threshold(int t, int slots_left) const {
    return value(t + 1, slots_left) - value(t + 1, slots_left - 1);
  }

  void set_value(int t, int slots_left, double v) {
    values_[idx(t, slots_left)] = v;
  }

 private:
  std::size_t idx(int t, int slots_left) const;

  int horizon_;
  int num_slots_;
  std::vector<double> values_;  // (horizon+1) x (num_slots+1)
};

}  // namespace proph
