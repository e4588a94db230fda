#pragma once

#include "heatba/sampled_function.hpp"

namespace heatba {

struct Interval {
  double center = 0.0;
  double half = 0.0;  // half-length, > 0
  double left() const { return center - half; }
  double right() const { return center + half; }
  double length() const { return 2.0 * half; }
};

/// Dyadic interval family: half-lengths 2^k * base for k = 0..levels-1 over
/// translated centers, capped at the domain half-width. Every interval lies
/// within the evaluable window [x_min, x_max].
class IntervalFamily {
 public:
  IntervalFamily() = default;
  explicit IntervalFamily(std::vector<Interval> intervals);

  /// Centers walk the sample nodes with the given stride (0 = auto, about
  /// 512 centers). base_half defaults to u.step().
  static IntervalFamily dyadic(const SampledFunction& u, int levels = 0,
                               std::size_t center_stride = 0, double base_half = 0.0);
  static IntervalFamily dyadic(double x_min, double x_max, double base_half,
                               int levels, std::size_t n_centers);

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }

  /// Distinct half-lengths, ascending (the dyadic scales present).
  std::vector<double> scales() const;

 private:
  std::vector<Interval> intervals_;
};

}  // namespace heatba
