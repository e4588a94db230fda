#include "heatba/interval_family.hpp"

#include <algorithm>
#include <cmath>

namespace heatba {

IntervalFamily::IntervalFamily(std::vector<Interval> intervals)
    : intervals_(std::move(intervals)) {
  for (const Interval& iv : intervals_)
    if (!(iv.half > 0.0)) throw ConfigError("interval half-lengths must be positive");
}

IntervalFamily IntervalFamily::dyadic(double x_min, double x_max, double base_half,
                                      int levels, std::size_t n_centers) {
  if (!(base_half > 0.0)) throw ConfigError("dyadic family needs base_half > 0");
  if (n_centers < 2) throw ConfigError("dyadic family needs at least 2 centers");
  const double half_width = 0.5 * (x_max - x_min);
  std::vector<Interval> out;
  const double cstep = (x_max - x_min) / static_cast<double>(n_centers - 1);
  for (int k = 0; k < levels; ++k) {
    const double half = std::ldexp(base_half, k);
    if (half > half_width) break;
    for (std::size_t c = 0; c < n_centers; ++c) {
      const double center = x_min + cstep * static_cast<double>(c);
      if (center - half < x_min || center + half > x_max) continue;
      out.push_back({center, half});
    }
  }
  if (out.empty()) throw ConfigError("dyadic family is empty for this domain");
  return IntervalFamily(std::move(out));
}

IntervalFamily IntervalFamily::dyadic(const SampledFunction& u, int levels,
                                      std::size_t center_stride, double base_half) {
  const double base = base_half > 0.0 ? base_half : u.step();
  const double half_width = 0.5 * (u.x_max() - u.x_min());
  int max_levels = 0;
  while (std::ldexp(base, max_levels) <= half_width) ++max_levels;
  const int lv = levels > 0 ? std::min(levels, max_levels) : max_levels;
  std::size_t stride = center_stride;
  if (stride == 0) stride = std::max<std::size_t>(1, u.size() / 512);

  std::vector<Interval> out;
  for (int k = 0; k < lv; ++k) {
    const double half = std::ldexp(base, k);
    if (half > half_width) break;
    for (std::size_t c = 0; c < u.size(); c += stride) {
      const double center = u.node(c);
      if (center - half < u.x_min() || center + half > u.x_max()) continue;
      out.push_back({center, half});
    }
  }
  if (out.empty()) throw ConfigError("dyadic family is empty for this domain");
  return IntervalFamily(std::move(out));
}

std::vector<double> IntervalFamily::scales() const {
  std::vector<double> s;
  for (const Interval& iv : intervals_) s.push_back(iv.half);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end(),
                      [](double a, double b) { return std::abs(a - b) < 1e-15 * (a + b); }),
          s.end());
  return s;
}

}  // namespace heatba
