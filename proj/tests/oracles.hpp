#pragma once

// Test-only oracles, independent of the library's quadrature paths: plain
// composite Gauss-Legendre in 1D/2D and central finite differences.

#include <cmath>
#include <functional>

#include "heatba/common.hpp"

namespace oracles {

inline constexpr double kNodes12[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
inline constexpr double kWeights12[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

inline double quad_1d(const std::function<double(double)>& f, double a, double b,
                      int panels) {
  double acc = 0.0;
  const double w = (b - a) / panels;
  for (int j = 0; j < panels; ++j) {
    const double pa = a + j * w;
    for (int g = 0; g < 12; ++g)
      acc += 0.5 * w * kWeights12[g] * f(pa + 0.5 * w * (kNodes12[g] + 1.0));
  }
  return acc;
}

inline heatba::cplx quad_1d_c(const std::function<heatba::cplx(double)>& f, double a,
                              double b, int panels) {
  heatba::cplx acc = 0.0;
  const double w = (b - a) / panels;
  for (int j = 0; j < panels; ++j) {
    const double pa = a + j * w;
    for (int g = 0; g < 12; ++g)
      acc += 0.5 * w * kWeights12[g] * f(pa + 0.5 * w * (kNodes12[g] + 1.0));
  }
  return acc;
}

/// Windowed Besov-squared integrand for real u with derivative du (for the
/// diagonal limit), p = 2.
inline double besov2_window(const std::function<double(double)>& u,
                            const std::function<double(double)>& du, double lo,
                            double hi, int panels) {
  double acc = 0.0;
  const double w = (hi - lo) / panels;
  for (int a = 0; a < panels; ++a)
    for (int b = 0; b < panels; ++b) {
      const double t0 = lo + a * w, s0 = lo + b * w;
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
          const double t = t0 + 0.5 * w * (kNodes12[i] + 1.0);
          const double s = s0 + 0.5 * w * (kNodes12[j] + 1.0);
          const double d = t - s;
          double g;
          if (std::abs(d) < 1e-9) {
            const double r = du(t);
            g = r * r;
          } else {
            const double r = (u(t) - u(s)) / d;
            g = r * r;
          }
          acc += 0.25 * w * w * kWeights12[i] * kWeights12[j] * g;
        }
    }
  return acc;
}

}  // namespace oracles
