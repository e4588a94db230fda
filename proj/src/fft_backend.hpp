#pragma once

#include <vector>

#include "heatba/common.hpp"

// Thin FFTW wrapper with cached FFTW_ESTIMATE plans (deterministic run to
// run). All calls serialize on a global planner/buffer mutex; callers keep
// their level loops serial and parallelize elsewhere.
namespace heatba::fftbackend {

/// Full linear convolution (size a+b-1), computed on the next power of two.
std::vector<cplx> linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

/// Circular convolution of two equal-length signals.
std::vector<cplx> circular_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace heatba::fftbackend
