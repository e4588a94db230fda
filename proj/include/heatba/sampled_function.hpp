#pragma once

#include <functional>
#include <optional>

#include "heatba/common.hpp"

namespace heatba {

/// How evaluation outside [x_min, x_max] is resolved.
enum class Extension {
  ConstantExtend,  // clamp to the end values
  Periodic,        // wrap with period x_max - x_min (samples.front == samples.back)
  ExplicitHandle,  // handle gives exact values inside; outside is an error
};

/// A function on R given by uniform samples, an extension policy, and an
/// optional closed-form handle for exact evaluation between nodes.
/// Piecewise-linear interpolation is used when no handle is present.
class SampledFunction {
 public:
  using Handle = std::function<cplx(double)>;

  SampledFunction(std::vector<cplx> samples, double x_min, double x_max,
                  Extension policy = Extension::ConstantExtend,
                  Handle handle = nullptr);

  static SampledFunction from_function(const Handle& f, double x_min, double x_max,
                                       std::size_t n,
                                       Extension policy = Extension::ConstantExtend,
                                       bool keep_handle = true);

  cplx operator()(double x) const;

  std::size_t size() const { return samples_.size(); }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double step() const { return step_; }
  double node(std::size_t i) const { return x_min_ + step_ * static_cast<double>(i); }
  double period() const { return x_max_ - x_min_; }
  Extension policy() const { return policy_; }
  bool has_handle() const { return static_cast<bool>(handle_); }
  const Handle& handle() const { return handle_; }
  std::span<const cplx> samples() const { return samples_; }
  cplx sample(std::size_t i) const { return samples_[i]; }

  bool is_real(double tol = 1e-12) const;

  SampledFunction real_part() const;
  SampledFunction imag_part() const;

  /// omega = e^u on the same grid. With a handle the weight evaluates
  /// exp(u(x)) exactly; otherwise it interpolates the nodal values of e^u,
  /// which is what the grid engines see.
  SampledFunction weight() const;

  /// u + c (complex constant).
  SampledFunction shifted(cplx c) const;

  /// Linear combination on a shared grid: a*u + b*v. Grids must match.
  static SampledFunction combine(const SampledFunction& u, cplx a,
                                 const SampledFunction& v, cplx b);

 private:
  cplx interp(double x) const;

  std::vector<cplx> samples_;
  double x_min_, x_max_, step_;
  Extension policy_;
  Handle handle_;
};

}  // namespace heatba
