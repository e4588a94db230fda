#include "heatba/sampled_function.hpp"

#include <algorithm>
#include <cmath>

namespace heatba {

SampledFunction::SampledFunction(std::vector<cplx> samples, double x_min, double x_max,
                                 Extension policy, Handle handle)
    : samples_(std::move(samples)),
      x_min_(x_min),
      x_max_(x_max),
      policy_(policy),
      handle_(std::move(handle)) {
  if (samples_.size() < 2) throw ConfigError("SampledFunction needs at least 2 samples");
  if (!(x_max_ > x_min_) || !std::isfinite(x_min_) || !std::isfinite(x_max_))
    throw ConfigError("SampledFunction needs a finite domain with x_max > x_min");
  step_ = (x_max_ - x_min_) / static_cast<double>(samples_.size() - 1);
  if (policy_ == Extension::Periodic &&
      std::abs(samples_.front() - samples_.back()) > 1e-12)
    throw ConfigError("periodic policy requires samples[0] == samples[n-1] within 1e-12");
  for (const cplx& s : samples_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw ConfigError("SampledFunction samples must be finite");
}

SampledFunction SampledFunction::from_function(const Handle& f, double x_min,
                                               double x_max, std::size_t n,
                                               Extension policy, bool keep_handle) {
  std::vector<cplx> s(n);
  const double h = (x_max - x_min) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) s[i] = f(x_min + h * static_cast<double>(i));
  if (policy == Extension::Periodic) s.back() = s.front();
  return SampledFunction(std::move(s), x_min, x_max, policy,
                         keep_handle ? f : Handle{});
}

cplx SampledFunction::interp(double x) const {
  const double t = (x - x_min_) / step_;
  const auto n = static_cast<std::ptrdiff_t>(samples_.size());
  auto i = static_cast<std::ptrdiff_t>(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i, 0, n - 2);
  const double frac = t - static_cast<double>(i);
  return samples_[i] + (samples_[i + 1] - samples_[i]) * frac;
}

cplx SampledFunction::operator()(double x) const {
  switch (policy_) {
    case Extension::Periodic: {
      const double per = period();
      double t = x;
      if (t < x_min_ || t >= x_max_) t = x_min_ + (t - x_min_) - per * std::floor((t - x_min_) / per);
      return handle_ ? handle_(t) : interp(t);
    }
    case Extension::ConstantExtend:
      if (x <= x_min_) return samples_.front();
      if (x >= x_max_) return samples_.back();
      return handle_ ? handle_(x) : interp(x);
    case Extension::ExplicitHandle:
      if (x < x_min_ || x > x_max_)
        throw std::domain_error("evaluation outside the domain under explicit-handle policy");
      return handle_ ? handle_(x) : interp(x);
  }
  return {};
}

bool SampledFunction::is_real(double tol) const {
  double scale = 1.0;
  for (const cplx& s : samples_) scale = std::max(scale, std::abs(s.real()));
  for (const cplx& s : samples_)
    if (std::abs(s.imag()) > tol * scale) return false;
  return true;
}

SampledFunction SampledFunction::real_part() const {
  std::vector<cplx> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = samples_[i].real();
  Handle h;
  if (handle_) {
    Handle inner = handle_;
    h = [inner](double x) { return cplx(inner(x).real(), 0.0); };
  }
  return SampledFunction(std::move(s), x_min_, x_max_, policy_, std::move(h));
}

SampledFunction SampledFunction::imag_part() const {
  std::vector<cplx> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = samples_[i].imag();
  Handle h;
  if (handle_) {
    Handle inner = handle_;
    h = [inner](double x) { return cplx(inner(x).imag(), 0.0); };
  }
  return SampledFunction(std::move(s), x_min_, x_max_, policy_, std::move(h));
}

SampledFunction SampledFunction::weight() const {
  std::vector<cplx> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::exp(samples_[i]);
  Handle h;
  if (handle_) {
    Handle inner = handle_;
    h = [inner](double x) { return std::exp(inner(x)); };
  }
  if (policy_ == Extension::Periodic) s.back() = s.front();
  return SampledFunction(std::move(s), x_min_, x_max_, policy_, std::move(h));
}

SampledFunction SampledFunction::shifted(cplx c) const {
  std::vector<cplx> s(samples_.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = samples_[i] + c;
  Handle h;
  if (handle_) {
    Handle inner = handle_;
    h = [inner, c](double x) { return inner(x) + c; };
  }
  return SampledFunction(std::move(s), x_min_, x_max_, policy_, std::move(h));
}

SampledFunction SampledFunction::combine(const SampledFunction& u, cplx a,
                                         const SampledFunction& v, cplx b) {
  if (u.size() != v.size() || u.x_min() != v.x_min() || u.x_max() != v.x_max() ||
      u.policy() != v.policy())
    throw ConfigError("combine requires matching grids and policies");
  std::vector<cplx> s(u.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = a * u.sample(i) + b * v.sample(i);
  Handle h;
  if (u.has_handle() && v.has_handle()) {
    Handle hu = u.handle(), hv = v.handle();
    h = [hu, hv, a, b](double x) { return a * hu(x) + b * hv(x); };
  }
  return SampledFunction(std::move(s), u.x_min(), u.x_max(), u.policy(), std::move(h));
}

}  // namespace heatba
