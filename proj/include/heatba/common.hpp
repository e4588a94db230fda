#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace heatba {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Invalid configuration or malformed input. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical guard tripped. CLI maps this to exit code 3.
class NumericGuardError : public std::runtime_error {
 public:
  NumericGuardError(std::string guard, const std::string& what)
      : std::runtime_error(what), guard_(std::move(guard)) {}
  const std::string& guard() const noexcept { return guard_; }

 private:
  std::string guard_;
};

/// Execution policy for the data-parallel kernels. Parallel runs must produce
/// results bit-identical to Serial: loops write disjoint indices and every
/// reduction is a fixed-order pairwise sum, so the schedule cannot leak in.
enum class Exec { Serial, Parallel };

template <class F>
void for_each_index(Exec exec, std::int64_t n, F&& f) {
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) f(i);
  } else {
    for (std::int64_t i = 0; i < n; ++i) f(i);
  }
}

/// Fixed-structure pairwise sum; deterministic regardless of thread count.
template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 32) {
    T acc{};
    for (const T& t : v) acc += t;
    return acc;
  }
  const std::size_t mid = v.size() / 2;
  return pairwise_sum(v.subspan(0, mid)) + pairwise_sum(v.subspan(mid));
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
  return pairwise_sum(std::span<const T>(v.data(), v.size()));
}

/// Thread cap from HEATBA_THREADS (if set); call once at process start.
void apply_thread_cap_from_env();
int thread_count();

std::string format_double(double v);  // shortest round-trip, locale-free

}  // namespace heatba
