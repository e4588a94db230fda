#include "heatba/circle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatba::circle {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_p(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 1.5) return x * std::sqrt(x);
  return std::exp(p * std::log(x));
}

void require_periodic_unit(const SampledFunction& v) {
  if (v.policy() != Extension::Periodic)
    throw std::invalid_argument("non-periodic input");
  if (std::abs(v.period() - 1.0) > 1e-12)
    throw std::invalid_argument("circle functions must have period 1");
}

// cyclic lattice sum of |v_i - v_{i+d}|^p / (4 sin^2(pi d h)), all lags
double torus_sum(std::span<const cplx> v, double p, Exec exec) {
  const auto n = static_cast<std::int64_t>(v.size());
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> by_lag(static_cast<std::size_t>(n), 0.0);
  for_each_index(exec, n - 1, [&](std::int64_t dm1) {
    const std::int64_t d = dm1 + 1;
    const double s = std::sin(kPi * static_cast<double>(d) * h);
    double acc = 0.0;
    for (std::int64_t i = 0; i < n; ++i)
      acc += pow_p(std::abs(v[(i + d) % n] - v[i]), p);
    by_lag[static_cast<std::size_t>(d)] = acc * h * h / (4.0 * s * s);
  });
  return pairwise_sum(std::span<const double>(by_lag));
}

}  // namespace

SampledFunction lift(const SampledFunction& v) {
  require_periodic_unit(v);
  if (!v.is_real()) throw std::invalid_argument("lift expects real-valued v");
  return v;
}

BesovResult circle_besov_norm(const SampledFunction& v, double p, Exec exec) {
  require_periodic_unit(v);
  if (!(p > 1.0)) throw std::invalid_argument("circle_besov_norm requires p > 1");
  std::size_t n0 = std::max<std::size_t>(std::min<std::size_t>(v.size() - 1, 512), 64);

  BesovResult res;
  for (int level = 0; level < 3; ++level) {
    const std::size_t n = n0 * (std::size_t{1} << level);
    std::vector<cplx> samples(n);
    for (std::size_t i = 0; i < n; ++i)
      samples[i] = v(static_cast<double>(i) / static_cast<double>(n));
    res.refinements.push_back(torus_sum(samples, p, exec));
  }
  const double s0 = res.refinements[0], s1 = res.refinements[1], s2 = res.refinements[2];
  if (s0 > 0.0 && (s2 - s0) / s0 > 0.10) {
    res.diverged = true;
    res.value = kInf;
    return res;
  }
  const double rho = std::exp2(1.0 - p);
  res.value = std::pow(std::max(s2 + (s2 - s1) * rho / (1.0 - rho), 0.0), 1.0 / p);
  return res;
}

double circle_bmo(const SampledFunction& v, Exec exec) {
  require_periodic_unit(v);
  // unroll one period to each side so arcs up to length 1 never wrap
  const std::size_t n = 3 * (v.size() - 1) + 1;
  SampledFunction ext = SampledFunction::from_function(
      [&v](double x) { return v(x); }, -1.0, 2.0, n, Extension::ConstantExtend, false);
  std::vector<Interval> arcs;
  for (double half = 0.5; half > 2.0 * ext.step(); half *= 0.5)
    for (std::size_t c = 0; c < v.size(); c += std::max<std::size_t>(1, v.size() / 256)) {
      const double center = v.node(c);
      arcs.push_back({center, half});
    }
  return bmo_norm(ext, IntervalFamily(std::move(arcs)), exec);
}

DiskField project_disk(const HalfPlaneField& mu_strip, double r0) {
  if (!(r0 > kR0Lower) || !(r0 < 1.0))
    throw ConfigError("r0 must lie in (e^{-pi}, 1)");
  if (!mu_strip.periodic_x) throw std::invalid_argument("non-periodic u");
  if (mu_strip.content != FieldContent::Mu)
    throw std::invalid_argument("project_disk expects a mu field");
  const FieldGrid& g = mu_strip.grid;
  const std::size_t ntheta = g.nx - 1;
  if ((ntheta & (ntheta - 1)) != 0)
    throw ConfigError("angular node count must be a power of two");
  const double c = std::log(1.0 / r0) / (2.0 * kPi);
  if (g.y_max < c * (1.0 - 1e-12))
    throw ConfigError("strip grid must cover heights up to (1/2pi) log(1/r0)");

  DiskField disk;
  disk.r0 = r0;
  disk.theta.resize(ntheta);
  for (std::size_t k = 0; k < ntheta; ++k) disk.theta[k] = 2.0 * kPi * g.x(k);
  for (std::size_t j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    if (y > c * (1.0 + 1e-12)) break;
    disk.r.push_back(std::exp(-2.0 * kPi * y));
    for (std::size_t k = 0; k < ntheta; ++k) {
      const double x = g.x(k);
      const cplx rot = std::polar(1.0, 4.0 * kPi * x);
      disk.nu.push_back(-mu_strip.at(j, k) * rot);
    }
  }
  if (disk.r.empty()) throw ConfigError("strip grid has no levels below the annulus cut");
  disk.fill.assign(disk.nu.end() - static_cast<std::ptrdiff_t>(ntheta), disk.nu.end());
  return disk;
}

double disk_p_norm(const DiskField& disk, double p, Exec exec) {
  if (!(p > 1.0)) throw std::invalid_argument("disk_p_norm requires p > 1");
  const std::size_t nt = disk.ntheta();
  const double c = std::log(1.0 / disk.r0) / (2.0 * kPi);

  // ring averages of |nu|^p (periodic rectangle rule in theta)
  std::vector<double> ring(disk.rings(), 0.0);
  for_each_index(exec, static_cast<std::int64_t>(disk.rings()), [&](std::int64_t j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < nt; ++k)
      acc += pow_p(std::abs(disk.at(static_cast<std::size_t>(j), k)), p);
    ring[static_cast<std::size_t>(j)] = acc / static_cast<double>(nt);
  });

  // annulus part in strip coordinates: weight W(y) = 4 pi^2 e^{-4 pi y} /
  // (1 - e^{-4 pi y})^2 integrates exactly per slab.
  const auto wint = [](double a, double b) {
    const auto V = [](double y) { return -kPi / (1.0 - std::exp(-4.0 * kPi * y)); };
    return V(b) - V(a);
  };
  const auto y_of = [](double r) { return std::log(1.0 / r) / (2.0 * kPi); };
  double annulus = 0.0;
  double sup = 0.0;
  for (const cplx& v : disk.nu) sup = std::max(sup, std::abs(v));

  for (std::size_t j = 0; j + 1 < disk.rings(); ++j) {
    const double y0 = y_of(disk.r[j]), y1 = y_of(disk.r[j + 1]);
    annulus += 0.5 * (ring[j] + ring[j + 1]) * wint(y0, y1);
  }
  if (!disk.r.empty()) {
    const double y_last = y_of(disk.r.back());
    if (y_last < c) annulus += ring.back() * wint(y_last, c);
  }

  const double compact = kPi / ((1.0 - disk.r0 * disk.r0) * (1.0 - disk.r0 * disk.r0)) *
                         pow_p(sup, p);
  return std::pow(annulus + compact, 1.0 / p);
}

}  // namespace heatba::circle
