#include "heatba/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heatba {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_p(double x, double p) {
  if (x <= 0.0) return 0.0;
  if (p == 2.0) return x * x;
  if (p == 3.0) return x * x * x;
  if (p == 1.5) return x * std::sqrt(x);
  return std::exp(p * std::log(x));
}

// int_0^len |p + q t| dt. Exact for complex p, q: |p + qt|^2 is a real
// quadratic, and the antiderivative of sqrt((t+s0)^2 + k^2) is closed-form.
double integral_abs_linear(cplx p, cplx q, double len) {
  const double a2 = std::norm(q);
  if (a2 * len * len < 1e-60 + 1e-32 * std::norm(p)) return std::abs(p) * len;
  const double s0 = (p.real() * q.real() + p.imag() * q.imag()) / a2;
  double k2 = std::norm(p) / a2 - s0 * s0;
  if (k2 < 0.0) k2 = 0.0;
  const auto G = [k2](double s) {
    const double r = std::sqrt(s * s + k2);
    if (k2 <= 1e-30 * (s * s + 1e-300)) return 0.5 * s * std::abs(s);
    return 0.5 * (s * r + k2 * std::asinh(s / std::sqrt(k2)));
  };
  return std::sqrt(a2) * (G(len + s0) - G(s0));
}

// int_0^len e^{g} dt for real linear g: g(0) = g0, g(len) = g1.
double integral_exp_linear(double g0, double g1, double len) {
  const double q = (g1 - g0) / len;
  if (std::abs(g1 - g0) < 1e-12) return len * std::exp(0.5 * (g0 + g1));
  return (std::exp(g1) - std::exp(g0)) / q;
}

// int_0^len e^{|g|} dt for real linear g, splitting at the sign change.
double integral_exp_abs_linear(double g0, double g1, double len) {
  if (g0 >= 0.0 && g1 >= 0.0) return integral_exp_linear(g0, g1, len);
  if (g0 <= 0.0 && g1 <= 0.0) return integral_exp_linear(-g0, -g1, len);
  const double root = len * g0 / (g0 - g1);
  return integral_exp_abs_linear(g0, 0.0, root) + integral_exp_abs_linear(0.0, g1, len - root);
}

const double kGl8Nodes[8] = {-0.9602898564975363, -0.7966664774136267,
                             -0.5255324099163290, -0.1834346424956498,
                             0.1834346424956498,  0.5255324099163290,
                             0.7966664774136267,  0.9602898564975363};
const double kGl8Weights[8] = {0.1012285362903763, 0.2223810344533745,
                               0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};

const double kGl12Nodes[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGl12Weights[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// Nodal view of u on its own grid plus the prefix integral (trapezoid is
// exact on the interpolant). Interval queries stay inside the window.
struct PLScan {
  explicit PLScan(const SampledFunction& u) : x0(u.x_min()), h(u.step()) {
    vals.assign(u.samples().begin(), u.samples().end());
    cum.resize(vals.size());
    cum[0] = 0.0;
    for (std::size_t i = 1; i < vals.size(); ++i)
      cum[i] = cum[i - 1] + 0.5 * (vals[i - 1] + vals[i]) * h;
  }

  double x0, h;
  std::vector<cplx> vals;
  std::vector<cplx> cum;

  std::size_t n() const { return vals.size(); }
  double node(std::size_t i) const { return x0 + h * static_cast<double>(i); }

  cplx value(double x) const {
    const double t = (x - x0) / h;
    auto i = static_cast<std::ptrdiff_t>(std::floor(t));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n()) - 2);
    const double frac = t - static_cast<double>(i);
    return vals[i] + (vals[i + 1] - vals[i]) * frac;
  }

  cplx integral(double a, double b) const {
    const auto cell = [this](double lo, double hi) {
      return 0.5 * (value(lo) + value(hi)) * (hi - lo);
    };
    const auto ia = static_cast<std::size_t>(std::clamp<double>(
        std::ceil((a - x0) / h - 1e-12), 0.0, static_cast<double>(n() - 1)));
    const auto ib = static_cast<std::size_t>(std::clamp<double>(
        std::floor((b - x0) / h + 1e-12), 0.0, static_cast<double>(n() - 1)));
    if (ib <= ia) return cell(a, b);
    cplx out = cum[ib] - cum[ia];
    if (a < node(ia)) out += cell(a, node(ia));
    if (b > node(ib)) out += cell(node(ib), b);
    return out;
  }

  cplx mean(double a, double b) const { return integral(a, b) / (b - a); }

  // Accumulate f(t0, t1, v0, v1) over the interpolation cells of [a, b].
  template <class F>
  void over_cells(double a, double b, F&& f) const {
    const auto ia = static_cast<std::size_t>(std::clamp<double>(
        std::ceil((a - x0) / h - 1e-12), 0.0, static_cast<double>(n() - 1)));
    const auto ib = static_cast<std::size_t>(std::clamp<double>(
        std::floor((b - x0) / h + 1e-12), 0.0, static_cast<double>(n() - 1)));
    if (ib <= ia) {
      f(a, b, value(a), value(b));
      return;
    }
    if (a < node(ia)) f(a, node(ia), value(a), vals[ia]);
    for (std::size_t i = ia; i < ib; ++i) f(node(i), node(i + 1), vals[i], vals[i + 1]);
    if (b > node(ib)) f(node(ib), b, vals[ib], value(b));
  }
};

double mean_oscillation(const PLScan& scan, const Interval& iv) {
  const cplx m = scan.mean(iv.left(), iv.right());
  double acc = 0.0;
  scan.over_cells(iv.left(), iv.right(), [&](double t0, double t1, cplx v0, cplx v1) {
    const double len = t1 - t0;
    if (len <= 0.0) return;
    acc += integral_abs_linear(v0 - m, (v1 - v0) / len, len);
  });
  return acc / iv.length();
}

double exp_oscillation_mean(const PLScan& scan, const Interval& iv, bool real_u) {
  const cplx m = scan.mean(iv.left(), iv.right());
  double acc = 0.0;
  scan.over_cells(iv.left(), iv.right(), [&](double t0, double t1, cplx v0, cplx v1) {
    const double len = t1 - t0;
    if (len <= 0.0) return;
    if (real_u) {
      acc += integral_exp_abs_linear((v0 - m).real(), (v1 - m).real(), len);
    } else {
      const cplx q = (v1 - v0) / len;
      for (int g = 0; g < 8; ++g) {
        const double t = 0.5 * len * (kGl8Nodes[g] + 1.0);
        acc += 0.5 * len * kGl8Weights[g] * std::exp(std::abs(v0 - m + q * t));
      }
    }
  });
  return acc / iv.length();
}

// Deterministic per-interval map followed by a fixed-order max.
template <class F>
std::vector<double> interval_map(Exec exec, const IntervalFamily& family, F&& f) {
  std::vector<double> vals(family.size());
  for_each_index(exec, static_cast<std::int64_t>(family.size()),
                 [&](std::int64_t i) { vals[i] = f(family[static_cast<std::size_t>(i)]); });
  return vals;
}

double fixed_order_max(std::span<const double> v) {
  double m = -kInf;
  for (double x : v) m = std::max(m, x);
  return m;
}

// Real weight scan: nodal values plus prefix integrals of w, 1/w, log w,
// each closed-form on the interpolant.
struct WeightScan {
  WeightScan(const SampledFunction& w, bool need_log) : x0(w.x_min()), h(w.step()) {
    vals.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) vals[i] = w.sample(i).real();
    cumw.assign(vals.size(), 0.0);
    cuminv.assign(vals.size(), 0.0);
    cumlog.assign(vals.size(), 0.0);
    for (std::size_t i = 1; i < vals.size(); ++i) {
      cumw[i] = cumw[i - 1] + cell_w(vals[i - 1], vals[i], h);
      cuminv[i] = cuminv[i - 1] + cell_inv(vals[i - 1], vals[i], h);
      if (need_log) cumlog[i] = cumlog[i - 1] + cell_log(vals[i - 1], vals[i], h);
    }
  }

  static double cell_w(double w0, double w1, double len) { return 0.5 * (w0 + w1) * len; }

  static double cell_inv(double w0, double w1, double len) {
    if (w0 <= 0.0 || w1 <= 0.0) return kInf;
    if (std::abs(w1 - w0) <= 1e-9 * (w0 + w1)) return 2.0 * len / (w0 + w1);
    return len * std::log(w1 / w0) / (w1 - w0);
  }

  static double cell_log(double w0, double w1, double len) {
    const auto xlx = [](double w) { return w > 0.0 ? w * std::log(w) - w : 0.0; };
    if (std::abs(w1 - w0) <= 1e-9 * (w0 + w1))
      return len * std::log(std::max(0.5 * (w0 + w1), 1e-300));
    return len * (xlx(w1) - xlx(w0)) / (w1 - w0);
  }

  double x0, h;
  std::vector<double> vals, cumw, cuminv, cumlog;

  std::size_t n() const { return vals.size(); }
  double node(std::size_t i) const { return x0 + h * static_cast<double>(i); }
  double x_max() const { return node(n() - 1); }

  double value(double x) const {
    const double t = (x - x0) / h;
    auto i = static_cast<std::ptrdiff_t>(std::floor(t));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n()) - 2);
    const double frac = t - static_cast<double>(i);
    return vals[i] + (vals[i + 1] - vals[i]) * frac;
  }

  template <class Cell>
  double query(const std::vector<double>& cum, double a, double b, Cell&& cell) const {
    const auto ia = static_cast<std::size_t>(std::clamp<double>(
        std::ceil((a - x0) / h - 1e-12), 0.0, static_cast<double>(n() - 1)));
    const auto ib = static_cast<std::size_t>(std::clamp<double>(
        std::floor((b - x0) / h + 1e-12), 0.0, static_cast<double>(n() - 1)));
    if (ib <= ia) return cell(value(a), value(b), b - a);
    double out = cum[ib] - cum[ia];
    if (a < node(ia)) out += cell(value(a), vals[ia], node(ia) - a);
    if (b > node(ib)) out += cell(vals[ib], value(b), b - node(ib));
    return out;
  }

  double int_w(double a, double b) const { return query(cumw, a, b, cell_w); }
  double int_inv(double a, double b) const { return query(cuminv, a, b, cell_inv); }
  double int_log(double a, double b) const { return query(cumlog, a, b, cell_log); }

  // int_a^b with the constant-extend (or periodic) tails resolved; only the
  // plain weight integral needs this (doubling of 2I).
  double int_w_ext(double a, double b, Extension policy, double period_mass) const {
    if (policy == Extension::Periodic) {
      const double per = x_max() - x0;
      double out = 0.0;
      double lo = a;
      // walk period images; b - a <= 2 * domain width in practice
      while (lo < b - 1e-15) {
        double shift = per * std::floor((lo - x0) / per);
        double hi = std::min(b, shift + x_max());
        out += int_w(lo - shift, hi - shift);
        (void)period_mass;
        lo = hi;
      }
      return out;
    }
    double out = 0.0;
    const double lo = std::max(a, x0), hi = std::min(b, x_max());
    if (hi > lo) out += int_w(lo, hi);
    if (a < x0) out += vals.front() * (std::min(b, x0) - a);
    if (b > x_max()) out += vals.back() * (b - std::max(a, x_max()));
    return out;
  }
};

void require_weight(const SampledFunction& w, bool strictly_positive) {
  if (!w.is_real()) throw std::invalid_argument("not a weight: complex samples");
  for (const cplx& s : w.samples()) {
    if (s.real() < 0.0) throw std::invalid_argument("not a weight: negative samples");
    if (strictly_positive && s.real() <= 0.0)
      throw std::invalid_argument("weight must be strictly positive");
  }
}

void require_family(const IntervalFamily& family) {
  if (family.empty()) throw std::invalid_argument("no intervals");
}

std::vector<cplx> resample(const SampledFunction& u, std::size_t n) {
  std::vector<cplx> out(n);
  const double h = (u.x_max() - u.x_min()) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) out[i] = u(u.x_min() + h * static_cast<double>(i));
  return out;
}

// Windowed double sum of |u(t)-u(s)|^p / (t-s)^2 over the lattice, grouped
// by lag; trapezoid endpoint weights. Deterministic for either exec.
double besov_sum(std::span<const cplx> v, double h, double p, Exec exec) {
  const auto n = static_cast<std::int64_t>(v.size());
  std::vector<double> by_lag(static_cast<std::size_t>(n), 0.0);
  for_each_index(exec, n - 1, [&](std::int64_t dm1) {
    const std::int64_t d = dm1 + 1;
    const double dist = static_cast<double>(d) * h;
    double acc = 0.0;
    for (std::int64_t i = 0; i + d < n; ++i) {
      double cw = 1.0;
      if (i == 0) cw *= 0.5;
      if (i + d == n - 1) cw *= 0.5;
      acc += cw * pow_p(std::abs(v[i + d] - v[i]), p);
    }
    by_lag[static_cast<std::size_t>(d)] = acc * 2.0 * h * h / (dist * dist);
  });
  return pairwise_sum(std::span<const double>(by_lag));
}

}  // namespace

void NormConstants::validate() const {
  if (!(c_jn > 0.0) || !(c_0 > 0.0) || !(neighborhood_radius > 0.0))
    throw ConfigError("norm constants must be strictly positive");
  if (neighborhood_radius > c_jn)
    throw ConfigError("neighborhood radius must not exceed C_JN");
}

double bmo_norm(const SampledFunction& u, const IntervalFamily& family, Exec exec) {
  require_family(family);
  const PLScan scan(u);
  const auto vals = interval_map(exec, family,
                                 [&](const Interval& iv) { return mean_oscillation(scan, iv); });
  return fixed_order_max(vals);
}

std::vector<std::pair<double, double>> vmo_profile(const SampledFunction& u,
                                                   const IntervalFamily& family,
                                                   Exec exec) {
  require_family(family);
  const PLScan scan(u);
  const auto vals = interval_map(exec, family,
                                 [&](const Interval& iv) { return mean_oscillation(scan, iv); });
  std::vector<std::pair<double, double>> profile;
  for (double s : family.scales()) profile.emplace_back(s, -kInf);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (auto& [scale, m] : profile)
      if (std::abs(family[i].half - scale) < 1e-15 * (family[i].half + scale))
        m = std::max(m, vals[i]);
  }
  return profile;
}

BesovResult besov_norm(const SampledFunction& u, double p, Exec exec,
                       std::size_t base_nodes) {
  if (!(p > 1.0)) throw std::invalid_argument("besov_norm requires p > 1");
  std::size_t n0 = base_nodes ? base_nodes : std::min<std::size_t>(u.size(), 1025);
  n0 = std::max<std::size_t>(n0, 65);

  BesovResult res;
  for (int level = 0; level < 3; ++level) {
    const std::size_t n = (n0 - 1) * (std::size_t{1} << level) + 1;
    const double h = (u.x_max() - u.x_min()) / static_cast<double>(n - 1);
    res.refinements.push_back(besov_sum(resample(u, n), h, p, exec));
  }
  const double s0 = res.refinements[0], s1 = res.refinements[1], s2 = res.refinements[2];
  if (s0 > 0.0 && (s2 - s0) / s0 > 0.10) {
    res.diverged = true;
    res.value = kInf;
    return res;
  }
  const double rho = std::exp2(1.0 - p);
  const double extrapolated = s2 + (s2 - s1) * rho / (1.0 - rho);
  res.value = std::pow(std::max(extrapolated, 0.0), 1.0 / p);
  return res;
}

double a2_constant(const SampledFunction& omega, const IntervalFamily& family,
                   Exec exec) {
  require_family(family);
  require_weight(omega, false);
  const WeightScan scan(omega, false);
  const auto vals = interval_map(exec, family, [&](const Interval& iv) {
    const double len = iv.length();
    return (scan.int_w(iv.left(), iv.right()) / len) *
           (scan.int_inv(iv.left(), iv.right()) / len);
  });
  return fixed_order_max(vals);
}

double a_infty_constant(const SampledFunction& omega, const IntervalFamily& family,
                        Exec exec) {
  require_family(family);
  require_weight(omega, true);
  const WeightScan scan(omega, true);
  const auto vals = interval_map(exec, family, [&](const Interval& iv) {
    const double len = iv.length();
    return (scan.int_w(iv.left(), iv.right()) / len) /
           std::exp(scan.int_log(iv.left(), iv.right()) / len);
  });
  return fixed_order_max(vals);
}

double doubling_constant(const SampledFunction& omega, const IntervalFamily& family,
                         Exec exec) {
  require_family(family);
  require_weight(omega, false);
  const WeightScan scan(omega, false);
  const Extension policy = omega.policy();
  // errors are flagged, not thrown: the map may run under OpenMP
  const auto vals = interval_map(exec, family, [&](const Interval& iv) {
    const double mass = scan.int_w(iv.left(), iv.right());
    if (!(mass > 0.0)) return -kInf;
    const double doubled = scan.int_w_ext(iv.center - 2.0 * iv.half,
                                          iv.center + 2.0 * iv.half, policy, 0.0);
    return doubled / mass;
  });
  for (double v : vals)
    if (v == -kInf) throw std::invalid_argument("zero-mass interval");
  return fixed_order_max(vals);
}

double exp_oscillation(const SampledFunction& u, const IntervalFamily& family,
                       Exec exec) {
  require_family(family);
  const PLScan scan(u);
  const bool real_u = u.is_real();
  const auto vals = interval_map(exec, family, [&](const Interval& iv) {
    return exp_oscillation_mean(scan, iv, real_u);
  });
  return fixed_order_max(vals);
}

SampledFunction truncate(const SampledFunction& u, double N) {
  if (!(N > 0.0)) throw std::invalid_argument("truncate requires N > 0");
  if (!u.is_real())
    throw std::invalid_argument("clamp undefined for complex-valued samples");
  std::vector<cplx> s(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    s[i] = std::clamp(u.sample(i).real(), -N, N);
  SampledFunction::Handle h;
  if (u.has_handle()) {
    auto inner = u.handle();
    h = [inner, N](double x) { return cplx(std::clamp(inner(x).real(), -N, N), 0.0); };
  }
  return SampledFunction(std::move(s), u.x_min(), u.x_max(), u.policy(), std::move(h));
}

double mollifier_constant() {
  static const double c = [] {
    double acc = 0.0;
    const int panels = 64;
    for (int j = 0; j < panels; ++j) {
      const double a = -1.0 + 2.0 * j / panels, b = a + 2.0 / panels;
      for (int g = 0; g < 12; ++g) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * kGl12Nodes[g];
        acc += 0.5 * (b - a) * kGl12Weights[g] * std::exp(1.0 / (x * x - 1.0));
      }
    }
    return 1.0 / acc;
  }();
  return c;
}

SampledFunction mollify(const SampledFunction& u, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("mollify requires eps > 0");
  const double c = mollifier_constant();
  const auto eta = [c](double t) { return std::abs(t) < 1.0 ? c * std::exp(1.0 / (t * t - 1.0)) : 0.0; };
  std::vector<cplx> s(u.size());
  const int panels = 24;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = u.node(i);
    cplx acc = 0.0;
    for (int j = 0; j < panels; ++j) {
      const double a = -1.0 + 2.0 * j / panels, b = a + 2.0 / panels;
      for (int g = 0; g < 12; ++g) {
        const double t = 0.5 * (a + b) + 0.5 * (b - a) * kGl12Nodes[g];
        acc += 0.5 * (b - a) * kGl12Weights[g] * eta(t) * u(x - eps * t);
      }
    }
    s[i] = acc;
  }
  if (u.policy() == Extension::Periodic) s.back() = s.front();
  return SampledFunction(std::move(s), u.x_min(), u.x_max(), u.policy());
}

NeighborhoodDistance neighborhood_distance(const SampledFunction& u, double p,
                                           Exec exec) {
  const BesovResult b = besov_norm(u.imag_part(), p, exec);
  NeighborhoodDistance out;
  out.outside = b.diverged;
  out.value = b.diverged ? kInf : b.value;
  return out;
}

}  // namespace heatba
