#include "heatba/extension.hpp"

#include <algorithm>
#include <cmath>

#include "fft_backend.hpp"
#include "quad_rule.hpp"

namespace heatba {
namespace {

// 1/2 erfc(-x): the heat-kernel CDF used by the closed-form ramp terms.
double phi_cdf(double x) { return 0.5 * std::erfc(-x); }

cplx interp_nodes(std::span<const cplx> nodes, double x0, double h, double x) {
  const double t = (x - x0) / h;
  auto i = static_cast<std::ptrdiff_t>(std::floor(t));
  i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(nodes.size()) - 2);
  const double frac = t - static_cast<double>(i);
  return nodes[i] + (nodes[i + 1] - nodes[i]) * frac;
}

}  // namespace

cplx Curve::operator()(double x) const {
  if (periodic_) {
    const double k = std::floor((x - x_min_) / period_);
    const double xr = x - k * period_;
    return interp_nodes(nodes_, x_min_, step_, xr) + period_increment_ * k;
  }
  if (x < x_min_) return nodes_.front() + slope_left_ * (x - x_min_);
  if (x > x_max_) return nodes_.back() + slope_right_ * (x - x_max_);
  return interp_nodes(nodes_, x_min_, step_, x);
}

Curve gamma(const SampledFunction& u, bool normalize, cplx base) {
  const SampledFunction w = u.weight();
  Curve c;
  c.x_min_ = u.x_min();
  c.x_max_ = u.x_max();
  c.step_ = u.step();
  c.periodic_ = (u.policy() == Extension::Periodic);
  c.period_ = u.period();

  c.nodes_.resize(w.size());
  c.nodes_[0] = 0.0;
  for (std::size_t i = 1; i < w.size(); ++i)
    c.nodes_[i] = c.nodes_[i - 1] + 0.5 * (w.sample(i - 1) + w.sample(i)) * c.step_;
  c.slope_left_ = w.sample(0);
  c.slope_right_ = w.sample(w.size() - 1);

  const auto value_at = [&](double x) {
    if (c.periodic_) {
      const double k = std::floor((x - c.x_min_) / c.period_);
      return interp_nodes(c.nodes_, c.x_min_, c.step_, x - k * c.period_) +
             c.nodes_.back() * k;
    }
    if (x < c.x_min_) return c.nodes_.front() + c.slope_left_ * (x - c.x_min_);
    if (x > c.x_max_) return c.nodes_.back() + c.slope_right_ * (x - c.x_max_);
    return interp_nodes(c.nodes_, c.x_min_, c.step_, x);
  };

  if (normalize) {
    if (!c.periodic_ && (c.x_min_ > 0.0 || c.x_max_ < 1.0))
      throw ConfigError("normalization requires [0,1] inside the domain");
    const cplx g0 = value_at(0.0);
    const cplx m = value_at(1.0) - g0;
    if (std::abs(m) < 1e-10)
      throw NumericGuardError("degenerate normalization",
                              "int_0^1 e^u vanishes; normalized curve undefined");
    for (cplx& g : c.nodes_) g = (g - g0) / m;
    c.slope_left_ /= m;
    c.slope_right_ /= m;
    c.m_ = m;
    c.normalized_ = true;
  } else {
    const cplx g0 = value_at(0.0);
    const cplx shift = base - ((c.x_min_ <= 0.0 && c.x_max_ >= 0.0) ? g0 : c.nodes_.front());
    for (cplx& g : c.nodes_) g += shift;
  }
  c.period_increment_ = c.nodes_.back() - c.nodes_.front();
  return c;
}

namespace {

struct CurveParts {
  // gamma = ray + ramp + remainder (constant-extend) or
  // gamma = line + periodic remainder (periodic).
  const Curve& curve;
  bool periodic;
  cplx ray_a;      // anchor value at x_min (ray) or line value at x_min
  cplx ray_slope;  // slope_left or the periodic mean slope
  cplx ramp_m;     // slope_right - slope_left (zero for periodic)
  double kink;     // x_max

  explicit CurveParts(const Curve& c) : curve(c), periodic(c.periodic()) {
    kink = c.x_max();
    if (periodic) {
      ray_slope = c.period_increment() / (c.x_max() - c.x_min());
      ray_a = c.nodes().front();
      ramp_m = 0.0;
    } else {
      ray_slope = c.slope_left();
      ray_a = c.nodes().front();
      ramp_m = c.slope_right() - c.slope_left();
    }
  }

  cplx line(double t) const { return ray_a + ray_slope * (t - curve.x_min()); }
  cplx ramp(double t) const { return t > kink ? ramp_m * (t - kink) : cplx{}; }
  cplx remainder(double t) const { return curve(t) - line(t) - ramp(t); }

  // closed-form convolutions of the analytic parts
  cplx u_analytic(double x, double y) const {
    cplx out = line(x);
    if (ramp_m != cplx{}) {
      const double xi = (x - kink) / y;
      out += ramp_m * y * (xi * phi_cdf(xi) + 0.5 * phi(xi));
    }
    return out;
  }
  cplx v_analytic(double x, double y) const {
    cplx out = ray_slope * y;
    if (ramp_m != cplx{}) out += ramp_m * y * phi_cdf((x - kink) / y);
    return out;
  }
};

}  // namespace

cplx extend_at(const Curve& curve, double x, double y, HalfPlane hp, const KernelSet& ks) {
  if (!(y > 0.0)) throw std::invalid_argument("extend_at needs a positive height");
  ks.validate();
  const int pu = quadrule::panels_per_unit(y, ks);
  const auto rule = quadrule::rule_for(ks.truncation, pu);
  const auto tphi = quadrule::table_for(Kernel::Phi, ks.truncation, pu);
  const auto tpsi = quadrule::table_for(Kernel::Psi, ks.truncation, pu);
  const cplx g0 = curve(x);
  cplx u_val = g0, v_val = 0.0;
  // deviation form: int phi = 1 and int psi = 0, so subtracting gamma(x)
  // keeps linear curves exact
  u_val += quadrule::panel_sum(*rule, [&](std::size_t i) {
    return (*tphi)[i] * (curve(x - rule->s[i] * y) - g0);
  });
  v_val += quadrule::panel_sum(*rule, [&](std::size_t i) {
    return (*tpsi)[i] * (curve(x - rule->s[i] * y) - g0);
  });
  return hp == HalfPlane::Upper ? u_val + cplx(0, 1) * v_val : u_val - cplx(0, 1) * v_val;
}

HalfPlaneField extend(const SampledFunction& u, const FieldGrid& grid, HalfPlane hp,
                      Engine engine, const KernelSet& ks, Exec exec, bool normalize) {
  grid.validate();
  ks.validate();
  const Curve curve = gamma(u, normalize);
  HalfPlaneField field;
  field.grid = grid;
  field.half_plane = hp;
  field.content = FieldContent::F;
  field.periodic_x =
      curve.periodic() && std::abs((grid.x_max - grid.x_min) - (u.x_max() - u.x_min())) <=
                              1e-9 * std::max(1.0, u.period());
  field.values.assign(grid.nx * grid.ny, cplx{});

  std::vector<std::size_t> direct_levels, fft_levels;
  for (std::size_t j = 0; j < grid.ny; ++j) {
    if (engine == Engine::Direct || grid.y(j) < 2.0 * grid.dx())
      direct_levels.push_back(j);
    else
      fft_levels.push_back(j);
  }

  if (!direct_levels.empty()) {
    struct LevelRule {
      std::shared_ptr<const quadrule::Rule> rule;
      std::shared_ptr<const std::vector<cplx>> tphi, tpsi;
      double y;
      std::size_t j;
    };
    std::vector<LevelRule> lr;
    for (std::size_t j : direct_levels) {
      const double y = grid.y(j);
      const int pu = quadrule::panels_per_unit(y, ks);
      lr.push_back({quadrule::rule_for(ks.truncation, pu),
                    quadrule::table_for(Kernel::Phi, ks.truncation, pu),
                    quadrule::table_for(Kernel::Psi, ks.truncation, pu), y, j});
    }
    const auto total = static_cast<std::int64_t>(lr.size() * grid.nx);
    for_each_index(exec, total, [&](std::int64_t idx) {
      const auto& t = lr[static_cast<std::size_t>(idx) / grid.nx];
      const std::size_t i = static_cast<std::size_t>(idx) % grid.nx;
      const double x = grid.x(i);
      const cplx g0 = curve(x);
      thread_local std::vector<cplx> dev;
      dev.resize(t.rule->s.size());
      for (std::size_t q = 0; q < dev.size(); ++q)
        dev[q] = curve(x - t.rule->s[q] * t.y) - g0;
      const cplx u_val =
          g0 + quadrule::panel_sum(*t.rule, [&](std::size_t q) { return (*t.tphi)[q] * dev[q]; });
      const cplx v_val =
          quadrule::panel_sum(*t.rule, [&](std::size_t q) { return (*t.tpsi)[q] * dev[q]; });
      field.at(t.j, i) =
          hp == HalfPlane::Upper ? u_val + cplx(0, 1) * v_val : u_val - cplx(0, 1) * v_val;
    });
  }

  if (!fft_levels.empty()) {
    const CurveParts parts(curve);
    const double dx = grid.dx();
    const double period = curve.x_max() - curve.x_min();
    const bool circular = parts.periodic &&
                          std::abs((grid.x_max - grid.x_min) - period) <=
                              1e-9 * std::max(1.0, period);
    for (std::size_t j : fft_levels) {
      const double y = grid.y(j);
      const auto margin = static_cast<std::ptrdiff_t>(std::ceil(ks.truncation * y / dx));
      std::vector<cplx> convphi, convpsi;
      if (circular) {
        const std::size_t P = grid.nx - 1;
        std::vector<cplx> sig(P);
        for (std::size_t t = 0; t < P; ++t) sig[t] = parts.remainder(grid.x(t));
        for (Kernel k : {Kernel::Phi, Kernel::Psi}) {
          std::vector<cplx> ker(P, cplx{});
          for (std::ptrdiff_t d = -margin; d <= margin; ++d) {
            const auto r = static_cast<std::size_t>(
                ((d % static_cast<std::ptrdiff_t>(P)) + static_cast<std::ptrdiff_t>(P)) %
                static_cast<std::ptrdiff_t>(P));
            ker[r] += kernel_scaled(k, static_cast<double>(d) * dx, y) * dx;
          }
          auto conv = fftbackend::circular_convolve(sig, ker);
          conv.push_back(conv[0]);
          (k == Kernel::Phi ? convphi : convpsi) = std::move(conv);
        }
      } else {
        const std::size_t ns = grid.nx + 2 * static_cast<std::size_t>(margin);
        std::vector<cplx> sig(ns);
        for (std::size_t t = 0; t < ns; ++t)
          sig[t] = parts.remainder(grid.x_min +
                                   dx * (static_cast<double>(t) - static_cast<double>(margin)));
        for (Kernel k : {Kernel::Phi, Kernel::Psi}) {
          std::vector<cplx> ker(2 * static_cast<std::size_t>(margin) + 1);
          for (std::ptrdiff_t d = -margin; d <= margin; ++d)
            ker[static_cast<std::size_t>(d + margin)] =
                kernel_scaled(k, static_cast<double>(d) * dx, y) * dx;
          auto conv = fftbackend::linear_convolve(sig, ker);
          std::vector<cplx> row(grid.nx);
          for (std::size_t i = 0; i < grid.nx; ++i)
            row[i] = conv[i + 2 * static_cast<std::size_t>(margin)];
          (k == Kernel::Phi ? convphi : convpsi) = std::move(row);
        }
      }
      for (std::size_t i = 0; i < grid.nx; ++i) {
        const double x = grid.x(i);
        const cplx u_val = parts.u_analytic(x, y) + convphi[i];
        const cplx v_val = parts.v_analytic(x, y) + convpsi[i];
        field.at(j, i) =
            hp == HalfPlane::Upper ? u_val + cplx(0, 1) * v_val : u_val - cplx(0, 1) * v_val;
      }
    }
  }
  return field;
}

Partials partials(const SampledFunction& u, double x, double y, const KernelSet& ks) {
  if (!(y > 0.0)) throw std::invalid_argument("partials need y > 0");
  const SampledFunction w = u.weight();
  const cplx ux = convolve_at(w, Kernel::Phi, x, y, ks);
  const cplx vx = convolve_at(w, Kernel::Psi, x, y, ks);
  const cplx c2 = convolve_at(w, Kernel::Phi2, x, y, ks);
  Partials p;
  p.ux = ux;
  p.vx = vx;
  p.uy = 0.5 * vx;           // U_y = V_x / 2, an identity of the kernel family
  p.vy = ux + 0.5 * c2;      // V_y = U_x + (e^u * (phi'')_y) / 2
  return p;
}

cplx mu_at(const SampledFunction& u, double x, double y, HalfPlane hp,
           const KernelSet& ks) {
  if (!(y > 0.0)) throw std::invalid_argument("mu_at needs a positive height");
  const SampledFunction w = u.weight();
  const Kernel ka = hp == HalfPlane::Upper ? Kernel::Alpha : Kernel::AlphaConj;
  const Kernel kb = hp == HalfPlane::Upper ? Kernel::Beta : Kernel::BetaConj;
  const cplx den = convolve_at(w, kb, x, y, ks);
  if (std::abs(den) <= kDenominatorGuard)
    throw NumericGuardError("degenerate denominator",
                            "|beta_y * e^u| below guard; outside the valid neighborhood");
  return convolve_at(w, ka, x, y, ks) / den;
}

HalfPlaneField mu_field(const SampledFunction& u, const FieldGrid& grid, HalfPlane hp,
                        Engine engine, const KernelSet& ks, Exec exec) {
  grid.validate();
  const SampledFunction w = u.weight();
  const Kernel kernels[2] = {hp == HalfPlane::Upper ? Kernel::Alpha : Kernel::AlphaConj,
                             hp == HalfPlane::Upper ? Kernel::Beta : Kernel::BetaConj};
  auto conv = convolve_grid_multi(w, std::span<const Kernel>(kernels, 2), grid, engine,
                                  ks, exec);
  HalfPlaneField field;
  field.grid = grid;
  field.half_plane = hp;
  field.content = FieldContent::Mu;
  field.periodic_x =
      w.policy() == Extension::Periodic &&
      std::abs((grid.x_max - grid.x_min) - w.period()) <= 1e-9 * std::max(1.0, w.period());
  field.values.assign(grid.nx * grid.ny, cplx{});

  std::vector<char> tripped(grid.nx * grid.ny, 0);
  for_each_index(exec, static_cast<std::int64_t>(field.values.size()), [&](std::int64_t i) {
    const cplx den = conv[1][static_cast<std::size_t>(i)];
    if (std::abs(den) <= kDenominatorGuard) {
      tripped[static_cast<std::size_t>(i)] = 1;
      return;
    }
    field.values[static_cast<std::size_t>(i)] = conv[0][static_cast<std::size_t>(i)] / den;
  });
  for (char t : tripped)
    if (t)
      throw NumericGuardError("degenerate denominator",
                              "|beta_y * e^u| below guard somewhere on the grid");
  return field;
}

}  // namespace heatba
