#include "heatba/diagnostics.hpp"

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

void require_values(const HalfPlaneField& f) {
  if (f.values.empty()) throw std::invalid_argument("empty field");
}

// trapezoid row integrals of |v|^p along x, one slot per level
std::vector<double> row_integrals(const HalfPlaneField& f, double p, Exec exec) {
  std::vector<double> rows(f.ny(), 0.0);
  const double dx = f.grid.dx();
  for_each_index(exec, static_cast<std::int64_t>(f.ny()), [&](std::int64_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < f.nx(); ++i) {
      double cw = (i == 0 || i == f.nx() - 1) ? 0.5 : 1.0;
      acc += cw * pow_p(std::abs(f.at(static_cast<std::size_t>(j), i)), p);
    }
    rows[static_cast<std::size_t>(j)] = acc * dx;
  });
  return rows;
}

}  // namespace

double sup_norm(const HalfPlaneField& field) {
  require_values(field);
  if (field.content != FieldContent::Mu && field.content != FieldContent::DerivativeTuple)
    throw std::invalid_argument("sup_norm expects a mu field");
  double m = 0.0;
  for (const cplx& v : field.values) m = std::max(m, std::abs(v));
  return m;
}

double hyperbolic_p_norm(const HalfPlaneField& field, double p, Exec exec) {
  require_values(field);
  if (!(p > 1.0)) throw std::invalid_argument("hyperbolic p-norm requires p > 1");
  const auto rows = row_integrals(field, p, exec);
  if (field.ny() < 2) return 0.0;
  // int f(y) y^{-2} dy slab by slab; exact when f is constant on the slab
  std::vector<double> slabs(field.ny() - 1);
  for (std::size_t j = 0; j + 1 < field.ny(); ++j) {
    const double w = 1.0 / field.grid.y(j) - 1.0 / field.grid.y(j + 1);
    slabs[j] = 0.5 * (rows[j] + rows[j + 1]) * w;
  }
  return std::pow(pairwise_sum(std::span<const double>(slabs)), 1.0 / p);
}

CarlesonProfile carleson_profile(const HalfPlaneField& field, Exec exec) {
  require_values(field);
  const FieldGrid& g = field.grid;

  // prefix sums of |mu|^2 per level for O(1) interval integrals
  std::vector<double> cum((g.nx) * g.ny, 0.0);
  for_each_index(exec, static_cast<std::int64_t>(g.ny), [&](std::int64_t j) {
    double acc = 0.0;
    const std::size_t row = static_cast<std::size_t>(j) * g.nx;
    for (std::size_t i = 0; i + 1 < g.nx; ++i) {
      const double a = std::norm(field.values[row + i]);
      const double b = std::norm(field.values[row + i + 1]);
      acc += 0.5 * (a + b) * g.dx();
      cum[row + i + 1] = acc;
    }
  });
  const auto int_row = [&](std::size_t j, double a, double b) {
    // grid-aligned boxes only; a,b are snapped to nodes by the caller
    const auto ia = static_cast<std::size_t>(std::lround((a - g.x_min) / g.dx()));
    const auto ib = static_cast<std::size_t>(std::lround((b - g.x_min) / g.dx()));
    return cum[j * g.nx + ib] - cum[j * g.nx + ia];
  };

  // dyadic grid-aligned intervals: halves 2^k * (4 dx), centers on nodes
  CarlesonProfile prof;
  const double base_half = 4.0 * g.dx();
  const std::size_t stride = std::max<std::size_t>(1, g.nx / 64);
  std::vector<CarlesonEntry> boxes;
  for (int k = 0;; ++k) {
    const double half = std::ldexp(base_half, k);
    if (half > 0.5 * (g.x_max - g.x_min)) break;
    const auto half_cells = static_cast<std::size_t>(std::lround(half / g.dx()));
    for (std::size_t c = 0; c < g.nx; c += stride) {
      if (c < half_cells || c + half_cells >= g.nx) continue;
      boxes.push_back({g.x(c), half, 0.0});
    }
  }
  std::vector<char> skipped(boxes.size(), 0);
  for_each_index(exec, static_cast<std::int64_t>(boxes.size()), [&](std::int64_t bi) {
    CarlesonEntry& e = boxes[static_cast<std::size_t>(bi)];
    const double len = e.half * 2.0;
    if (len < g.y_min) {  // the grid cannot reach below its first level
      skipped[static_cast<std::size_t>(bi)] = 1;
      return;
    }
    const double y_top = std::min(len, g.y_max);
    // lambda = |mu|^2 / y integrated against dy = d(log y) per slab
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < g.ny; ++j) {
      const double y0 = g.y(j), y1 = g.y(j + 1);
      if (y0 >= y_top) break;
      const double f0 = int_row(j, e.center - e.half, e.center + e.half);
      const double f1 = int_row(j + 1, e.center - e.half, e.center + e.half);
      if (y1 <= y_top) {
        acc += 0.5 * (f0 + f1) * std::log(y1 / y0);
      } else {
        const double t = std::log(y_top / y0) / std::log(y1 / y0);
        const double f_top = f0 + (f1 - f0) * t;
        acc += 0.5 * (f0 + f_top) * std::log(y_top / y0);
      }
    }
    e.measure = acc / len;
  });

  double sup = 0.0;
  double smallest_scale = kInf;
  for (const auto& b : boxes) smallest_scale = std::min(smallest_scale, b.half);
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    if (skipped[i]) {
      ++prof.skipped_boxes;
      continue;
    }
    prof.entries.push_back(boxes[i]);
    sup = std::max(sup, boxes[i].measure);
    if (boxes[i].half == smallest_scale)
      prof.smallest_scale_max = std::max(prof.smallest_scale_max, boxes[i].measure);
  }
  prof.supremum = sup;
  return prof;
}

double carleson_box_integral(const HalfPlaneField& field, double x_lo, double x_hi,
                             double height) {
  require_values(field);
  const FieldGrid& g = field.grid;
  const auto ia = static_cast<std::size_t>(std::lround((x_lo - g.x_min) / g.dx()));
  const auto ib = static_cast<std::size_t>(std::lround((x_hi - g.x_min) / g.dx()));
  if (ia >= ib || ib >= g.nx) throw std::invalid_argument("box outside the grid");
  const auto row = [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = ia; i < ib; ++i)
      acc += 0.5 * (std::norm(field.at(j, i)) + std::norm(field.at(j, i + 1))) * g.dx();
    return acc;
  };
  double total = 0.0;
  for (std::size_t j = 0; j + 1 < g.ny; ++j) {
    const double y0 = g.y(j), y1 = g.y(j + 1);
    if (y0 >= height) break;
    const double f0 = row(j), f1 = row(j + 1);
    if (y1 <= height) {
      total += 0.5 * (f0 + f1) * std::log(y1 / y0);
    } else {
      const double t = std::log(height / y0) / std::log(y1 / y0);
      total += 0.5 * (f0 + (f0 + (f1 - f0) * t)) * std::log(height / y0);
    }
  }
  return total;
}

std::vector<VanishingEntry> vanishing_profile(const HalfPlaneField& field) {
  require_values(field);
  std::vector<VanishingEntry> out(field.ny());
  double running = 0.0;
  for (std::size_t j = 0; j < field.ny(); ++j) {
    double row_max = 0.0;
    for (std::size_t i = 0; i < field.nx(); ++i)
      row_max = std::max(row_max, std::abs(field.at(j, i)));
    running = std::max(running, row_max);
    out[j] = {field.grid.y(j), running};
  }
  return out;
}

std::optional<double> maximal_dilatation(double sup) {
  if (!(sup < 1.0)) return std::nullopt;
  return (1.0 + sup) / (1.0 - sup);
}

std::optional<double> maximal_dilatation(const HalfPlaneField& field) {
  return maximal_dilatation(sup_norm(field));
}

std::pair<double, double> bilipschitz_ratio(const SampledFunction& u,
                                            const FieldGrid& grid, Engine engine,
                                            const KernelSet& ks, Exec exec) {
  if (!u.is_real()) throw std::invalid_argument("bilipschitz_ratio requires real-valued u");
  const SampledFunction w = u.weight();
  const Kernel kernels[2] = {Kernel::Beta, Kernel::Phi};
  auto conv = convolve_grid_multi(w, std::span<const Kernel>(kernels, 2), grid, engine,
                                  ks, exec);
  double lo = kInf, hi = 0.0;
  for (std::size_t i = 0; i < conv[0].size(); ++i) {
    const double imf = conv[1][i].real();  // Im F = y (e^u * phi_y), real for real u
    if (!(imf > 0.0))
      throw NumericGuardError("not a self-map",
                              "Im F <= 0 on the grid; extension leaves the half-plane");
    const double r = std::abs(conv[0][i]) / imf;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return {lo, hi};
}

std::vector<GateauxRow> gateaux_check(const SampledFunction& u, const SampledFunction& v,
                                      std::span<const double> steps, const FieldGrid& grid,
                                      double p, Engine engine, const KernelSet& ks,
                                      Exec exec) {
  if (steps.size() < 2) throw std::invalid_argument("gateaux_check needs at least 2 steps");
  std::vector<double> hs(steps.begin(), steps.end());
  std::sort(hs.rbegin(), hs.rend());
  for (double h : hs)
    if (!(h > 0.0)) throw std::invalid_argument("gateaux steps must be positive");

  std::vector<HalfPlaneField> dfields;
  for (double h : hs) {
    const SampledFunction up = SampledFunction::combine(u, 1.0, v, h);
    const SampledFunction um = SampledFunction::combine(u, 1.0, v, -h);
    HalfPlaneField fp = mu_field(up, grid, HalfPlane::Upper, engine, ks, exec);
    const HalfPlaneField fm = mu_field(um, grid, HalfPlane::Upper, engine, ks, exec);
    for (std::size_t i = 0; i < fp.values.size(); ++i)
      fp.values[i] = (fp.values[i] - fm.values[i]) / (2.0 * h);
    fp.content = FieldContent::DerivativeTuple;
    dfields.push_back(std::move(fp));
  }

  std::vector<GateauxRow> rows;
  for (std::size_t k = 0; k + 1 < dfields.size(); ++k) {
    HalfPlaneField diff = dfields[k];
    for (std::size_t i = 0; i < diff.values.size(); ++i)
      diff.values[i] -= dfields[k + 1].values[i];
    GateauxRow row;
    row.h = hs[k];
    row.diff_sup = sup_norm(diff);
    row.diff_p = hyperbolic_p_norm(diff, p, exec);
    if (!rows.empty()) {
      row.ratio_sup = rows.back().diff_sup / std::max(row.diff_sup, 1e-300);
      row.ratio_p = rows.back().diff_p / std::max(row.diff_p, 1e-300);
    }
    rows.push_back(row);
  }
  return rows;
}

DiagnosticsReport diagnostics(const SampledFunction& u, const HalfPlaneField& mu,
                              double p, Engine engine, const KernelSet& ks, Exec exec) {
  DiagnosticsReport r;
  r.p = p;
  r.sup_norm = sup_norm(mu);
  r.p_norm = hyperbolic_p_norm(mu, p, exec);
  r.k_dilatation = maximal_dilatation(r.sup_norm);
  r.vanishing = vanishing_profile(mu);
  const CarlesonProfile cp = carleson_profile(mu, exec);
  r.carleson_sup = cp.supremum;
  r.in_m = r.sup_norm < 1.0;
  r.in_m0 = !r.vanishing.empty() && r.sup_norm > 0.0 &&
            r.vanishing.front().sup < 0.1 * r.sup_norm;
  r.in_mp = r.in_m && std::isfinite(r.p_norm);
  if (u.is_real() && mu.half_plane == HalfPlane::Upper) {
    const auto [lo, hi] = bilipschitz_ratio(u, mu.grid, engine, ks, exec);
    r.bilip_min = lo;
    r.bilip_max = hi;
  }
  return r;
}

std::vector<std::pair<std::string, std::string>> DiagnosticsReport::entries() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("sup_norm", format_double(sup_norm));
  kv.emplace_back("p", format_double(p));
  kv.emplace_back("p_norm", format_double(p_norm));
  kv.emplace_back("K", k_dilatation ? format_double(*k_dilatation) : "not_qc");
  kv.emplace_back("bilip_min", bilip_min ? format_double(*bilip_min) : "");
  kv.emplace_back("bilip_max", bilip_max ? format_double(*bilip_max) : "");
  kv.emplace_back("carleson_sup", carleson_sup ? format_double(*carleson_sup) : "");
  kv.emplace_back("in_M", in_m ? "1" : "0");
  kv.emplace_back("in_M0", in_m0 ? "1" : "0");
  kv.emplace_back("in_Mp", in_mp ? "1" : "0");
  return kv;
}

}  // namespace heatba
