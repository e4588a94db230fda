#include "heatba/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>

#include "fft_backend.hpp"
#include "quad_rule.hpp"

namespace heatba {

namespace {
constexpr double kInvSqrtPi = 0.5641895835477562869480794515607726;
}

double phi(double x) { return kInvSqrtPi * std::exp(-x * x); }
double psi(double x) { return -2.0 * x * phi(x); }
double phi2(double x) { return (4.0 * x * x - 2.0) * phi(x); }

// Assembled from the four partial-derivative identities:
//   F_zbar = ((U_x - V_y) + i(U_y + V_x))/2,  F_z = ((U_x + V_y) + i(V_x - U_y))/2
// with U_x = e^u*phi_y, V_x = e^u*psi_y, U_y = V_x/2, V_y = U_x + (e^u*(phi'')_y)/2.
cplx alpha(double x) { return cplx(-0.25 * phi2(x), 0.75 * psi(x)); }
cplx beta(double x) { return cplx(phi(x) + 0.25 * phi2(x), 0.25 * psi(x)); }

cplx kernel_eval(Kernel k, double x) {
  switch (k) {
    case Kernel::Phi: return phi(x);
    case Kernel::Psi: return psi(x);
    case Kernel::Phi2: return phi2(x);
    case Kernel::Alpha: return alpha(x);
    case Kernel::Beta: return beta(x);
    case Kernel::AlphaConj: return std::conj(alpha(x));
    case Kernel::BetaConj: return std::conj(beta(x));
  }
  return {};
}

cplx kernel_scaled(Kernel k, double x, double y) { return kernel_eval(k, x / y) / y; }

void KernelSet::validate() const {
  if (!(truncation >= 6.0)) throw ConfigError("kernel truncation radius must be >= 6");
  if (density < 1) throw ConfigError("kernel quadrature density must be >= 1");
  if (!(decay_c > 0.0)) throw ConfigError("kernel decay constant must be positive");
}

double FieldGrid::y(std::size_t j) const {
  if (ny == 1) return y_min;
  const double r = std::log(y_max / y_min) / static_cast<double>(ny - 1);
  return y_min * std::exp(r * static_cast<double>(j));
}

double FieldGrid::log_ratio() const {
  return ny > 1 ? std::log(y_max / y_min) / static_cast<double>(ny - 1) : 0.0;
}

void FieldGrid::validate() const {
  if (nx < 2 || ny < 1) throw ConfigError("grid needs nx >= 2 and ny >= 1");
  if (!(y_min > 0.0)) throw ConfigError("grid needs y_min > 0");
  if (!(y_max >= y_min)) throw ConfigError("grid needs y_max >= y_min");
  if (!(x_max > x_min)) throw ConfigError("grid needs x_max > x_min");
}

}  // namespace heatba

namespace heatba::quadrule {
namespace {

const double kGlNodes[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGlWeights[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

std::mutex g_mutex;

}  // namespace

int panels_per_unit(double y, const KernelSet& ks) {
  // densify up to 8 panels per unit of y so order-unity variation of w stays
  // resolved through y ~ 8; beyond that the kernel window outgrows the
  // signal scale and the FFT engine is the accurate route
  const int base = static_cast<int>(std::clamp(std::ceil(y), 1.0, 8.0));
  return base * ks.density;
}

std::shared_ptr<const Rule> rule_for(double truncation, int per_unit) {
  static std::map<std::pair<double, int>, std::shared_ptr<const Rule>> cache;
  std::lock_guard<std::mutex> lock(g_mutex);
  auto key = std::make_pair(truncation, per_unit);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto rule = std::make_shared<Rule>();
  const double width = 1.0 / static_cast<double>(per_unit);
  const int m = static_cast<int>(std::ceil(truncation * per_unit));
  // positive side panels [a, b), clipped at T; mirrored to keep the rule
  // exactly symmetric about 0.
  std::vector<double> sp, wp;
  for (int j = 0; j < m; ++j) {
    const double a = j * width;
    const double b = std::min(truncation, a + width);
    if (!(b > a)) break;
    for (int g = 0; g < 12; ++g) {
      sp.push_back(0.5 * (a + b) + 0.5 * (b - a) * kGlNodes[g]);
      wp.push_back(0.5 * (b - a) * kGlWeights[g]);
    }
  }
  for (std::size_t i = sp.size(); i-- > 0;) {
    rule->s.push_back(-sp[i]);
    rule->w.push_back(wp[i]);
  }
  rule->s.insert(rule->s.end(), sp.begin(), sp.end());
  rule->w.insert(rule->w.end(), wp.begin(), wp.end());
  auto out = std::shared_ptr<const Rule>(rule);
  cache.emplace(key, out);
  return out;
}

std::shared_ptr<const std::vector<cplx>> table_for(Kernel k, double truncation,
                                                   int per_unit) {
  static std::map<std::tuple<Kernel, double, int>, std::shared_ptr<const std::vector<cplx>>>
      cache;
  auto rule = rule_for(truncation, per_unit);
  std::lock_guard<std::mutex> lock(g_mutex);
  auto key = std::make_tuple(k, truncation, per_unit);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto tab = std::make_shared<std::vector<cplx>>(rule->s.size());
  for (std::size_t i = 0; i < rule->s.size(); ++i)
    (*tab)[i] = kernel_eval(k, rule->s[i]) * rule->w[i];
  cache.emplace(key, tab);
  return tab;
}

}  // namespace heatba::quadrule

namespace heatba {
namespace {

cplx convolve_rule(const std::function<cplx(double)>& w, const quadrule::Rule& rule,
                   const std::vector<cplx>& table, double x, double y) {
  return quadrule::panel_sum(rule, [&](std::size_t i) {
    return table[i] * w(x - rule.s[i] * y);
  });
}

void require_positive_y(double y) {
  if (!(y > 0.0)) throw std::invalid_argument("convolution height y must be positive");
}

}  // namespace

cplx convolve_eval(const std::function<cplx(double)>& w, Kernel k, double x, double y,
                   const KernelSet& ks) {
  require_positive_y(y);
  ks.validate();
  const int pu = quadrule::panels_per_unit(y, ks);
  const auto rule = quadrule::rule_for(ks.truncation, pu);
  const auto table = quadrule::table_for(k, ks.truncation, pu);
  return convolve_rule(w, *rule, *table, x, y);
}

cplx convolve_at(const SampledFunction& w, Kernel k, double x, double y,
                 const KernelSet& ks) {
  return convolve_eval([&w](double t) { return w(t); }, k, x, y, ks);
}

namespace {

// One FFT level: sampled kernel, zero-padded linear convolution over the
// policy-extended signal (or circular convolution when the grid spans one
// period of a periodic w).
struct LevelConv {
  const SampledFunction& w;
  const FieldGrid& grid;
  const KernelSet& ks;

  bool circular() const {
    return w.policy() == Extension::Periodic &&
           std::abs((grid.x_max - grid.x_min) - w.period()) <=
               1e-9 * std::max(1.0, w.period());
  }

  void run(double y, std::span<const Kernel> kernels,
           std::vector<std::vector<cplx>*> rows) const {
    const double dx = grid.dx();
    const auto margin = static_cast<std::ptrdiff_t>(std::ceil(ks.truncation * y / dx));
    if (circular()) {
      const std::size_t P = grid.nx - 1;
      std::vector<cplx> sig(P);
      for (std::size_t t = 0; t < P; ++t) sig[t] = w(grid.x(t));
      for (std::size_t kk = 0; kk < kernels.size(); ++kk) {
        std::vector<cplx> ker(P, cplx{});
        for (std::ptrdiff_t d = -margin; d <= margin; ++d) {
          const auto r = static_cast<std::size_t>(((d % static_cast<std::ptrdiff_t>(P)) +
                                                   static_cast<std::ptrdiff_t>(P)) %
                                                  static_cast<std::ptrdiff_t>(P));
          ker[r] += kernel_scaled(kernels[kk], static_cast<double>(d) * dx, y) * dx;
        }
        auto conv = fftbackend::circular_convolve(sig, ker);
        for (std::size_t i = 0; i < P; ++i) (*rows[kk])[i] = conv[i];
        (*rows[kk])[grid.nx - 1] = conv[0];
      }
      return;
    }
    const std::size_t ns = grid.nx + 2 * static_cast<std::size_t>(margin);
    std::vector<cplx> sig(ns);
    for (std::size_t t = 0; t < ns; ++t)
      sig[t] = w(grid.x_min + dx * (static_cast<double>(t) - static_cast<double>(margin)));
    for (std::size_t kk = 0; kk < kernels.size(); ++kk) {
      std::vector<cplx> ker(2 * static_cast<std::size_t>(margin) + 1);
      for (std::ptrdiff_t d = -margin; d <= margin; ++d)
        ker[static_cast<std::size_t>(d + margin)] =
            kernel_scaled(kernels[kk], static_cast<double>(d) * dx, y) * dx;
      auto conv = fftbackend::linear_convolve(sig, ker);
      for (std::size_t i = 0; i < grid.nx; ++i)
        (*rows[kk])[i] = conv[i + 2 * static_cast<std::size_t>(margin)];
    }
  }
};

}  // namespace

std::vector<std::vector<cplx>> convolve_grid_multi(const SampledFunction& w,
                                                   std::span<const Kernel> kernels,
                                                   const FieldGrid& grid, Engine engine,
                                                   const KernelSet& ks, Exec exec) {
  grid.validate();
  ks.validate();
  const std::size_t nk = kernels.size();
  std::vector<std::vector<cplx>> out(nk);
  for (auto& v : out) v.assign(grid.nx * grid.ny, cplx{});

  // levels the FFT engine must hand to the direct rule (unresolved kernel)
  std::vector<std::size_t> direct_levels, fft_levels;
  for (std::size_t j = 0; j < grid.ny; ++j) {
    if (engine == Engine::Direct || grid.y(j) < 2.0 * grid.dx())
      direct_levels.push_back(j);
    else
      fft_levels.push_back(j);
  }

  if (!direct_levels.empty()) {
    // per-level rules and tables built serially, then a flat parallel map
    struct LevelTables {
      std::shared_ptr<const quadrule::Rule> rule;
      std::vector<std::shared_ptr<const std::vector<cplx>>> tables;
      double y;
    };
    std::vector<LevelTables> lt(direct_levels.size());
    for (std::size_t li = 0; li < direct_levels.size(); ++li) {
      const double y = grid.y(direct_levels[li]);
      const int pu = quadrule::panels_per_unit(y, ks);
      lt[li].rule = quadrule::rule_for(ks.truncation, pu);
      lt[li].y = y;
      for (std::size_t kk = 0; kk < nk; ++kk)
        lt[li].tables.push_back(quadrule::table_for(kernels[kk], ks.truncation, pu));
    }
    const auto total = static_cast<std::int64_t>(direct_levels.size() * grid.nx);
    // errors are flagged and rethrown after the loop: throwing out of an
    // OpenMP region would terminate
    std::exception_ptr error;
    std::mutex error_mutex;
    for_each_index(exec, total, [&](std::int64_t idx) {
      try {
        const std::size_t li = static_cast<std::size_t>(idx) / grid.nx;
        const std::size_t i = static_cast<std::size_t>(idx) % grid.nx;
        const auto& t = lt[li];
        const double x = grid.x(i);
        const std::size_t j = direct_levels[li];
        // shared w evaluations across kernels
        const auto& rule = *t.rule;
        thread_local std::vector<cplx> wvals;
        wvals.resize(rule.s.size());
        for (std::size_t q = 0; q < rule.s.size(); ++q) wvals[q] = w(x - rule.s[q] * t.y);
        for (std::size_t kk = 0; kk < nk; ++kk) {
          const auto& table = *t.tables[kk];
          out[kk][j * grid.nx + i] = quadrule::panel_sum(
              rule, [&](std::size_t q) { return table[q] * wvals[q]; });
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
    if (error) std::rethrow_exception(error);
  }

  LevelConv lc{w, grid, ks};
  for (std::size_t j : fft_levels) {
    std::vector<std::vector<cplx>> rows(nk, std::vector<cplx>(grid.nx));
    std::vector<std::vector<cplx>*> ptrs(nk);
    for (std::size_t kk = 0; kk < nk; ++kk) ptrs[kk] = &rows[kk];
    lc.run(grid.y(j), kernels, ptrs);
    for (std::size_t kk = 0; kk < nk; ++kk)
      std::copy(rows[kk].begin(), rows[kk].end(), out[kk].begin() + static_cast<std::ptrdiff_t>(j * grid.nx));
  }
  return out;
}

std::vector<cplx> convolve_grid(const SampledFunction& w, Kernel k, const FieldGrid& grid,
                                Engine engine, const KernelSet& ks, Exec exec) {
  const Kernel kern[1] = {k};
  auto multi = convolve_grid_multi(w, std::span<const Kernel>(kern, 1), grid, engine, ks, exec);
  return std::move(multi[0]);
}

}  // namespace heatba
