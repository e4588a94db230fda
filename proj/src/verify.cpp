#include "heatba/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heatba {
namespace {

constexpr double kGlNodes[12] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
    -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
    0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
    0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
constexpr double kGlWeights[12] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
    0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
    0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
    0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

cplx quad_kernel(const std::function<cplx(double)>& f, double a, double b, int panels) {
  cplx acc = 0.0;
  for (int j = 0; j < panels; ++j) {
    const double pa = a + (b - a) * j / panels, pb = a + (b - a) * (j + 1) / panels;
    for (int g = 0; g < 12; ++g)
      acc += 0.5 * (pb - pa) * kGlWeights[g] *
             f(0.5 * (pa + pb) + 0.5 * (pb - pa) * kGlNodes[g]);
  }
  return acc;
}

struct Suite {
  std::vector<CheckResult> results;
  Engine engine;
  Exec exec;

  void check(const std::string& name, bool pass, const std::string& detail) {
    results.push_back({name, pass, detail});
  }
  void check_le(const std::string& name, double value, double bound) {
    std::ostringstream os;
    os << value << " <= " << bound;
    check(name, value <= bound, os.str());
  }
};

SampledFunction fix_sin(double eps = 0.1, std::size_t n = 2049) {
  return SampledFunction::from_function(
      [eps](double x) { return cplx(eps * std::sin(x), 0.0); }, -20.48, 20.48, n);
}

SampledFunction fix_gauss(double s = 0.2, std::size_t n = 1025) {
  return SampledFunction::from_function(
      [s](double x) { return cplx(s * std::exp(-x * x), 0.0); }, -16.0, 16.0, n);
}

SampledFunction fix_const(cplx c, std::size_t n = 257) {
  return SampledFunction::from_function([c](double) { return c; }, -20.48, 20.48, n);
}

double field_max_err(const HalfPlaneField& f, const std::function<cplx(double, double)>& ref) {
  double m = 0.0;
  for (std::size_t j = 0; j < f.ny(); ++j)
    for (std::size_t i = 0; i < f.nx(); ++i)
      m = std::max(m, std::abs(f.at(j, i) - ref(f.grid.x(i), f.grid.y(j))));
  return m;
}

void kernel_checks(Suite& s) {
  const auto wrap = [](Kernel k) {
    return std::function<cplx(double)>([k](double x) { return kernel_eval(k, x); });
  };
  const double tol = 1e-10;
  s.check_le("kernel int phi = 1",
             std::abs(quad_kernel(wrap(Kernel::Phi), -12, 12, 192) - 1.0), tol);
  s.check_le("kernel int psi = 0", std::abs(quad_kernel(wrap(Kernel::Psi), -12, 12, 192)),
             tol);
  s.check_le("kernel int x^2 phi = 1/2",
             std::abs(quad_kernel([](double x) { return cplx(x * x * phi(x), 0.0); }, -12,
                                  12, 192) -
                      0.5),
             tol);
  s.check_le("kernel int x psi = -1",
             std::abs(quad_kernel([](double x) { return cplx(x * psi(x), 0.0); }, -12, 12,
                                  192) +
                      1.0),
             tol);
  s.check_le("kernel int alpha = 0",
             std::abs(quad_kernel(wrap(Kernel::Alpha), -12, 12, 192)), tol);
  s.check_le("kernel int beta = 1",
             std::abs(quad_kernel(wrap(Kernel::Beta), -12, 12, 192) - 1.0), tol);

  KernelSet ks;
  double worst = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double x = -10.0 + 20.0 * i / 10000.0;
    worst = std::max(worst, std::abs(alpha(x)) * std::exp(std::abs(x)));
    worst = std::max(worst, std::abs(beta(x)) * std::exp(std::abs(x)));
  }
  s.check_le("kernel decay |alpha|,|beta| <= C e^{-|x|}", worst, ks.decay_c);

  double scale_err = 0.0;
  for (double y : {0.5, 2.0})
    for (double x : {-3.0, 0.7, 5.0})
      scale_err = std::max(scale_err,
                           std::abs(kernel_scaled(Kernel::Alpha, x, y) - alpha(x / y) / y));
  s.check_le("kernel scaling alpha_y(x) = alpha(x/y)/y", scale_err, 1e-14);
}

void identity_checks(Suite& s) {
  const FieldGrid grid{-20.0, 20.0, 257, 1e-3, 50.0, 24};
  const double tol_direct = 1e-9,
               tol_engine = s.engine == Engine::Direct ? 1e-9 : 1e-6;
  struct Case {
    const char* name;
    cplx c;
  };
  for (const Case& tc : {Case{"u=0", 0.0}, Case{"u=-1.1", -1.1}, Case{"u=0.7+0.4i", {0.7, 0.4}}}) {
    const SampledFunction u = fix_const(tc.c);
    const cplx ec = std::exp(tc.c);
    const HalfPlaneField f_direct =
        extend(u, grid, HalfPlane::Upper, Engine::Direct, {}, s.exec, false);
    const HalfPlaneField f_eng =
        extend(u, grid, HalfPlane::Upper, s.engine, {}, s.exec, false);
    const auto ref = [ec](double x, double y) { return ec * cplx(x, y); };
    s.check_le(std::string("identity F direct ") + tc.name, field_max_err(f_direct, ref),
               tol_direct);
    s.check_le(std::string("identity F engine ") + tc.name, field_max_err(f_eng, ref),
               tol_engine);
    const HalfPlaneField mu_d = mu_field(u, grid, HalfPlane::Upper, Engine::Direct, {}, s.exec);
    const HalfPlaneField mu_e = mu_field(u, grid, HalfPlane::Upper, s.engine, {}, s.exec);
    s.check_le(std::string("identity mu direct ") + tc.name, sup_norm(mu_d), tol_direct);
    s.check_le(std::string("identity mu engine ") + tc.name, sup_norm(mu_e), tol_engine);
  }
}

void equivariance_checks(Suite& s) {
  const SampledFunction u = fix_sin();
  const double probes_x[3] = {-2.0, 0.3, 4.0};
  const double probes_y[2] = {0.3, 1.7};

  double shift_err = 0.0;
  const SampledFunction us = u.shifted(cplx(0.4, -0.2));
  for (double x : probes_x)
    for (double y : probes_y)
      shift_err = std::max(shift_err, std::abs(mu_at(us, x, y) - mu_at(u, x, y)));
  s.check_le("equivariance constant shift", shift_err, 1e-10);

  double trans_err = 0.0;
  for (double a : {-1.0, 0.7}) {
    const SampledFunction ut = SampledFunction::from_function(
        [a](double x) { return cplx(0.1 * std::sin(x + a), 0.0); }, -20.48, 20.48, 2049);
    for (double x : probes_x)
      for (double y : probes_y)
        trans_err = std::max(trans_err, std::abs(mu_at(ut, x, y) - mu_at(u, x + a, y)));
  }
  s.check_le("equivariance translation", trans_err, 1e-8);

  double scale_err = 0.0;
  for (double lam : {0.5, 2.0}) {
    const SampledFunction ul = SampledFunction::from_function(
        [lam](double x) { return cplx(0.1 * std::sin(lam * x), 0.0); }, -20.48 / lam,
        20.48 / lam, 2049);
    for (double x : probes_x)
      for (double y : probes_y)
        scale_err = std::max(scale_err, std::abs(mu_at(ul, x, y) - mu_at(u, lam * x, lam * y)));
  }
  s.check_le("equivariance scaling", scale_err, 1e-6);
}

void positivity_checks(Suite& s) {
  const FieldGrid grid{-12.0, 12.0, 257, 1e-3, 10.0, 24};
  std::vector<std::pair<const char*, SampledFunction>> cases;
  cases.emplace_back("0.2 sin", fix_sin(0.2));
  cases.emplace_back("0.5 gauss", fix_gauss(0.5));
  for (const auto& [name, u] : cases) {
    const SampledFunction w = u.weight();
    const Kernel kernels[3] = {Kernel::Alpha, Kernel::Beta, Kernel::Phi};
    auto conv = convolve_grid_multi(w, std::span<const Kernel>(kernels, 3), grid, s.engine,
                                    {}, s.exec);
    bool imf_pos = true, jac_pos = true;
    double sup_mu = 0.0;
    for (std::size_t i = 0; i < conv[0].size(); ++i) {
      if (!(conv[2][i].real() > 0.0)) imf_pos = false;
      const double jac = std::norm(conv[1][i]) - std::norm(conv[0][i]);
      if (!(jac > 0.0)) jac_pos = false;
      sup_mu = std::max(sup_mu, std::abs(conv[0][i] / conv[1][i]));
    }
    s.check(std::string("positivity Im F > 0, ") + name, imf_pos, "grid certificate");
    s.check(std::string("positivity Jacobian > 0, ") + name, jac_pos, "grid certificate");
    s.check_le(std::string("positivity sup|mu| < 1, ") + name, sup_mu, 1.0 - 1e-12);
  }
}

void funcspace_checks(Suite& s) {
  const SampledFunction g = fix_gauss(0.3);
  const IntervalFamily fam = IntervalFamily::dyadic(g, 0, 4);
  const double bmo = bmo_norm(g, fam, s.exec);
  const BesovResult bes = besov_norm(g, 2.0, s.exec);
  s.check(std::string("Besov fixture finite"), !bes.diverged, "0.3 gauss, p=2");
  s.check_le("bmo <= besov (inclusion)", bmo, bes.value * (1.0 + 1e-6));

  const SampledFunction w = SampledFunction::from_function(
      [](double x) { return cplx(std::exp(0.1 * std::sin(x)), 0.0); }, -20.48, 20.48, 2049);
  const double a2 = a2_constant(w, IntervalFamily::dyadic(w, 0, 4), s.exec);
  const double ai = a_infty_constant(w, IntervalFamily::dyadic(w, 0, 4), s.exec);
  s.check("a_infty >= 1 (Jensen)", ai >= 1.0 - 1e-9, format_double(ai));
  s.check_le("a_infty <= a2", ai, a2 + 1e-9);

  const SampledFunction gsh = g.shifted(cplx(3.0, 0.0));
  s.check_le("bmo constant-shift invariance",
             std::abs(bmo_norm(gsh, fam, s.exec) - bmo), 1e-12);

  const auto prof = vmo_profile(g, IntervalFamily::dyadic(g), s.exec);
  s.check("vmo profile decays with scale", prof.front().second < prof.back().second,
          "smallest-scale < largest-scale oscillation");

  const SampledFunction bump = SampledFunction::from_function(
      [](double x) { return cplx(std::abs(x) < 2 ? std::exp(-1.0 / (4 - x * x)) : 0.0, 0.0); },
      -8.0, 8.0, 2049);
  const SampledFunction mol = mollify(bump, 0.25);
  double mass0 = 0.0, mass1 = 0.0;
  for (std::size_t i = 0; i + 1 < bump.size(); ++i) {
    mass0 += 0.5 * (bump.sample(i) + bump.sample(i + 1)).real() * bump.step();
    mass1 += 0.5 * (mol.sample(i) + mol.sample(i + 1)).real() * mol.step();
  }
  s.check_le("mollify preserves mean", std::abs(mass0 - mass1), 1e-10);
}

void circle_checks(Suite& s) {
  const SampledFunction v = SampledFunction::from_function(
      [](double x) { return cplx(0.1 * std::cos(2.0 * kPi * x), 0.0); }, 0.0, 1.0, 257,
      Extension::Periodic);
  const SampledFunction u = circle::lift(v);
  const Curve c = gamma(u, true);
  double per_err = 0.0;
  for (double x : {0.1, 0.6})
    for (double y : {0.05, 0.2}) {
      const cplx f0 = extend_at(c, x, y, HalfPlane::Upper);
      const cplx f1 = extend_at(c, x + 1.0, y, HalfPlane::Upper);
      per_err = std::max(per_err, std::abs(f1 - f0 - 1.0));
    }
  s.check_le("circle F(z+1) = F(z) + 1", per_err, 1e-9);

  const double cut = std::log(2.0) / (2.0 * kPi);
  const FieldGrid strip{0.0, 1.0, 257, 1e-3, cut, 16};
  const HalfPlaneField mu = mu_field(u, strip, HalfPlane::Upper, s.engine, {}, s.exec);
  const circle::DiskField disk = circle::project_disk(mu, 0.5);
  double transport = 0.0;
  for (std::size_t ring = 0; ring < disk.rings(); ++ring)
    for (std::size_t k = 0; k < disk.ntheta(); ++k)
      transport = std::max(transport,
                           std::abs(std::abs(disk.at(ring, k)) - std::abs(mu.at(ring, k))));
  s.check_le("circle modulus transport |nu| = |mu|", transport, 1e-12);

  bool rejected = false;
  try {
    (void)circle::project_disk(mu, 0.04);
  } catch (const ConfigError&) {
    rejected = true;
  }
  s.check("circle rejects r0 <= e^{-pi}", rejected, "r0 = 0.04");
}

void engine_agreement_checks(Suite& s) {
  const SampledFunction w = SampledFunction::from_function(
      [](double x) { return cplx(std::exp(0.1 * std::sin(x)), 0.0); }, -20.48, 20.48, 4097);
  const FieldGrid grid{-10.0, 10.0, 513, 0.05, 5.0, 12};
  const auto fft = convolve_grid(w, Kernel::Beta, grid, Engine::Fft, {}, s.exec);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; i += 37) {
      const cplx direct = convolve_at(w, Kernel::Beta, grid.x(i), grid.y(j));
      worst = std::max(worst, std::abs(fft[j * grid.nx + i] - direct) / std::abs(direct));
    }
  s.check_le("engine agreement fft vs direct (beta * e^u)", worst, 1e-6);
}

void parity_checks(Suite& s) {
  const SampledFunction g = fix_gauss(0.25, 513);
  const BesovResult b_serial = besov_norm(g, 2.0, Exec::Serial, 257);
  const BesovResult b_par = besov_norm(g, 2.0, Exec::Parallel, 257);
  s.check("parity besov serial == parallel (bitwise)",
          b_serial.refinements == b_par.refinements, "fixed-order pairwise reduction");

  const FieldGrid grid{-8.0, 8.0, 129, 0.01, 4.0, 8};
  const auto f_serial = mu_field(g, grid, HalfPlane::Upper, s.engine, {}, Exec::Serial);
  const auto f_par = mu_field(g, grid, HalfPlane::Upper, s.engine, {}, Exec::Parallel);
  s.check("parity mu_field serial == parallel (bitwise)", f_serial.values == f_par.values,
          "disjoint writes, deterministic levels");

  const IntervalFamily fam = IntervalFamily::dyadic(g);
  s.check("parity bmo serial == parallel (bitwise)",
          bmo_norm(g, fam, Exec::Serial) == bmo_norm(g, fam, Exec::Parallel),
          "fixed-order interval reduction");
}

void derivative_checks(Suite& s) {
  const SampledFunction u = fix_sin();
  const Curve c = gamma(u, true);
  double worst = 0.0;
  for (double x : {-1.0, 0.5})
    for (double y : {0.3, 1.1}) {
      const Partials p = partials(u, x, y);
      // the curve is normalized, so scale the kernel partials the same way
      const cplx scale = 1.0 / c.normalization();
      const double hx = 1e-4 * y;
      const cplx fx = (extend_at(c, x + hx, y, HalfPlane::Upper) -
                       extend_at(c, x - hx, y, HalfPlane::Upper)) /
                      (2.0 * hx);
      const cplx fy = (extend_at(c, x, y + hx, HalfPlane::Upper) -
                       extend_at(c, x, y - hx, HalfPlane::Upper)) /
                      (2.0 * hx);
      const cplx fz_fd = 0.5 * (fx - cplx(0, 1) * fy);
      const cplx fzb_fd = 0.5 * (fx + cplx(0, 1) * fy);
      const cplx fz_k = p.fz() * scale;
      const cplx fzb_k = p.fzbar() * scale;
      if (std::abs(fz_k) > 1e-3) {
        worst = std::max(worst, std::abs(fz_fd - fz_k) / std::abs(fz_k));
        worst = std::max(worst, std::abs(fzb_fd - fzb_k) / std::abs(fz_k));
      }
    }
  s.check_le("kernel F_z, F_zbar vs finite differences", worst, 1e-4);
}

}  // namespace

std::vector<CheckResult> run_verify(Engine engine, Exec exec) {
  Suite s{{}, engine, exec};
  kernel_checks(s);
  identity_checks(s);
  equivariance_checks(s);
  positivity_checks(s);
  funcspace_checks(s);
  circle_checks(s);
  engine_agreement_checks(s);
  parity_checks(s);
  derivative_checks(s);
  return s.results;
}

}  // namespace heatba
