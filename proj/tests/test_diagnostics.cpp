#include <doctest.h>

#include <cmath>

#include "heatba/diagnostics.hpp"

using namespace heatba;

namespace {

HalfPlaneField synthetic(const FieldGrid& grid, const std::function<cplx(double, double)>& f,
                         FieldContent content = FieldContent::Mu) {
  HalfPlaneField out;
  out.grid = grid;
  out.content = content;
  out.values.resize(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i)
      out.values[j * grid.nx + i] = f(grid.x(i), grid.y(j));
  return out;
}

SampledFunction make(const std::function<cplx(double)>& f, double a, double b,
                     std::size_t n) {
  return SampledFunction::from_function(f, a, b, n);
}

}  // namespace

TEST_CASE("sup norm and maximal dilatation") {
  const FieldGrid grid{0.0, 1.0, 33, 0.1, 1.0, 9};
  auto zero = synthetic(grid, [](double, double) { return cplx(0.0, 0.0); });
  CHECK(sup_norm(zero) == 0.0);
  CHECK(*maximal_dilatation(zero) == doctest::Approx(1.0));

  auto third = synthetic(grid, [](double, double) { return cplx(1.0 / 3.0, 0.0); });
  CHECK(sup_norm(third) == doctest::Approx(1.0 / 3.0));
  CHECK(*maximal_dilatation(third) == doctest::Approx(2.0).epsilon(1e-12));

  auto big = synthetic(grid, [](double, double) { return cplx(1.0, 0.0); });
  CHECK(!maximal_dilatation(big).has_value());  // "not qc"

  HalfPlaneField empty;
  empty.content = FieldContent::Mu;
  CHECK_THROWS_AS(sup_norm(empty), std::invalid_argument);
}

TEST_CASE("hyperbolic p-norm") {
  const FieldGrid grid{0.0, 1.0, 65, 0.25, 4.0, 33};
  auto zero = synthetic(grid, [](double, double) { return cplx(0.0, 0.0); });
  CHECK(hyperbolic_p_norm(zero, 2.0) == 0.0);

  // constant field on [0,1] x [a,b]: |m|^p (1/a - 1/b), exact for the
  // measure-weighted trapezoid
  const cplx m{0.2, 0.1};
  auto cf = synthetic(grid, [m](double, double) { return m; });
  const double expect = std::pow(std::norm(m), 1.0) * (1.0 / 0.25 - 1.0 / 4.0);
  CHECK(hyperbolic_p_norm(cf, 2.0) == doctest::Approx(std::sqrt(expect)).epsilon(1e-12));

  CHECK_THROWS_AS(hyperbolic_p_norm(cf, 1.0), std::invalid_argument);

  // refinement oracle on a smooth synthetic field
  const auto bump = [](double x, double y) {
    return cplx(0.3 * std::exp(-x * x) * y / (1.0 + y * y), 0.0);
  };
  const FieldGrid coarse{-6.0, 6.0, 257, 0.01, 8.0, 48};
  const FieldGrid fine{-6.0, 6.0, 513, 0.01, 8.0, 96};
  const double v0 = hyperbolic_p_norm(synthetic(coarse, bump), 2.0);
  const double v1 = hyperbolic_p_norm(synthetic(fine, bump), 2.0);
  CHECK(v0 == doctest::Approx(v1).epsilon(2e-3));
}

TEST_CASE("carleson profile") {
  const FieldGrid grid{0.0, 4.0, 257, 1e-4, 2.0, 257};
  auto zero = synthetic(grid, [](double, double) { return cplx(0.0, 0.0); });
  const CarlesonProfile zp = carleson_profile(zero);
  CHECK(zp.supremum == 0.0);
  for (const auto& e : zp.entries) CHECK(e.measure == 0.0);

  // mu = y below height 1: box measure (|I|^2 - y_min^2) / 2 for |I| <= 1
  auto ramp = synthetic(grid, [](double, double y) { return cplx(y < 1.0 ? y : 0.0, 0.0); });
  const CarlesonProfile rp = carleson_profile(ramp);
  REQUIRE(!rp.entries.empty());
  for (const auto& e : rp.entries) {
    const double len = 2.0 * e.half;
    if (len > 1.0) continue;
    const double expect = 0.5 * (len * len - grid.y_min * grid.y_min);
    CHECK(e.measure == doctest::Approx(expect).epsilon(2e-3));
  }

  // boxes the grid cannot reach are skipped, not faked
  const FieldGrid shallow{0.0, 4.0, 257, 0.5, 2.0, 17};
  auto s = synthetic(shallow, [](double, double) { return cplx(0.1, 0.0); });
  const CarlesonProfile sp = carleson_profile(s);
  CHECK(sp.skipped_boxes > 0);
}

TEST_CASE("carleson box additivity") {
  const FieldGrid grid{0.0, 4.0, 129, 0.01, 2.0, 33};
  auto f = synthetic(grid, [](double x, double y) {
    return cplx(0.2 * std::sin(x) / (1.0 + y), 0.05 * x);
  });
  const double h = 0.75;
  const double a = grid.x(8), m = grid.x(40), b = grid.x(96);
  const double left = carleson_box_integral(f, a, m, h);
  const double right = carleson_box_integral(f, m, b, h);
  const double whole = carleson_box_integral(f, a, b, h);
  CHECK(whole == doctest::Approx(left + right).epsilon(1e-14));
}

TEST_CASE("vanishing profile") {
  const FieldGrid grid{0.0, 1.0, 33, 0.01, 1.0, 17};
  auto zero = synthetic(grid, [](double, double) { return cplx(0.0, 0.0); });
  for (const auto& e : vanishing_profile(zero)) CHECK(e.sup == 0.0);

  auto cf = synthetic(grid, [](double, double) { return cplx(0.3, 0.0); });
  const auto prof = vanishing_profile(cf);
  for (const auto& e : prof) CHECK(e.sup == doctest::Approx(0.3));

  // running sup is nondecreasing in t; decays toward the boundary for a
  // field that vanishes there
  auto dec = synthetic(grid, [](double x, double y) {
    return cplx(y * std::exp(-x * x), 0.0);
  });
  const auto dp = vanishing_profile(dec);
  for (std::size_t j = 1; j < dp.size(); ++j) CHECK(dp[j].sup >= dp[j - 1].sup);
  CHECK(dp.front().sup < 0.1 * dp.back().sup);
}

TEST_CASE("bilipschitz ratio") {
  const FieldGrid grid{-12.0, 12.0, 513, 1e-3, 10.0, 48};
  auto zero = make([](double) { return cplx(0.0, 0.0); }, -20.48, 20.48, 257);
  auto [lo0, hi0] = bilipschitz_ratio(zero, grid);
  CHECK(lo0 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hi0 == doctest::Approx(1.0).epsilon(1e-9));

  auto cc = make([](double) { return cplx(1.4, 0.0); }, -20.48, 20.48, 257);
  auto [loc, hic] = bilipschitz_ratio(cc, grid);
  CHECK(loc == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(hic == doctest::Approx(1.0).epsilon(1e-9));

  auto s = make([](double x) { return cplx(0.2 * std::sin(x), 0.0); }, -20.48, 20.48,
                2049);
  auto [los, his] = bilipschitz_ratio(s, grid);
  CHECK(los > 0.0);
  CHECK(los == doctest::Approx(0.931137044727).epsilon(1e-5));   // regression
  CHECK(his == doctest::Approx(1.07757118984).epsilon(1e-5));    // regression

  auto cfix = make([](double x) { return cplx(0.0, x); }, -1, 1, 65);
  CHECK_THROWS_AS(bilipschitz_ratio(cfix, grid), std::invalid_argument);
}

TEST_CASE("gateaux check") {
  const FieldGrid grid{-10.0, 10.0, 257, 0.02, 5.0, 16};
  auto u0 = make([](double) { return cplx(0.0, 0.0); }, -20.48, 20.48, 2049);
  auto vz = make([](double) { return cplx(0.0, 0.0); }, -20.48, 20.48, 2049);
  const double steps[3] = {1e-2, 5e-3, 2.5e-3};
  const auto zero_rows = gateaux_check(u0, vz, std::span<const double>(steps, 3), grid);
  for (const auto& r : zero_rows) {
    CHECK(r.diff_sup == 0.0);
    CHECK(r.diff_p == 0.0);
  }

  auto vsin = make([](double x) { return cplx(std::sin(x), 0.0); }, -20.48, 20.48, 2049);
  const double steps4[4] = {2e-2, 1e-2, 5e-3, 2.5e-3};
  const auto rows = gateaux_check(u0, vsin, std::span<const double>(steps4, 4), grid);
  REQUIRE(rows.size() == 3);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].ratio_sup == doctest::Approx(4.0).epsilon(0.125));
    CHECK(rows[k].ratio_p == doctest::Approx(4.0).epsilon(0.125));
  }

  // complex direction from a nonzero base point: finite limit field
  auto u1 = make([](double x) { return cplx(0.1 * std::sin(x), 0.0); }, -20.48, 20.48,
                 2049);
  auto vig = make([](double x) { return cplx(0.0, std::exp(-x * x)); }, -20.48, 20.48,
                  2049);
  const auto crows = gateaux_check(u1, vig, std::span<const double>(steps4, 4), grid);
  for (const auto& r : crows) {
    CHECK(std::isfinite(r.diff_sup));
    CHECK(std::isfinite(r.diff_p));
  }
  CHECK(crows.back().ratio_sup == doctest::Approx(4.0).epsilon(0.125));

  CHECK_THROWS_AS(gateaux_check(u0, vsin, std::span<const double>(steps, 1), grid),
                  std::invalid_argument);
}

TEST_CASE("report assembly and invariants") {
  const FieldGrid grid{-10.0, 10.0, 257, 1e-3, 8.0, 32};
  auto u = make([](double x) { return cplx(0.2 * std::exp(-x * x), 0.0); }, -16.0, 16.0,
                2049);
  const HalfPlaneField mu = mu_field(u, grid, HalfPlane::Upper, Engine::Fft);
  const DiagnosticsReport rep = diagnostics(u, mu, 2.0, Engine::Fft);
  CHECK(rep.sup_norm < 1.0);
  CHECK(rep.in_m);
  CHECK(rep.in_mp);
  CHECK(*rep.k_dilatation >= 1.0);
  CHECK(rep.in_m0);  // Besov fixture vanishes at the boundary
  CHECK(std::isfinite(rep.p_norm));
  REQUIRE(rep.bilip_min.has_value());
  CHECK(*rep.bilip_min > 0.0);
  CHECK(*rep.bilip_max >= *rep.bilip_min);
  // in_mp implies in_m by construction; serialize round-trips keys
  const auto kv = rep.entries();
  CHECK(kv.front().first == "sup_norm");
  bool saw_k = false;
  for (const auto& [k, v] : kv)
    if (k == "K") {
      saw_k = true;
      CHECK(v != "not_qc");
    }
  CHECK(saw_k);
}

TEST_CASE("prop 4.1 family stays bounded") {
  const FieldGrid grid{-10.0, 10.0, 257, 1e-2, 8.0, 24};
  NormConstants nc;
  double worst = 0.0;
  std::vector<SampledFunction> family;
  family.push_back(make([](double x) { return cplx(0.05 * std::sin(x), 0.0); }, -20.48,
                        20.48, 2049));
  family.push_back(make(
      [](double x) { return cplx(0.05 * std::sin(x), 0.01 * std::exp(-x * x)); }, -20.48,
      20.48, 2049));
  family.push_back(make([](double x) { return cplx(0.1 * std::exp(-x * x), 0.0); },
                        -20.48, 20.48, 2049));
  for (const auto& u : family) {
    const NeighborhoodDistance nd = neighborhood_distance(u, 2.0);
    REQUIRE(!nd.outside);
    CHECK(nd.value < nc.neighborhood_radius);
    const HalfPlaneField mu = mu_field(u, grid, HalfPlane::Upper, Engine::Fft);
    const double total = sup_norm(mu) + hyperbolic_p_norm(mu, 2.0);
    CHECK(std::isfinite(total));
    worst = std::max(worst, total);
  }
  CHECK(worst <= 5.0);  // fitted bound; observed ~ 0.3
}

TEST_CASE("lemma 4.2 ratio bounded across the gaussian family") {
  const FieldGrid grid{-16.0, 16.0, 257, 1e-3, 10.0, 32};
  double rmin = 1e300, rmax = 0.0;
  for (double s : {0.05, 0.1, 0.2, 0.4}) {
    auto u = make([s](double x) { return cplx(s * std::exp(-x * x), 0.0); }, -16.0, 16.0,
                  1025);
    const HalfPlaneField mu = mu_field(u, grid, HalfPlane::Upper, Engine::Fft);
    const double pn = hyperbolic_p_norm(mu, 2.0);
    const double bn = besov_norm(u, 2.0).value;
    const double ratio = (pn * pn) / (bn * bn);
    CHECK(std::isfinite(ratio));
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  CHECK(rmax / rmin < 5.0);
}
