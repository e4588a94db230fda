#include <doctest.h>

#include <cmath>

#include "heatba/circle.hpp"
#include "oracles.hpp"

using namespace heatba;

namespace {

SampledFunction periodic_fn(const std::function<double(double)>& f, std::size_t n = 257) {
  return SampledFunction::from_function(
      [f](double x) { return cplx(f(x), 0.0); }, 0.0, 1.0, n, Extension::Periodic);
}

SampledFunction cos_fixture(double amp = 0.1, std::size_t n = 257) {
  return periodic_fn([amp](double x) { return amp * std::cos(2.0 * kPi * x); }, n);
}

}  // namespace

TEST_CASE("lift") {
  auto z = periodic_fn([](double) { return 0.0; });
  const SampledFunction u0 = circle::lift(z);
  for (double x : {-3.2, 0.4, 7.9}) CHECK(std::abs(u0(x)) <= 1e-15);

  auto v = cos_fixture(1.0);
  const SampledFunction u = circle::lift(v);
  CHECK(u(0.25).real() == doctest::Approx(0.0).epsilon(1e-12));
  for (double x : {0.1, 0.7})
    CHECK(u(x + 1.0).real() == doctest::Approx(u(x).real()).epsilon(1e-12));

  auto nonper = SampledFunction::from_function(
      [](double x) { return cplx(x, 0.0); }, 0.0, 1.0, 65);
  CHECK_THROWS_AS(circle::lift(nonper), std::invalid_argument);
}

TEST_CASE("lift bmo comparison") {
  for (double amp : {0.1, 0.4}) {
    auto v = cos_fixture(amp, 513);
    const SampledFunction u = circle::lift(v);
    // the lift's BMO norm sees intervals across the seam: unroll one period
    auto unrolled = SampledFunction::from_function([&u](double x) { return u(x); }, -1.0,
                                                   2.0, 1537);
    const double cb = circle::circle_bmo(v);
    const double lb = bmo_norm(unrolled, IntervalFamily::dyadic(unrolled));
    CHECK(lb <= 3.0 * cb + 1e-6);
    CHECK(cb <= lb + 1e-6);
  }
}

TEST_CASE("circle besov norm") {
  auto cst = periodic_fn([](double) { return 0.7; });
  CHECK(circle::circle_besov_norm(cst, 2.0).value == doctest::Approx(0.0).epsilon(1e-12));

  // step on the circle diverges like the line case
  auto st = periodic_fn([](double x) { return (x > 0.25 && x < 0.75) ? 1.0 : 0.0; }, 2049);
  CHECK(circle::circle_besov_norm(st, 2.0).diverged);

  // single harmonic: the lattice sum telescopes to the Fejer value
  auto v = cos_fixture(0.1, 513);
  const BesovResult res = circle::circle_besov_norm(v, 2.0);
  REQUIRE(!res.diverged);
  CHECK(res.value == doctest::Approx(std::sqrt(0.005)).epsilon(1e-6));

  CHECK_THROWS_AS(circle::circle_besov_norm(v, 0.9), std::invalid_argument);
  auto line = SampledFunction::from_function([](double x) { return cplx(x, 0.0); }, 0.0,
                                             2.0, 65);
  CHECK_THROWS_AS(circle::circle_besov_norm(line, 2.0), std::invalid_argument);
}

TEST_CASE("strip periodicity of F") {
  auto v = cos_fixture(0.1, 513);
  const SampledFunction u = circle::lift(v);
  const Curve c = gamma(u, true);
  CHECK(std::abs(c.period_increment() - 1.0) <= 1e-12);
  double worst = 0.0;
  for (double x : {0.05, 0.33, 0.81})
    for (double y : {0.02, 0.08, 0.3}) {
      const cplx f0 = extend_at(c, x, y, HalfPlane::Upper);
      const cplx f1 = extend_at(c, x + 1.0, y, HalfPlane::Upper);
      worst = std::max(worst, std::abs(f1 - f0 - 1.0));
    }
  CHECK(worst <= 1e-9);
}

TEST_CASE("project disk") {
  const double r0 = 0.5;
  const double cut = std::log(1.0 / r0) / (2.0 * kPi);
  const FieldGrid strip{0.0, 1.0, 257, 1e-3, cut, 24};
  auto v = cos_fixture(0.1, 513);
  const SampledFunction u = circle::lift(v);
  const HalfPlaneField mu = mu_field(u, strip, HalfPlane::Upper, Engine::Fft);
  REQUIRE(mu.periodic_x);

  const circle::DiskField disk = circle::project_disk(mu, r0);
  CHECK(disk.ntheta() == 256);
  CHECK(disk.rings() == strip.ny);
  for (double r : disk.r) {
    CHECK(r > r0 * (1.0 - 1e-12));
    CHECK(r < 1.0);
  }
  // modulus transport is exact at grid points
  double worst = 0.0;
  for (std::size_t ring = 0; ring < disk.rings(); ++ring)
    for (std::size_t k = 0; k < disk.ntheta(); ++k)
      worst = std::max(worst,
                       std::abs(std::abs(disk.at(ring, k)) - std::abs(mu.at(ring, k))));
  CHECK(worst <= 1e-14);

  // periodicity in the strip coordinate: recompute from x in [1, 2]
  const FieldGrid strip2{1.0, 2.0, 257, 1e-3, cut, 24};
  const HalfPlaneField mu2 = mu_field(u, strip2, HalfPlane::Upper, Engine::Fft);
  double shift_err = 0.0;
  for (std::size_t k = 0; k < mu.values.size(); ++k)
    shift_err = std::max(shift_err, std::abs(mu.values[k] - mu2.values[k]));
  CHECK(shift_err <= 1e-8);

  // zero strip projects to the zero disk
  HalfPlaneField zero = mu;
  std::fill(zero.values.begin(), zero.values.end(), cplx{});
  const circle::DiskField zd = circle::project_disk(zero, r0);
  for (const cplx& nu : zd.nu) CHECK(std::abs(nu) == 0.0);

  // r0 range validation
  CHECK_THROWS_AS(circle::project_disk(mu, 0.04), ConfigError);
  CHECK_THROWS_AS(circle::project_disk(mu, 1.0), ConfigError);
  HalfPlaneField nonper = mu;
  nonper.periodic_x = false;
  CHECK_THROWS_AS(circle::project_disk(nonper, r0), std::invalid_argument);
}

TEST_CASE("disk p-norm") {
  // constant nu on the windowed annulus: closed-form radial integral
  const double r0 = 0.5;
  const double cut = std::log(1.0 / r0) / (2.0 * kPi);
  circle::DiskField disk;
  disk.r0 = r0;
  const std::size_t nt = 128, nr = 24;
  disk.theta.resize(nt);
  for (std::size_t k = 0; k < nt; ++k)
    disk.theta[k] = 2.0 * kPi * static_cast<double>(k) / nt;
  const double y_min = 1e-3;
  const cplx m{0.3, 0.0};
  for (std::size_t j = 0; j < nr; ++j) {
    const double y = y_min * std::pow(cut / y_min, static_cast<double>(j) / (nr - 1));
    disk.r.push_back(std::exp(-2.0 * kPi * y));
    for (std::size_t k = 0; k < nt; ++k) disk.nu.push_back(m);
  }
  disk.fill.assign(nt, m);

  const double r_max = disk.r.front();
  const double annulus =
      std::norm(m) * kPi * (1.0 / (1.0 - r_max * r_max) - 1.0 / (1.0 - r0 * r0));
  const double compact = kPi / std::pow(1.0 - r0 * r0, 2.0) * std::norm(m);
  CHECK(circle::disk_p_norm(disk, 2.0) ==
        doctest::Approx(std::sqrt(annulus + compact)).epsilon(1e-12));

  CHECK_THROWS_AS(circle::disk_p_norm(disk, 1.0), std::invalid_argument);
}

TEST_CASE("disk p-norm bounded by circle besov across amplitudes") {
  const double r0 = 0.5;
  const double cut = std::log(1.0 / r0) / (2.0 * kPi);
  const FieldGrid strip{0.0, 1.0, 257, 1e-3, cut, 24};
  double rmin = 1e300, rmax = 0.0;
  for (double amp : {0.05, 0.1, 0.2}) {
    auto v = cos_fixture(amp, 513);
    const SampledFunction u = circle::lift(v);
    const HalfPlaneField mu = mu_field(u, strip, HalfPlane::Upper, Engine::Fft);
    CHECK(sup_norm(mu) < 1.0);
    const circle::DiskField disk = circle::project_disk(mu, r0);
    const double dp = circle::disk_p_norm(disk, 2.0);
    const double cb = circle::circle_besov_norm(v, 2.0).value;
    CHECK(std::isfinite(dp));
    const double ratio = (dp * dp) / (cb * cb);
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
  }
  CHECK(rmax / rmin < 5.0);
}

TEST_CASE("disk carleson trend for a besov fixture") {
  // reuse the half-plane profile on the strip field
  const double cut = std::log(2.0) / (2.0 * kPi);
  const FieldGrid strip{0.0, 1.0, 513, 1e-4, cut, 48};
  auto v = cos_fixture(0.2, 513);
  const SampledFunction u = circle::lift(v);
  const HalfPlaneField mu = mu_field(u, strip, HalfPlane::Upper, Engine::Fft);
  const CarlesonProfile prof = carleson_profile(mu);
  REQUIRE(!prof.entries.empty());
  CHECK(prof.smallest_scale_max < prof.supremum);
}
