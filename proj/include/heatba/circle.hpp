#pragma once

#include "heatba/diagnostics.hpp"

namespace heatba::circle {

inline constexpr double kR0Lower = 0.04321391826377224;  // e^{-pi}

/// Periodicization of v (period 1): u(x) = v(frac(x)).
SampledFunction lift(const SampledFunction& v);

/// Windowed circle Besov seminorm with |e^{2pi ix} - e^{2pi iy}|^2 =
/// 4 sin^2(pi(x-y)), diagonal band excluded, Richardson-refined.
BesovResult circle_besov_norm(const SampledFunction& v, double p,
                              Exec exec = Exec::Parallel);

/// BMO over arcs (intervals of length <= 1) of a periodic function.
double circle_bmo(const SampledFunction& v, Exec exec = Exec::Parallel);

/// nu on the annulus r0 < |w| < 1 via w = e^{2pi iz}; |w| <= r0 is filled by
/// constant continuation of the innermost ring (the fill never enters the
/// p-norm, which bounds the compact part separately).
struct DiskField {
  std::vector<double> r;       // radial nodes in (r0, 1), descending ~ strip levels
  std::vector<double> theta;   // uniform angular nodes, power-of-two count
  std::vector<cplx> nu;        // row-major [ring * ntheta + k]
  double r0 = 0.5;
  std::vector<cplx> fill;      // innermost-ring values continued over |w| <= r0

  cplx at(std::size_t ring, std::size_t k) const { return nu[ring * theta.size() + k]; }
  std::size_t rings() const { return r.size(); }
  std::size_t ntheta() const { return theta.size(); }
};

/// The strip field must come from a 1-periodic u on x in [0,1] with y up to
/// c = (1/2pi) log(1/r0). r0 must lie in (e^{-pi}, 1).
DiskField project_disk(const HalfPlaneField& mu_strip, double r0 = 0.5);

/// iint_D |nu|^p / (1-|w|^2)^2 du dv, split at r0: the annulus through the
/// strip substitution (windowed at the grid's smallest height), the compact
/// part by the crude bound pi (1-r0^2)^{-2} sup|nu|^p.
double disk_p_norm(const DiskField& disk, double p, Exec exec = Exec::Parallel);

}  // namespace heatba::circle
