#pragma once

#include "heatba/interval_family.hpp"
#include "heatba/sampled_function.hpp"

namespace heatba {

/// The John-Nirenberg constants are never pinned numerically in the
/// literature we target; they are configuration and only gate the
/// neighborhood predicates.
struct NormConstants {
  double c_jn = 0.25;
  double c_0 = 2.0;
  double neighborhood_radius = 0.25 / 8.0;  // c_jn / (4q) at p = 2

  static double radius_for(double p, double c_jn = 0.25) {
    const double q = p / (p - 1.0);
    return c_jn / (4.0 * q);
  }
  void validate() const;
};

struct BesovResult {
  double value = 0.0;  // extrapolated norm; meaningless when diverged
  bool diverged = false;
  std::vector<double> refinements;  // the raw windowed sums S_0, S_1, S_2 (norm^p)
};

/// sup over the family of (1/|I|) int_I |u - u_I|; a lower bound of the
/// true supremum, nondecreasing under family refinement.
double bmo_norm(const SampledFunction& u, const IntervalFamily& family,
                Exec exec = Exec::Parallel);

/// Per-scale maxima of the mean oscillation, ascending in scale. The VMO
/// diagnostic is the smallest-scale entry.
std::vector<std::pair<double, double>> vmo_profile(const SampledFunction& u,
                                                   const IntervalFamily& family,
                                                   Exec exec = Exec::Parallel);

/// Windowed p-Besov seminorm (double integral over the sample window with
/// the diagonal band |t-s| < step excluded) with two Richardson refinements.
BesovResult besov_norm(const SampledFunction& u, double p, Exec exec = Exec::Parallel,
                       std::size_t base_nodes = 0);

double a2_constant(const SampledFunction& omega, const IntervalFamily& family,
                   Exec exec = Exec::Parallel);
double a_infty_constant(const SampledFunction& omega, const IntervalFamily& family,
                        Exec exec = Exec::Parallel);
double doubling_constant(const SampledFunction& omega, const IntervalFamily& family,
                         Exec exec = Exec::Parallel);

/// sup over the family of (1/|I|) int_I e^{|u - u_I|}.
double exp_oscillation(const SampledFunction& u, const IntervalFamily& family,
                       Exec exec = Exec::Parallel);

/// Pointwise clamp of a real-valued u to [-N, N].
SampledFunction truncate(const SampledFunction& u, double N);

/// Convolution with the compactly supported bump eta_eps.
SampledFunction mollify(const SampledFunction& u, double eps);

/// Normalizing constant c with int c*exp(1/(x^2-1)) dx = 1 on (-1,1).
double mollifier_constant();

struct NeighborhoodDistance {
  double value = 0.0;  // besov_norm(Im u, p)
  bool outside = false;  // imaginary part Besov-divergent
  bool within(const NormConstants& nc) const {
    return !outside && value < nc.neighborhood_radius;
  }
};

/// Besov distance from u to its own real part: besov_norm(Im u, p).
NeighborhoodDistance neighborhood_distance(const SampledFunction& u, double p,
                                           Exec exec = Exec::Parallel);

}  // namespace heatba
