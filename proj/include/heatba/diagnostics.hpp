#pragma once

#include <optional>

#include "heatba/extension.hpp"
#include "heatba/funcspace.hpp"

namespace heatba {

struct VanishingEntry {
  double t = 0.0;    // height threshold
  double sup = 0.0;  // sup_{y <= t} |mu| over the grid
};

struct DiagnosticsReport {
  double sup_norm = 0.0;
  double p = 2.0;
  double p_norm = 0.0;
  std::optional<double> k_dilatation;  // empty = not quasiconformal
  std::optional<double> bilip_min, bilip_max;
  std::optional<double> carleson_sup;
  std::vector<VanishingEntry> vanishing;
  bool in_m = false;   // sup_norm < 1
  bool in_m0 = false;  // heuristic: smallest-t entry < 0.1 * sup (reported, not asserted)
  bool in_mp = false;  // in_m and p_norm finite

  std::vector<std::pair<std::string, std::string>> entries() const;
};

double sup_norm(const HalfPlaneField& field);

/// (iint |mu|^p dx dy / y^2)^{1/p} over the grid window, trapezoid in x and
/// measure-weighted trapezoid across levels (exact for level-constant fields).
double hyperbolic_p_norm(const HalfPlaneField& field, double p,
                         Exec exec = Exec::Parallel);

struct CarlesonEntry {
  double center = 0.0;
  double half = 0.0;  // |I| = 2 * half
  double measure = 0.0;
};

struct CarlesonProfile {
  std::vector<CarlesonEntry> entries;
  double supremum = 0.0;
  double smallest_scale_max = 0.0;    // max of the entries at the smallest scale
  std::size_t skipped_boxes = 0;      // boxes the grid could not cover
};

/// Box measures (1/|I|) int_{y_min}^{min(|I|, y_max)} int_I |mu|^2/y dx dy
/// over a dyadic family of grid-aligned intervals.
CarlesonProfile carleson_profile(const HalfPlaneField& field,
                                 Exec exec = Exec::Parallel);

/// Unnormalized box integral int_{y_min}^{height} int_{x_lo}^{x_hi} |mu|^2/y,
/// grid-aligned x bounds; additive under disjoint x-union at fixed height.
double carleson_box_integral(const HalfPlaneField& field, double x_lo, double x_hi,
                             double height);

/// Running suprema (t_j, sup_{y <= t_j} |mu|) from the smallest level up.
std::vector<VanishingEntry> vanishing_profile(const HalfPlaneField& field);

/// K = (1 + sup)/(1 - sup) when sup < 1; empty otherwise ("not qc").
std::optional<double> maximal_dilatation(const HalfPlaneField& field);
std::optional<double> maximal_dilatation(double sup);

/// Range over the grid of r(x,y) = y |F_z| / Im F for real-valued u.
/// Throws when Im F <= 0 somewhere (not a self-map of the half-plane).
std::pair<double, double> bilipschitz_ratio(const SampledFunction& u,
                                            const FieldGrid& grid,
                                            Engine engine = Engine::Fft,
                                            const KernelSet& ks = {},
                                            Exec exec = Exec::Parallel);

struct GateauxRow {
  double h = 0.0;         // larger step of the pair
  double diff_sup = 0.0;  // ||D_h - D_{h/2}||_sup
  double diff_p = 0.0;    // same in the hyperbolic p-norm
  double ratio_sup = 0.0; // previous diff / this diff (0 for the first row)
  double ratio_p = 0.0;
};

/// Symmetric-difference fields D_h = (Lambda(u+hv) - Lambda(u-hv)) / (2h)
/// for each step; rows tabulate successive differences. Holomorphy of
/// t -> Lambda(u + tv) shows up as ratios near 4 when steps halve.
std::vector<GateauxRow> gateaux_check(const SampledFunction& u,
                                      const SampledFunction& v,
                                      std::span<const double> steps,
                                      const FieldGrid& grid, double p = 2.0,
                                      Engine engine = Engine::Fft,
                                      const KernelSet& ks = {},
                                      Exec exec = Exec::Parallel);

/// Assemble the full report for a mu-field (bilipschitz range only for real u).
DiagnosticsReport diagnostics(const SampledFunction& u, const HalfPlaneField& mu,
                              double p, Engine engine = Engine::Fft,
                              const KernelSet& ks = {}, Exec exec = Exec::Parallel);

}  // namespace heatba
