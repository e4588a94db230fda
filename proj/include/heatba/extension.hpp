#pragma once

#include "heatba/kernels.hpp"

namespace heatba {

/// gamma_u as cumulative nodal values with piecewise-linear interpolation,
/// linear rays outside the domain (slope e^{u(end)}), and quasi-periodic
/// continuation for periodic u: gamma(x + P) = gamma(x) + gamma_P.
class Curve {
 public:
  cplx operator()(double x) const;

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double step() const { return step_; }
  std::span<const cplx> nodes() const { return nodes_; }
  bool normalized() const { return normalized_; }
  cplx normalization() const { return m_; }  // int_0^1 e^u (pre-normalization)
  bool periodic() const { return periodic_; }
  cplx period_increment() const { return period_increment_; }
  cplx slope_left() const { return slope_left_; }
  cplx slope_right() const { return slope_right_; }

 private:
  friend Curve gamma(const SampledFunction&, bool, cplx);

  std::vector<cplx> nodes_;
  double x_min_ = 0, x_max_ = 0, step_ = 0;
  cplx slope_left_, slope_right_;
  bool normalized_ = false;
  cplx m_{1.0, 0.0};
  bool periodic_ = false;
  double period_ = 0.0;
  cplx period_increment_;
};

/// Cumulative trapezoidal integral of e^u anchored at gamma(0) = base.
/// With normalize set, gamma(0) = 0 and gamma(1) = 1 (requires [0,1] inside
/// the domain; |int_0^1 e^u| below 1e-10 is a degenerate normalization).
Curve gamma(const SampledFunction& u, bool normalize = true, cplx base = 0.0);

enum class HalfPlane { Upper, Lower };
enum class FieldContent { F, Mu, DerivativeTuple };

/// Complex values on a tensor grid over the upper or lower half-plane.
/// y levels are stored positive; for half_plane == Lower the value at
/// (i, j) belongs to the point (x_i, -y_j).
struct HalfPlaneField {
  FieldGrid grid;
  HalfPlane half_plane = HalfPlane::Upper;
  FieldContent content = FieldContent::F;
  bool periodic_x = false;
  std::vector<cplx> values;  // row-major [j * nx + i]

  cplx& at(std::size_t j, std::size_t i) { return values[j * grid.nx + i]; }
  cplx at(std::size_t j, std::size_t i) const { return values[j * grid.nx + i]; }
  std::size_t nx() const { return grid.nx; }
  std::size_t ny() const { return grid.ny; }
};

/// F = U + iV on the upper half-plane, or U(x,-y) - iV(x,-y) on the lower.
HalfPlaneField extend(const SampledFunction& u, const FieldGrid& grid,
                      HalfPlane hp = HalfPlane::Upper, Engine engine = Engine::Fft,
                      const KernelSet& ks = {}, Exec exec = Exec::Parallel,
                      bool normalize = true);

/// F at a single point (the direct quadrature route).
cplx extend_at(const Curve& curve, double x, double y, HalfPlane hp,
               const KernelSet& ks = {});

struct Partials {
  cplx ux, uy, vx, vy;
  cplx fz() const { return 0.5 * (ux + vy) + cplx(0, 0.5) * (vx - uy); }
  cplx fzbar() const { return 0.5 * (ux - vy) + cplx(0, 0.5) * (uy + vx); }
  cplx jacobian() const { return fz() * std::conj(fz()) - fzbar() * std::conj(fzbar()); }
};

/// (U_x, U_y, V_x, V_y) at (x, y), y > 0. U_y = V_x/2 and
/// V_y = U_x + (e^u * (phi'')_y)/2 hold by construction.
Partials partials(const SampledFunction& u, double x, double y,
                  const KernelSet& ks = {});

/// mu = (alpha_y * e^u)/(beta_y * e^u) at a point of the given half-plane
/// (y is the positive height). Throws NumericGuardError "degenerate
/// denominator" when |beta_y * e^u| <= 1e-12.
cplx mu_at(const SampledFunction& u, double x, double y,
           HalfPlane hp = HalfPlane::Upper, const KernelSet& ks = {});

inline constexpr double kDenominatorGuard = 1e-12;

HalfPlaneField mu_field(const SampledFunction& u, const FieldGrid& grid,
                        HalfPlane hp = HalfPlane::Upper, Engine engine = Engine::Fft,
                        const KernelSet& ks = {}, Exec exec = Exec::Parallel);

}  // namespace heatba
