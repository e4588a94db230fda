#pragma once

#include "heatba/sampled_function.hpp"

namespace heatba {

// Closed-form kernels. phi is the heat kernel at fixed scale, psi = phi',
// phi2 = phi''; alpha and beta are the complex kernels with
// F_zbar = e^u * alpha_y and F_z = e^u * beta_y.
double phi(double x);
double psi(double x);
double phi2(double x);
cplx alpha(double x);
cplx beta(double x);

enum class Kernel { Phi, Psi, Phi2, Alpha, Beta, AlphaConj, BetaConj };

cplx kernel_eval(Kernel k, double x);

/// kernel_y(x) = y^{-1} kernel(x/y).
cplx kernel_scaled(Kernel k, double x, double y);

struct KernelSet {
  double truncation = 10.0;  // T, in units of y; window |x-t| <= T*y
  double decay_c = 1.0;      // |alpha|, |beta| <= decay_c * e^{-|x|}
  int density = 1;           // extra quadrature panels per unit of y (oracle knob)

  void validate() const;  // T >= 6, density >= 1
};

/// int kernel_y(x-t) w(t) dt by composite Gauss-Legendre panels at kernel
/// scale, truncated at |x-t| <= T*y. Throws for y <= 0; an evaluation window
/// that leaves the domain under the explicit-handle policy propagates the
/// domain error.
cplx convolve_at(const SampledFunction& w, Kernel k, double x, double y,
                 const KernelSet& ks = {});

/// Same quadrature against an arbitrary evaluator (used for curve integrals).
cplx convolve_eval(const std::function<cplx(double)>& w, Kernel k, double x,
                   double y, const KernelSet& ks = {});

/// Tensor grid {x_i} x {y_j}: uniform x nodes, geometric y levels.
struct FieldGrid {
  double x_min = -20.0, x_max = 20.0;
  std::size_t nx = 1024;
  double y_min = 1e-3, y_max = 1e2;
  std::size_t ny = 64;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double x(std::size_t i) const { return x_min + dx() * static_cast<double>(i); }
  double y(std::size_t j) const;
  double log_ratio() const;  // log(y_{j+1}/y_j)
  void validate() const;
};

enum class Engine { Direct, Fft };

/// Per-level discrete convolution of w with kernel_y over the grid.
/// Direct: kernel-scale quadrature at every node. Fft: sampled-kernel FFT
/// (zero-padded, or circular for periodic w), falling back to the direct
/// rule on levels with y < 2*dx where the sampled kernel is unresolved.
/// Row-major: values[j*nx + i].
std::vector<cplx> convolve_grid(const SampledFunction& w, Kernel k,
                                const FieldGrid& grid, Engine engine = Engine::Fft,
                                const KernelSet& ks = {}, Exec exec = Exec::Parallel);

/// One pass for several kernels against the same w (shared quadrature nodes
/// and FFT of the signal).
std::vector<std::vector<cplx>> convolve_grid_multi(const SampledFunction& w,
                                                   std::span<const Kernel> kernels,
                                                   const FieldGrid& grid,
                                                   Engine engine = Engine::Fft,
                                                   const KernelSet& ks = {},
                                                   Exec exec = Exec::Parallel);

}  // namespace heatba
