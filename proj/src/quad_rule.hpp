#pragma once

#include <memory>

#include "heatba/kernels.hpp"

// Composite Gauss-Legendre panel rules in kernel coordinates (s = (x-t)/y),
// symmetric about 0, plus cached kernel-value tables. Shared by the direct
// convolution engine and the curve extension.
namespace heatba::quadrule {

struct Rule {
  std::vector<double> s;  // nodes, ascending, symmetric
  std::vector<double> w;  // GL weights
  std::size_t panel = 12; // nodes per panel (block size for pairwise sums)
};

/// Panels per unit of s for the given level height.
int panels_per_unit(double y, const KernelSet& ks);

std::shared_ptr<const Rule> rule_for(double truncation, int per_unit);

/// table[i] = kernel(s_i) * w_i.
std::shared_ptr<const std::vector<cplx>> table_for(Kernel k, double truncation,
                                                   int per_unit);

/// Deterministic blocked sum: per-panel accumulation then fixed pairwise.
template <class TermFn>
cplx panel_sum(const Rule& rule, TermFn&& term) {
  const std::size_t n = rule.s.size();
  const std::size_t blocks = (n + rule.panel - 1) / rule.panel;
  thread_local std::vector<cplx> block_vals;
  block_vals.assign(blocks, cplx{});
  for (std::size_t b = 0; b < blocks; ++b) {
    cplx acc{};
    const std::size_t hi = std::min(n, (b + 1) * rule.panel);
    for (std::size_t i = b * rule.panel; i < hi; ++i) acc += term(i);
    block_vals[b] = acc;
  }
  return pairwise_sum(std::span<const cplx>(block_vals));
}

}  // namespace heatba::quadrule
