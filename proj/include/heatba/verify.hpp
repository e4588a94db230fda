#pragma once

#include "heatba/circle.hpp"

namespace heatba {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// The invariant suite behind `heatba verify`: kernel identities, identity
/// fixtures, equivariance, positivity certificates, function-space
/// inequalities, circle transport, engine agreement, and serial/parallel
/// bitwise parity. Deterministic; every check is pass/fail.
std::vector<CheckResult> run_verify(Engine engine = Engine::Fft,
                                    Exec exec = Exec::Parallel);

}  // namespace heatba
