#pragma once

#include <filesystem>

#include "heatba/io.hpp"

namespace heatba {

enum class Command { Extend, Dilatation, Norms, Carleson, Circle, Verify, Gateaux };

struct RunConfig {
  Command command = Command::Verify;
  std::filesystem::path input;      // driving-function fixture
  std::filesystem::path direction;  // second input for gateaux
  double p = 2.0;
  FieldGrid grid;
  KernelSet kernels;
  NormConstants constants;
  double r0 = 0.5;
  std::vector<double> gateaux_steps = {2e-2, 1e-2, 5e-3, 2.5e-3};
  std::filesystem::path out_dir = ".";
  Engine engine = Engine::Fft;
  Extension policy = Extension::ConstantExtend;
  bool lower_half_plane = false;
  bool normalize = true;

  void validate() const;  // throws ConfigError
  std::map<std::string, std::string> canonical() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumericGuard = 3;

/// Dispatch a validated config; returns a CLI exit code and writes the
/// command's artifact files under out_dir.
int run(const RunConfig& config);

}  // namespace heatba
