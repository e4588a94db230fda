#include "heatba/run.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "heatba/verify.hpp"

namespace heatba {
namespace {

std::string command_name(Command c) {
  switch (c) {
    case Command::Extend: return "extend";
    case Command::Dilatation: return "dilatation";
    case Command::Norms: return "norms";
    case Command::Carleson: return "carleson";
    case Command::Circle: return "circle";
    case Command::Verify: return "verify";
    case Command::Gateaux: return "gateaux";
  }
  return "?";
}

bool needs_input(Command c) { return c != Command::Verify; }

std::string meta_string(const RunConfig& cfg) {
  const auto kv = cfg.canonical();
  std::ostringstream os;
  os << "config_hash=" << std::hex << io::config_hash(kv) << std::dec << " grid="
     << format_double(cfg.grid.x_min) << ':' << format_double(cfg.grid.x_max) << ':'
     << cfg.grid.nx << 'x' << format_double(cfg.grid.y_min) << ':'
     << format_double(cfg.grid.y_max) << ':' << cfg.grid.ny;
  return os.str();
}

int run_extend(const RunConfig& cfg) {
  const SampledFunction u = io::load_sampled_csv(cfg.input, cfg.policy);
  const HalfPlane hp = cfg.lower_half_plane ? HalfPlane::Lower : HalfPlane::Upper;
  const HalfPlaneField f = extend(u, cfg.grid, hp, cfg.engine, cfg.kernels, Exec::Parallel,
                                  cfg.normalize);
  io::save_field_csv(cfg.out_dir / "field_F.csv", f, meta_string(cfg));
  return kExitOk;
}

int run_dilatation(const RunConfig& cfg) {
  const SampledFunction u = io::load_sampled_csv(cfg.input, cfg.policy);
  const HalfPlane hp = cfg.lower_half_plane ? HalfPlane::Lower : HalfPlane::Upper;
  const HalfPlaneField mu = mu_field(u, cfg.grid, hp, cfg.engine, cfg.kernels);
  const DiagnosticsReport rep = diagnostics(u, mu, cfg.p, cfg.engine, cfg.kernels);
  const std::string meta = meta_string(cfg);
  io::save_field_csv(cfg.out_dir / "field_mu.csv", mu, meta);
  io::save_report_txt(cfg.out_dir / "report.txt", rep, meta);
  io::save_report_csv(cfg.out_dir / "report.csv", rep, meta);
  io::save_profile_csv(cfg.out_dir / "vanishing.csv", rep.vanishing, meta);
  return kExitOk;
}

int run_norms(const RunConfig& cfg) {
  const SampledFunction u = io::load_sampled_csv(cfg.input, cfg.policy);
  const IntervalFamily family = IntervalFamily::dyadic(u);
  std::vector<std::pair<std::string, std::string>> kv;
  const double bmo = bmo_norm(u, family);
  kv.emplace_back("bmo", format_double(bmo));
  const BesovResult bes = besov_norm(u, cfg.p);
  kv.emplace_back("p", format_double(cfg.p));
  kv.emplace_back("besov", bes.diverged ? "divergent" : format_double(bes.value));
  kv.emplace_back("besov_diverged", bes.diverged ? "1" : "0");
  kv.emplace_back("exp_oscillation", format_double(exp_oscillation(u, family)));
  if (u.is_real()) {
    const SampledFunction w = u.weight();
    kv.emplace_back("a2", format_double(a2_constant(w, family)));
    kv.emplace_back("a_infty", format_double(a_infty_constant(w, family)));
    kv.emplace_back("doubling", format_double(doubling_constant(w, family)));
  } else {
    const NeighborhoodDistance nd = neighborhood_distance(u, cfg.p);
    kv.emplace_back("neighborhood_distance",
                    nd.outside ? "outside" : format_double(nd.value));
    kv.emplace_back("in_neighborhood", nd.within(cfg.constants) ? "1" : "0");
  }
  if (bmo < cfg.constants.c_jn) {
    // the John-Nirenberg exponential bound; reported, never asserted
    kv.emplace_back("jn_bound",
                    format_double(cfg.constants.c_0 * bmo / (cfg.constants.c_jn - bmo) + 1.0));
  }
  const std::string meta = meta_string(cfg);
  io::save_keyvalue_txt(cfg.out_dir / "norms.txt", kv, meta);
  io::save_keyvalue_csv(cfg.out_dir / "norms.csv", kv, meta);
  return kExitOk;
}

int run_carleson(const RunConfig& cfg) {
  const SampledFunction u = io::load_sampled_csv(cfg.input, cfg.policy);
  const HalfPlane hp = cfg.lower_half_plane ? HalfPlane::Lower : HalfPlane::Upper;
  const HalfPlaneField mu = mu_field(u, cfg.grid, hp, cfg.engine, cfg.kernels);
  const CarlesonProfile prof = carleson_profile(mu);
  const std::string meta = meta_string(cfg);
  io::save_carleson_csv(cfg.out_dir / "carleson.csv", prof, meta);
  io::save_profile_csv(cfg.out_dir / "vanishing.csv", vanishing_profile(mu), meta);
  return kExitOk;
}

int run_circle(const RunConfig& cfg) {
  const SampledFunction v = io::load_sampled_csv(cfg.input, Extension::Periodic);
  const SampledFunction u = circle::lift(v);
  const double cut = std::log(1.0 / cfg.r0) / (2.0 * kPi);
  FieldGrid strip = cfg.grid;
  strip.x_min = 0.0;
  strip.x_max = 1.0;
  strip.y_max = cut;
  strip.y_min = std::min(cfg.grid.y_min, cut / 64.0);
  // angular nodes must be a power of two
  std::size_t nt = 1;
  while (nt * 2 <= strip.nx - 1) nt *= 2;
  strip.nx = nt + 1;

  const HalfPlaneField mu = mu_field(u, strip, HalfPlane::Upper, cfg.engine, cfg.kernels);
  const circle::DiskField disk = circle::project_disk(mu, cfg.r0);
  const std::string meta = meta_string(cfg);
  io::save_disk_csv(cfg.out_dir / "disk.csv", disk, meta);

  std::vector<std::pair<std::string, std::string>> kv;
  const BesovResult cb = circle::circle_besov_norm(v, cfg.p);
  kv.emplace_back("p", format_double(cfg.p));
  kv.emplace_back("circle_besov", cb.diverged ? "divergent" : format_double(cb.value));
  kv.emplace_back("circle_bmo", format_double(circle::circle_bmo(v)));
  kv.emplace_back("lift_bmo", format_double(bmo_norm(u, IntervalFamily::dyadic(u))));
  kv.emplace_back("disk_p_norm", format_double(circle::disk_p_norm(disk, cfg.p)));
  kv.emplace_back("sup_nu", format_double(sup_norm(mu)));
  kv.emplace_back("r0", format_double(cfg.r0));
  io::save_keyvalue_txt(cfg.out_dir / "circle.txt", kv, meta);
  io::save_keyvalue_csv(cfg.out_dir / "circle.csv", kv, meta);
  return kExitOk;
}

int run_gateaux(const RunConfig& cfg) {
  const SampledFunction u = io::load_sampled_csv(cfg.input, cfg.policy);
  const SampledFunction v = io::load_sampled_csv(cfg.direction, cfg.policy);
  const auto rows = gateaux_check(u, v, cfg.gateaux_steps, cfg.grid, cfg.p, cfg.engine,
                                  cfg.kernels);
  io::save_gateaux_csv(cfg.out_dir / "gateaux.csv", rows, meta_string(cfg));
  return kExitOk;
}

int run_verify_cmd(const RunConfig& cfg) {
  const auto results = run_verify(cfg.engine, Exec::Parallel);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s (%s)\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.detail.c_str());
    all = all && r.pass;
  }
  std::printf("%zu checks, %s\n", results.size(), all ? "all passed" : "FAILURES");
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

void RunConfig::validate() const {
  if (grid.nx < 8 || grid.ny < 8) throw ConfigError("grid needs nx >= 8 and ny >= 8");
  grid.validate();
  kernels.validate();
  constants.validate();
  if (!(p > 1.0)) throw ConfigError("p must exceed 1");
  if (!(r0 > circle::kR0Lower && r0 < 1.0))
    throw ConfigError("r0 must lie in (e^{-pi}, 1)");
  if (needs_input(command) && !std::filesystem::exists(input))
    throw ConfigError("input path does not exist: " + input.string());
  if (command == Command::Gateaux) {
    if (!std::filesystem::exists(direction))
      throw ConfigError("direction path does not exist: " + direction.string());
    if (gateaux_steps.size() < 2) throw ConfigError("gateaux needs at least two steps");
  }
  if (!std::filesystem::exists(out_dir))
    throw ConfigError("output directory does not exist: " + out_dir.string());
}

std::map<std::string, std::string> RunConfig::canonical() const {
  std::map<std::string, std::string> kv;
  kv["command"] = command_name(command);
  kv["input"] = input.string();
  if (!direction.empty()) kv["direction"] = direction.string();
  kv["p"] = format_double(p);
  kv["x_min"] = format_double(grid.x_min);
  kv["x_max"] = format_double(grid.x_max);
  kv["nx"] = std::to_string(grid.nx);
  kv["y_min"] = format_double(grid.y_min);
  kv["y_max"] = format_double(grid.y_max);
  kv["ny"] = std::to_string(grid.ny);
  kv["kernel_T"] = format_double(kernels.truncation);
  kv["kernel_density"] = std::to_string(kernels.density);
  kv["c_jn"] = format_double(constants.c_jn);
  kv["c_0"] = format_double(constants.c_0);
  kv["neighborhood_radius"] = format_double(constants.neighborhood_radius);
  kv["r0"] = format_double(r0);
  kv["engine"] = engine == Engine::Fft ? "fft" : "direct";
  kv["policy"] = policy == Extension::Periodic ? "periodic" : "constant";
  kv["half_plane"] = lower_half_plane ? "lower" : "upper";
  kv["normalize"] = normalize ? "1" : "0";
  return kv;
}

int run(const RunConfig& config) {
  config.validate();
  switch (config.command) {
    case Command::Extend: return run_extend(config);
    case Command::Dilatation: return run_dilatation(config);
    case Command::Norms: return run_norms(config);
    case Command::Carleson: return run_carleson(config);
    case Command::Circle: return run_circle(config);
    case Command::Verify: return run_verify_cmd(config);
    case Command::Gateaux: return run_gateaux(config);
  }
  throw ConfigError("unknown command");
}

}  // namespace heatba
