#include <CLI11.hpp>

#include <cstdio>

#include "heatba/run.hpp"

namespace {

using heatba::RunConfig;

void apply_config_file(RunConfig& cfg, const std::string& path) {
  const auto kv = heatba::io::parse_config_file(path);
  const auto get = [&kv](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  const auto num = [](const std::string& s, const char* key) {
    try {
      return std::stod(s);
    } catch (const std::exception&) {
      throw heatba::ConfigError(std::string("bad numeric config value for ") + key);
    }
  };
  if (auto* s = get("input")) cfg.input = *s;
  if (auto* s = get("direction")) cfg.direction = *s;
  if (auto* s = get("p")) cfg.p = num(*s, "p");
  if (auto* s = get("x_min")) cfg.grid.x_min = num(*s, "x_min");
  if (auto* s = get("x_max")) cfg.grid.x_max = num(*s, "x_max");
  if (auto* s = get("nx")) cfg.grid.nx = static_cast<std::size_t>(num(*s, "nx"));
  if (auto* s = get("y_min")) cfg.grid.y_min = num(*s, "y_min");
  if (auto* s = get("y_max")) cfg.grid.y_max = num(*s, "y_max");
  if (auto* s = get("ny")) cfg.grid.ny = static_cast<std::size_t>(num(*s, "ny"));
  if (auto* s = get("kernel_T")) cfg.kernels.truncation = num(*s, "kernel_T");
  if (auto* s = get("kernel_density"))
    cfg.kernels.density = static_cast<int>(num(*s, "kernel_density"));
  if (auto* s = get("c_jn")) cfg.constants.c_jn = num(*s, "c_jn");
  if (auto* s = get("c_0")) cfg.constants.c_0 = num(*s, "c_0");
  if (auto* s = get("neighborhood_radius"))
    cfg.constants.neighborhood_radius = num(*s, "neighborhood_radius");
  if (auto* s = get("r0")) cfg.r0 = num(*s, "r0");
  if (auto* s = get("out_dir")) cfg.out_dir = *s;
  if (auto* s = get("engine")) {
    if (*s == "fft")
      cfg.engine = heatba::Engine::Fft;
    else if (*s == "direct")
      cfg.engine = heatba::Engine::Direct;
    else
      throw heatba::ConfigError("engine must be fft or direct");
  }
  if (auto* s = get("policy")) {
    if (*s == "periodic")
      cfg.policy = heatba::Extension::Periodic;
    else if (*s == "constant")
      cfg.policy = heatba::Extension::ConstantExtend;
    else
      throw heatba::ConfigError("policy must be constant or periodic");
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace heatba;
  RunConfig cfg;
  std::string config_path, engine = "fft", policy = "constant", steps, dump_kernels;

  CLI::App app{"heat-kernel Beurling-Ahlfors extension toolkit"};
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path, "key=value config file (flags override)");
  app.add_option("--dump-kernels", dump_kernels, "write a kernel sweep CSV and exit");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input,-i", cfg.input, "fixture CSV (x,value) or (x,re,im)");
    sub->add_option("--p", cfg.p, "integrability exponent p > 1");
    sub->add_option("--x-min", cfg.grid.x_min);
    sub->add_option("--x-max", cfg.grid.x_max);
    sub->add_option("--nx", cfg.grid.nx);
    sub->add_option("--y-min", cfg.grid.y_min);
    sub->add_option("--y-max", cfg.grid.y_max);
    sub->add_option("--ny", cfg.grid.ny);
    sub->add_option("--kernel-T", cfg.kernels.truncation);
    sub->add_option("--kernel-density", cfg.kernels.density);
    sub->add_option("--c-jn", cfg.constants.c_jn);
    sub->add_option("--c-0", cfg.constants.c_0);
    sub->add_option("--neighborhood-radius", cfg.constants.neighborhood_radius);
    sub->add_option("--r0", cfg.r0);
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--engine", engine, "direct|fft");
    sub->add_option("--policy", policy, "constant|periodic extension of the fixture");
    sub->add_flag("--lower", cfg.lower_half_plane, "work on the lower half-plane");
    sub->add_flag("!--no-normalize", cfg.normalize, "skip curve normalization");
  };

  CLI::App* c_extend = app.add_subcommand("extend", "write the F field");
  CLI::App* c_dil = app.add_subcommand("dilatation", "write the mu field and report");
  CLI::App* c_norms = app.add_subcommand("norms", "function-space norms of the fixture");
  CLI::App* c_carl = app.add_subcommand("carleson", "Carleson box profile of mu");
  CLI::App* c_circle = app.add_subcommand("circle", "periodic lift and disk projection");
  CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite");
  CLI::App* c_gateaux = app.add_subcommand("gateaux", "directional-derivative table");
  for (CLI::App* sub : {c_extend, c_dil, c_norms, c_carl, c_circle, c_verify, c_gateaux})
    add_common(sub);
  c_gateaux->add_option("--direction", cfg.direction, "direction fixture CSV");
  c_gateaux->add_option("--steps", steps, "comma-separated step sizes");

  try {
    app.parse(argc, argv);

    if (!config_path.empty()) apply_config_file(cfg, config_path);
    // flags override the config file: reparse on top of the loaded values
    if (!config_path.empty()) app.parse(argc, argv);

    apply_thread_cap_from_env();

    if (!dump_kernels.empty()) {
      io::save_kernel_sweep(dump_kernels);
      if (app.get_subcommands().empty()) return kExitOk;
    }

    if (app.get_subcommands().empty()) {
      std::fprintf(stderr, "%s\n", app.help().c_str());
      return kExitConfig;
    }
    const CLI::App* sub = app.get_subcommands().front();
    if (sub == c_extend) cfg.command = Command::Extend;
    else if (sub == c_dil) cfg.command = Command::Dilatation;
    else if (sub == c_norms) cfg.command = Command::Norms;
    else if (sub == c_carl) cfg.command = Command::Carleson;
    else if (sub == c_circle) cfg.command = Command::Circle;
    else if (sub == c_verify) cfg.command = Command::Verify;
    else cfg.command = Command::Gateaux;

    if (engine == "fft") cfg.engine = Engine::Fft;
    else if (engine == "direct") cfg.engine = Engine::Direct;
    else throw ConfigError("engine must be fft or direct");
    if (policy == "constant") cfg.policy = Extension::ConstantExtend;
    else if (policy == "periodic") cfg.policy = Extension::Periodic;
    else throw ConfigError("policy must be constant or periodic");
    if (!steps.empty()) {
      cfg.gateaux_steps.clear();
      std::size_t pos = 0;
      while (pos < steps.size()) {
        const auto comma = steps.find(',', pos);
        const std::string tok = steps.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
          cfg.gateaux_steps.push_back(std::stod(tok));
        } catch (const std::exception&) {
          throw ConfigError("bad step value: '" + tok + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }

    return run(cfg);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const NumericGuardError& e) {
    std::fprintf(stderr, "numeric guard '%s': %s\n", e.guard().c_str(), e.what());
    return kExitNumericGuard;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
