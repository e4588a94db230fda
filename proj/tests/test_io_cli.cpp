#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatba/run.hpp"

using namespace heatba;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HEATBA_FIXTURE_DIR;
const std::string kCli = HEATBA_CLI_PATH;

fs::path temp_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("heatba_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

int run_cli(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::map<std::string, std::string> parse_kv(const fs::path& p) {
  std::map<std::string, std::string> kv;
  std::ifstream f(p);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

}  // namespace

TEST_CASE("sampled csv round trip") {
  const fs::path dir = temp_dir("csv");
  auto u = SampledFunction::from_function(
      [](double x) { return cplx(std::sin(x), 0.25 * x); }, -2.0, 2.0, 65);
  io::save_sampled_csv(dir / "u.csv", u);
  const SampledFunction back = io::load_sampled_csv(dir / "u.csv");
  REQUIRE(back.size() == u.size());
  CHECK(back.x_min() == u.x_min());
  CHECK(back.x_max() == u.x_max());
  for (std::size_t i = 0; i < u.size(); ++i) CHECK(back.sample(i) == u.sample(i));
}

TEST_CASE("csv loader validation") {
  const fs::path dir = temp_dir("badcsv");
  {
    std::ofstream f(dir / "bad.csv");
    f << "x,value\n0,1\n1,2\n5,3\n";  // non-uniform x
  }
  CHECK_THROWS_AS(io::load_sampled_csv(dir / "bad.csv"), ConfigError);
  {
    std::ofstream f(dir / "short.csv");
    f << "x,value\n0,1\n";
  }
  CHECK_THROWS_AS(io::load_sampled_csv(dir / "short.csv"), ConfigError);
  CHECK_THROWS_AS(io::load_sampled_csv(dir / "missing.csv"), ConfigError);
}

TEST_CASE("config parsing and hashing") {
  const fs::path dir = temp_dir("cfg");
  {
    std::ofstream f(dir / "a.cfg");
    f << "# comment\np = 2.5\nengine=fft\n";
  }
  const auto kv = io::parse_config_file(dir / "a.cfg");
  CHECK(kv.at("p") == "2.5");
  CHECK(kv.at("engine") == "fft");
  const auto h1 = io::config_hash(kv);
  CHECK(h1 == io::config_hash(kv));
  auto kv2 = kv;
  kv2["p"] = "3";
  CHECK(io::config_hash(kv2) != h1);
  {
    std::ofstream f(dir / "bad.cfg");
    f << "not a key value line\n";
  }
  CHECK_THROWS_AS(io::parse_config_file(dir / "bad.cfg"), ConfigError);
}

TEST_CASE("kernel sweep dump") {
  const fs::path dir = temp_dir("sweep");
  io::save_kernel_sweep(dir / "kernels.csv", 4.0, 41);
  const std::string text = slurp(dir / "kernels.csv");
  CHECK(text.find("phi,") != std::string::npos);
  CHECK(text.find("beta,") != std::string::npos);
}

TEST_CASE("run config validation") {
  RunConfig cfg;
  cfg.command = Command::Norms;
  cfg.input = kFixtures / "u_sin.csv";
  cfg.grid.nx = 4;  // too small
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.grid.nx = 64;
  cfg.input = "/nonexistent/file.csv";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.input = kFixtures / "u_sin.csv";
  cfg.r0 = 0.01;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("cli norms on the step fixture") {
  const fs::path dir = temp_dir("norms");
  const int rc = run_cli("norms --input " + (kFixtures / "u_step.csv").string() +
                         " --out " + dir.string());
  CHECK(rc == kExitOk);
  const auto kv = parse_kv(dir / "norms.txt");
  CHECK(std::stod(kv.at("bmo")) == doctest::Approx(0.5).epsilon(2e-3));
  CHECK(kv.at("besov") == "divergent");
  CHECK(kv.at("besov_diverged") == "1");
}

TEST_CASE("cli dilatation on the zero fixture") {
  const fs::path dir = temp_dir("dil");
  const int rc = run_cli("dilatation --input " + (kFixtures / "u_zero.csv").string() +
                         " --nx 64 --ny 16 --x-min -5 --x-max 5 --y-min 0.01 --y-max 2 " +
                         "--out " + dir.string());
  CHECK(rc == kExitOk);
  const auto kv = parse_kv(dir / "report.txt");
  CHECK(std::stod(kv.at("sup_norm")) <= 1e-9);
  CHECK(std::stod(kv.at("K")) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(kv.at("in_M") == "1");
  CHECK(fs::exists(dir / "field_mu.csv"));
  CHECK(fs::exists(dir / "vanishing.csv"));
}

TEST_CASE("cli exit codes") {
  // malformed config
  CHECK(run_cli("dilatation --input /nope.csv") == kExitConfig);
  CHECK(run_cli("norms") == kExitConfig);
  CHECK(run_cli("circle --input " + (kFixtures / "v_cos.csv").string() + " --r0 0.01") ==
        kExitConfig);
  // numeric guard: weight below the denominator guard
  const fs::path dir = temp_dir("guard");
  CHECK(run_cli("dilatation --input " + (kFixtures / "u_neg30.csv").string() +
                " --nx 64 --ny 16 --x-min -5 --x-max 5 --y-min 0.05 --y-max 2 --out " +
                dir.string()) == kExitNumericGuard);
}

TEST_CASE("cli circle pipeline") {
  const fs::path dir = temp_dir("circle");
  const int rc = run_cli("circle --input " + (kFixtures / "v_cos.csv").string() +
                         " --nx 257 --ny 24 --y-min 1e-3 --out " + dir.string());
  CHECK(rc == kExitOk);
  const auto kv = parse_kv(dir / "circle.txt");
  CHECK(std::stod(kv.at("circle_besov")) == doctest::Approx(std::sqrt(0.005)).epsilon(1e-4));
  CHECK(std::stod(kv.at("sup_nu")) < 1.0);
  CHECK(std::stod(kv.at("disk_p_norm")) > 0.0);
  CHECK(fs::exists(dir / "disk.csv"));
}

TEST_CASE("cli gateaux") {
  const fs::path dir = temp_dir("gateaux");
  const int rc = run_cli("gateaux --input " + (kFixtures / "u_zero.csv").string() +
                         " --direction " + (kFixtures / "u_sin.csv").string() +
                         " --nx 64 --ny 8 --x-min -5 --x-max 5 --y-min 0.05 --y-max 2 " +
                         "--steps 2e-2,1e-2,5e-3,2.5e-3 --out " + dir.string());
  CHECK(rc == kExitOk);
  const std::string text = slurp(dir / "gateaux.csv");
  CHECK(text.find("ratio_sup") != std::string::npos);
}

TEST_CASE("cli determinism across runs and thread counts") {
  const fs::path d1 = temp_dir("det1");
  const fs::path d2 = temp_dir("det2");
  const std::string args = "dilatation --input " + (kFixtures / "u_sin.csv").string() +
                           " --nx 128 --ny 12 --x-min -8 --x-max 8 --y-min 0.01 --y-max 4";
  const int r1 = std::system(
      ("HEATBA_THREADS=1 " + kCli + " " + args + " --out " + d1.string() + " >/dev/null 2>&1").c_str());
  const int r2 = std::system(
      ("HEATBA_THREADS=2 " + kCli + " " + args + " --out " + d2.string() + " >/dev/null 2>&1").c_str());
  REQUIRE(WEXITSTATUS(r1) == kExitOk);
  REQUIRE(WEXITSTATUS(r2) == kExitOk);
  CHECK(slurp(d1 / "field_mu.csv") == slurp(d2 / "field_mu.csv"));
  CHECK(slurp(d1 / "report.csv") == slurp(d2 / "report.csv"));
  CHECK(slurp(d1 / "vanishing.csv") == slurp(d2 / "vanishing.csv"));
}

TEST_CASE("cli engine equivalence on a smooth fixture") {
  const fs::path dd = temp_dir("engd");
  const fs::path df = temp_dir("engf");
  const std::string args = "dilatation --input " + (kFixtures / "u_gauss.csv").string() +
                           " --nx 257 --ny 16 --x-min -8 --x-max 8 --y-min 0.05 --y-max 5";
  REQUIRE(run_cli(args + " --engine direct --out " + dd.string()) == kExitOk);
  REQUIRE(run_cli(args + " --engine fft --out " + df.string()) == kExitOk);
  const auto kvd = parse_kv(dd / "report.txt");
  const auto kvf = parse_kv(df / "report.txt");
  for (const char* key : {"sup_norm", "p_norm", "K", "bilip_min", "bilip_max"}) {
    const double a = std::stod(kvd.at(key));
    const double b = std::stod(kvf.at(key));
    CHECK(std::abs(a - b) <= 1e-6 * std::max(std::abs(a), std::abs(b)));
  }
}
