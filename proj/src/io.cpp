#include "heatba/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace heatba::io {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path.string());
  return f;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ' && ch != '\t') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_num(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("malformed number in " + what + ": '" + s + "'");
  }
}

void write_meta(std::ofstream& f, const std::string& meta) {
  if (!meta.empty()) f << "# " << meta << "\n";
}

}  // namespace

SampledFunction load_sampled_csv(const std::filesystem::path& path, Extension policy) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open input: " + path.string());
  std::string line;
  if (!std::getline(f, line)) throw ConfigError("empty fixture file: " + path.string());
  std::vector<double> xs;
  std::vector<cplx> vals;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_csv(line);
    if (cols.size() != 2 && cols.size() != 3)
      throw ConfigError("fixture rows must have 2 or 3 columns: " + path.string());
    xs.push_back(parse_num(cols[0], path.string()));
    const double re = parse_num(cols[1], path.string());
    const double im = cols.size() == 3 ? parse_num(cols[2], path.string()) : 0.0;
    vals.emplace_back(re, im);
  }
  if (xs.size() < 2) throw ConfigError("fixture needs at least two rows: " + path.string());
  const double h = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(xs[i] - (xs.front() + h * static_cast<double>(i))) >
        1e-6 * std::max(1.0, std::abs(xs.back() - xs.front())))
      throw ConfigError("fixture x-column must be uniformly spaced: " + path.string());
  return SampledFunction(std::move(vals), xs.front(), xs.back(), policy);
}

void save_sampled_csv(const std::filesystem::path& path, const SampledFunction& u) {
  auto f = open_out(path);
  f << "x,re,im\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    f << format_double(u.node(i)) << ',' << format_double(u.sample(i).real()) << ','
      << format_double(u.sample(i).imag()) << "\n";
}

void save_field_csv(const std::filesystem::path& path, const HalfPlaneField& field,
                    const std::string& meta) {
  auto f = open_out(path);
  const char* tag = field.content == FieldContent::F
                        ? "F"
                        : field.content == FieldContent::Mu ? "mu" : "derivative";
  f << "# content=" << tag << " half_plane="
    << (field.half_plane == HalfPlane::Upper ? "upper" : "lower");
  if (!meta.empty()) f << ' ' << meta;
  f << "\n";
  f << "x,y,re,im\n";
  for (std::size_t j = 0; j < field.ny(); ++j) {
    const double y = field.grid.y(j) * (field.half_plane == HalfPlane::Upper ? 1.0 : -1.0);
    for (std::size_t i = 0; i < field.nx(); ++i) {
      const cplx v = field.at(j, i);
      f << format_double(field.grid.x(i)) << ',' << format_double(y) << ','
        << format_double(v.real()) << ',' << format_double(v.imag()) << "\n";
    }
  }
}

void save_disk_csv(const std::filesystem::path& path, const circle::DiskField& disk,
                   const std::string& meta) {
  auto f = open_out(path);
  f << "# content=nu r0=" << format_double(disk.r0);
  if (!meta.empty()) f << ' ' << meta;
  f << "\n";
  f << "r,theta,re,im\n";
  for (std::size_t ring = 0; ring < disk.rings(); ++ring)
    for (std::size_t k = 0; k < disk.ntheta(); ++k) {
      const cplx v = disk.at(ring, k);
      f << format_double(disk.r[ring]) << ',' << format_double(disk.theta[k]) << ','
        << format_double(v.real()) << ',' << format_double(v.imag()) << "\n";
    }
}

void save_keyvalue_txt(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& meta) {
  auto f = open_out(path);
  write_meta(f, meta);
  for (const auto& [k, v] : kv) f << k << '=' << v << "\n";
}

void save_keyvalue_csv(const std::filesystem::path& path,
                       const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& meta) {
  auto f = open_out(path);
  write_meta(f, meta);
  for (std::size_t i = 0; i < kv.size(); ++i) f << kv[i].first << (i + 1 < kv.size() ? ',' : '\n');
  for (std::size_t i = 0; i < kv.size(); ++i) f << kv[i].second << (i + 1 < kv.size() ? ',' : '\n');
}

void save_report_txt(const std::filesystem::path& path, const DiagnosticsReport& r,
                     const std::string& meta) {
  save_keyvalue_txt(path, r.entries(), meta);
}

void save_report_csv(const std::filesystem::path& path, const DiagnosticsReport& r,
                     const std::string& meta) {
  save_keyvalue_csv(path, r.entries(), meta);
}

void save_profile_csv(const std::filesystem::path& path,
                      std::span<const VanishingEntry> profile, const std::string& meta) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "t,sup\n";
  for (const auto& e : profile)
    f << format_double(e.t) << ',' << format_double(e.sup) << "\n";
}

void save_carleson_csv(const std::filesystem::path& path, const CarlesonProfile& prof,
                       const std::string& meta) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "length,measure\n";
  for (const auto& e : prof.entries)
    f << format_double(2.0 * e.half) << ',' << format_double(e.measure) << "\n";
}

void save_gateaux_csv(const std::filesystem::path& path, std::span<const GateauxRow> rows,
                      const std::string& meta) {
  auto f = open_out(path);
  write_meta(f, meta);
  f << "h,diff_sup,diff_p,ratio_sup,ratio_p\n";
  for (const auto& r : rows)
    f << format_double(r.h) << ',' << format_double(r.diff_sup) << ','
      << format_double(r.diff_p) << ',' << format_double(r.ratio_sup) << ','
      << format_double(r.ratio_p) << "\n";
}

void save_kernel_sweep(const std::filesystem::path& path, double x_max, std::size_t n) {
  auto f = open_out(path);
  f << "kernel,x,re,im\n";
  const auto dump = [&](const char* name, Kernel k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double x = -x_max + 2.0 * x_max * static_cast<double>(i) / static_cast<double>(n - 1);
      const cplx v = kernel_eval(k, x);
      f << name << ',' << format_double(x) << ',' << format_double(v.real()) << ','
        << format_double(v.imag()) << "\n";
    }
  };
  dump("phi", Kernel::Phi);
  dump("psi", Kernel::Psi);
  dump("phi2", Kernel::Phi2);
  dump("alpha", Kernel::Alpha);
  dump("beta", Kernel::Beta);
}

std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config: " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config lines must be key=value: '" + line + "'");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::uint64_t config_hash(const std::map<std::string, std::string>& kv) {
  std::uint64_t h = 1469598103934665603ull;
  const auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
  };
  for (const auto& [k, v] : kv) {
    mix(k);
    mix("=");
    mix(v);
    mix("\n");
  }
  return h;
}

}  // namespace heatba::io
