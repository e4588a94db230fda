#include "heatba/common.hpp"

#include <omp.h>

#include <cstdio>
#include <cstdlib>

namespace heatba {

void apply_thread_cap_from_env() {
  const char* env = std::getenv("HEATBA_THREADS");
  if (!env || !*env) return;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (end == env || n < 1) throw ConfigError("HEATBA_THREADS must be a positive integer");
  omp_set_num_threads(static_cast<int>(n));
}

int thread_count() { return omp_get_max_threads(); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace heatba
