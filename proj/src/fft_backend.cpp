#include "fft_backend.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace heatba::fftbackend {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  std::size_t n = 0;

  ~PlanPair() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (buf_in) fftw_free(buf_in);
    if (buf_out) fftw_free(buf_out);
  }
};

std::mutex g_mutex;
std::map<std::size_t, std::unique_ptr<PlanPair>>& plan_cache() {
  static std::map<std::size_t, std::unique_ptr<PlanPair>> cache;
  return cache;
}

PlanPair& plans_for(std::size_t n) {
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto pp = std::make_unique<PlanPair>();
  pp->n = n;
  pp->buf_in = fftw_alloc_complex(n);
  pp->buf_out = fftw_alloc_complex(n);
  pp->fwd = fftw_plan_dft_1d(static_cast<int>(n), pp->buf_in, pp->buf_out,
                             FFTW_FORWARD, FFTW_ESTIMATE);
  pp->inv = fftw_plan_dft_1d(static_cast<int>(n), pp->buf_in, pp->buf_out,
                             FFTW_BACKWARD, FFTW_ESTIMATE);
  auto& ref = *pp;
  cache.emplace(n, std::move(pp));
  return ref;
}

// in-place transform through the plan-owned buffers
void transform(std::vector<cplx>& a, bool inverse) {
  PlanPair& pp = plans_for(a.size());
  std::memcpy(static_cast<void*>(pp.buf_in), static_cast<const void*>(a.data()),
              a.size() * sizeof(cplx));
  fftw_execute(inverse ? pp.inv : pp.fwd);
  std::memcpy(static_cast<void*>(a.data()), static_cast<const void*>(pp.buf_out),
              a.size() * sizeof(cplx));
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace

std::vector<cplx> linear_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  const std::size_t out_n = a.size() + b.size() - 1;
  const std::size_t n = next_pow2(a.size() + b.size());
  std::lock_guard<std::mutex> lock(g_mutex);
  std::vector<cplx> fa(n, cplx{}), fb(n, cplx{});
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  transform(fa, false);
  transform(fb, false);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i] * scale;
  transform(fa, true);
  fa.resize(out_n);
  return fa;
}

std::vector<cplx> circular_convolve(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("circular_convolve requires equal lengths");
  const std::size_t n = a.size();
  std::lock_guard<std::mutex> lock(g_mutex);
  std::vector<cplx> fa = a, fb = b;
  transform(fa, false);
  transform(fb, false);
  const double scale = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i] * scale;
  transform(fa, true);
  return fa;
}

}  // namespace heatba::fftbackend
