#include "gapsol/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernels_impl.hpp"

namespace gapsol::kern {

namespace {

using detail::OpsTable;

Backend detect_backend() {
  if (const char* env = std::getenv("GAPSOL_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && detail::avx2_supported())
      return Backend::avx2;
    if (std::strcmp(env, "avx2") == 0) return Backend::scalar;
  }
  return detail::avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<const OpsTable*> g_ops{nullptr};
std::atomic<Backend> g_backend{Backend::scalar};

const OpsTable& ops() {
  const OpsTable* t = g_ops.load(std::memory_order_acquire);
  if (!t) {
    Backend b = detect_backend();
    t = (b == Backend::avx2) ? &detail::avx2_table() : &detail::scalar_table();
    g_backend.store(b, std::memory_order_relaxed);
    g_ops.store(t, std::memory_order_release);
  }
  return *t;
}

}  // namespace

Backend active_backend() {
  ops();
  return g_backend.load(std::memory_order_relaxed);
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

void force_backend(std::optional<Backend> b) {
  if (!b) {
    g_ops.store(nullptr, std::memory_order_release);
    return;
  }
  Backend chosen = *b;
  if (chosen == Backend::avx2 && !detail::avx2_supported())
    chosen = Backend::scalar;
  g_backend.store(chosen, std::memory_order_relaxed);
  g_ops.store(chosen == Backend::avx2 ? &detail::avx2_table()
                                      : &detail::scalar_table(),
              std::memory_order_release);
}

double dot(const double* a, const double* b, std::size_t n) {
  return ops().dot(a, b, n);
}
double max_abs(const double* x, std::size_t n) { return ops().max_abs(x, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  ops().axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::size_t n) { ops().scal(alpha, x, n); }
void cmul_real(std::complex<double>* z, const double* s, std::size_t n) {
  ops().cmul_real(z, s, n);
}
void linop_combine(double* out, const double* lap, const double* lu,
                   const double* v, double ck, double lambda, std::size_t n) {
  ops().linop_combine(out, lap, lu, v, ck, lambda, n);
}

}  // namespace gapsol::kern
