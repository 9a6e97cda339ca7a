#include "kernels_impl.hpp"

#include <cmath>

namespace gapsol::kern::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
  return m;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void cmul_real_scalar(std::complex<double>* z, const double* s, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  for (std::size_t i = 0; i < n; ++i) {
    zd[2 * i] *= s[i];
    zd[2 * i + 1] *= s[i];
  }
}

void linop_combine_scalar(double* out, const double* lap, const double* lu,
                          const double* v, double ck, double lambda,
                          std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = ck * lap[i] + (lu[i] - lambda) * v[i];
}

}  // namespace

const OpsTable& scalar_table() {
  static const OpsTable t = {dot_scalar,      max_abs_scalar,
                             axpy_scalar,     scal_scalar,
                             cmul_real_scalar, linop_combine_scalar};
  return t;
}

}  // namespace gapsol::kern::detail
