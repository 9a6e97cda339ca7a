#include "kernels_impl.hpp"

#ifdef GAPSOL_HAVE_AVX2
#include <immintrin.h>
#endif

#include <cmath>

namespace gapsol::kern::detail {

#ifdef GAPSOL_HAVE_AVX2

namespace {

// No FMA on purpose: one mul + one add per element keeps the elementwise
// kernels bit-identical with the scalar reference (the TU is compiled with
// -ffp-contract=off for the same reason).

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a + i + 4),
                                             _mm256_loadu_pd(b + i + 4)));
    acc2 = _mm256_add_pd(acc2, _mm256_mul_pd(_mm256_loadu_pd(a + i + 8),
                                             _mm256_loadu_pd(b + i + 8)));
    acc3 = _mm256_add_pd(acc3, _mm256_mul_pd(_mm256_loadu_pd(a + i + 12),
                                             _mm256_loadu_pd(b + i + 12)));
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                             _mm256_loadu_pd(b + i)));
  __m256d acc = _mm256_add_pd(_mm256_add_pd(acc0, acc1),
                              _mm256_add_pd(acc2, acc3));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) r += a[i] * b[i];
  return r;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]),
                      std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d r = _mm256_add_pd(_mm256_loadu_pd(y + i),
                              _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void cmul_real_avx2(std::complex<double>* z, const double* s, std::size_t n) {
  double* zd = reinterpret_cast<double*>(z);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // [s0, s1] -> [s0, s0, s1, s1] to match the interleaved re/im layout
    __m256d sv = _mm256_permute4x64_pd(
        _mm256_castpd128_pd256(_mm_loadu_pd(s + i)), 0b01010000);
    _mm256_storeu_pd(zd + 2 * i,
                     _mm256_mul_pd(sv, _mm256_loadu_pd(zd + 2 * i)));
  }
  for (; i < n; ++i) {
    zd[2 * i] *= s[i];
    zd[2 * i + 1] *= s[i];
  }
}

void linop_combine_avx2(double* out, const double* lap, const double* lu,
                        const double* v, double ck, double lambda,
                        std::size_t n) {
  const __m256d vck = _mm256_set1_pd(ck);
  const __m256d vlam = _mm256_set1_pd(lambda);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d kin = _mm256_mul_pd(vck, _mm256_loadu_pd(lap + i));
    __m256d pot = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(lu + i), vlam),
                                _mm256_loadu_pd(v + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(kin, pot));
  }
  for (; i < n; ++i) out[i] = ck * lap[i] + (lu[i] - lambda) * v[i];
}

}  // namespace

const OpsTable& avx2_table() {
  static const OpsTable t = {dot_avx2,      max_abs_avx2,
                             axpy_avx2,     scal_avx2,
                             cmul_real_avx2, linop_combine_avx2};
  return t;
}

bool avx2_supported() { return __builtin_cpu_supports("avx2"); }

#else

const OpsTable& avx2_table() { return scalar_table(); }
bool avx2_supported() { return false; }

#endif

}  // namespace gapsol::kern::detail
