#pragma once

#include <complex>
#include <cstddef>
#include <optional>

// Data-parallel inner loops shared by the spectral operators, the Arnoldi
// process and the pointwise model evaluations. Each op has a scalar
// reference implementation and an AVX2 variant; the backend is picked once
// at startup from cpuid and can be overridden with GAPSOL_SIMD=scalar|avx2.
//
// Elementwise ops (axpy, scal, cmul_real, linop_combine) use the same
// mul/add sequence per element in both variants and are bit-identical.
// Reductions (dot, max_abs) reassociate across lanes, so the backends agree
// only to round-off; the equivalence tests pin that tolerance.

namespace gapsol::kern {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);

// Test hook: pin a backend (nullopt restores auto-detection).
void force_backend(std::optional<Backend> b);

double dot(const double* a, const double* b, std::size_t n);
double max_abs(const double* x, std::size_t n);

// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);
// x *= alpha
void scal(double alpha, double* x, std::size_t n);
// z[i] *= s[i], complex z against a real symbol
void cmul_real(std::complex<double>* z, const double* s, std::size_t n);
// out[i] = ck * lap[i] + (lu[i] - lambda) * v[i]
void linop_combine(double* out, const double* lap, const double* lu,
                   const double* v, double ck, double lambda, std::size_t n);

}  // namespace gapsol::kern
