#pragma once

#include <complex>
#include <cstddef>

// Per-backend entry points; the dispatch table in kernels.cpp is the only
// consumer. kernels_avx2.cpp is the one translation unit compiled with
// -mavx2, so no AVX2 code can leak into generic object files.

namespace gapsol::kern::detail {

struct OpsTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*max_abs)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  void (*cmul_real)(std::complex<double>*, const double*, std::size_t);
  void (*linop_combine)(double*, const double*, const double*, const double*,
                        double, double, std::size_t);
};

const OpsTable& scalar_table();
const OpsTable& avx2_table();
bool avx2_supported();

}  // namespace gapsol::kern::detail
