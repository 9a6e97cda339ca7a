#pragma once

#include <complex>
#include <vector>

#include "gapsol/grid.hpp"

namespace gapsol {

// DFT pair on a periodic grid with the convention
//   forward:  (F f)(k)    = n^-d * sum_j exp(-2*pi*i*(k.j)/n) f_j
//   inverse:  (F^-1 g)(j) =        sum_k exp(+2*pi*i*(j.k)/n) g_k
// Spectral arrays have length n^d in standard FFT order: along each axis,
// index i carries frequency k = i for i < n/2 and k = i - n otherwise.
class Dft {
 public:
  explicit Dft(const Grid& g);
  ~Dft();
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  const Grid& grid() const { return grid_; }

  void forward(const Field& f, std::vector<std::complex<double>>& out) const;

  // Inverse transform of Hermitian-symmetric data into out (whose grid
  // must already be set); checks that the imaginary residue is below
  // tol_rel relative to the real part before discarding it.
  void inverse(std::vector<std::complex<double>>& buf, Field& out,
               double tol_rel = 1e-10) const;

  // Frequency along one axis for FFT-order index i.
  static int freq(int i, int n) { return i < n / 2 ? i : i - n; }

 private:
  Grid grid_;
  void* plan_fwd_ = nullptr;
  void* plan_inv_ = nullptr;
};

// Process-wide plan cache; one Dft per (dim, n). The returned reference
// stays valid for the lifetime of the process.
const Dft& dft_for(const Grid& g);

}  // namespace gapsol
