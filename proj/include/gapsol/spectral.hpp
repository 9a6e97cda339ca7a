#pragma once

#include <vector>

#include "gapsol/fft.hpp"
#include "gapsol/grid.hpp"

namespace gapsol {

// h^d * sum_j f_j^2, the exact quadrature of the squared L2 norm on a
// periodic grid.
double power(const Field& f);

double mean(const Field& f);

// -Laplace f, evaluated spectrally: symbol 4*pi^2*|k|^2/L^2.
Field apply_laplacian(const Field& f);

// Inverse of the constant-coefficient part kinetic*(-Laplace) + (l - lambda).
// If the symbol denominator comes too close to zero for some mode, a small
// shift delta is added to l and recorded in shift_applied; callers must use
// effective_l() when they split off the variable part of the potential.
struct GreenKernel {
  Grid grid;
  double l = 0.0;
  double lambda = 0.0;
  double kinetic = 1.0;
  double shift_applied = 0.0;
  std::vector<double> symbol;  // 1/(kinetic*4pi^2|k|^2/L^2 + l - lambda + delta)
  Field kernel;                // first column of G as a dense matrix

  double effective_l() const { return l + shift_applied; }
};

GreenKernel build_green_kernel(const Grid& g, double l, double lambda,
                               double kinetic = 1.0);

Field apply_G(const GreenKernel& kern, const Field& r);

// Laplacian symbol value for the FFT-order linear index idx.
double laplacian_symbol(const Grid& g, std::size_t idx);

}  // namespace gapsol
