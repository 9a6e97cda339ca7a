#pragma once

// Test-only dense oracles assembled directly from the transform
// definitions. They never call the library's FFT-based paths, so they can
// certify them independently.

#include <Eigen/Dense>

#include <complex>
#include <random>

#include "gapsol/fft.hpp"
#include "gapsol/grid.hpp"

namespace oracles {

using gapsol::Dft;
using gapsol::Field;
using gapsol::Grid;

using CMat = Eigen::MatrixXcd;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline Vec to_vec(const Field& f) {
  return Eigen::Map<const Vec>(f.data(), static_cast<Eigen::Index>(f.size()));
}

inline Field to_field(const Grid& g, const Vec& v) {
  Field f(g);
  Eigen::Map<Vec>(f.data(), v.size()) = v;
  return f;
}

// Forward DFT matrix: row k (FFT-order linear index), column j (row-major),
// entry exp(-2 pi i k.j / n) / n^d.
inline CMat dense_dft(const Grid& g) {
  const auto total = static_cast<Eigen::Index>(g.num_points());
  CMat F(total, total);
  const std::complex<double> im(0.0, 1.0);
  for (Eigen::Index kr = 0; kr < total; ++kr) {
    const auto kk = g.unravel(static_cast<std::size_t>(kr));
    for (Eigen::Index j = 0; j < total; ++j) {
      const auto jj = g.unravel(static_cast<std::size_t>(j));
      double phase = 0.0;
      for (int a = 0; a < g.dim; ++a)
        phase += static_cast<double>(Dft::freq(kk[a], g.n)) * jj[a];
      F(kr, j) = std::exp(-2.0 * std::numbers::pi * im * phase /
                          static_cast<double>(g.n)) /
                 static_cast<double>(total);
    }
  }
  return F;
}

inline CMat dense_idft(const Grid& g) {
  const auto total = static_cast<Eigen::Index>(g.num_points());
  CMat Finv(total, total);
  const std::complex<double> im(0.0, 1.0);
  for (Eigen::Index j = 0; j < total; ++j) {
    const auto jj = g.unravel(static_cast<std::size_t>(j));
    for (Eigen::Index kr = 0; kr < total; ++kr) {
      const auto kk = g.unravel(static_cast<std::size_t>(kr));
      double phase = 0.0;
      for (int a = 0; a < g.dim; ++a)
        phase += static_cast<double>(Dft::freq(kk[a], g.n)) * jj[a];
      Finv(j, kr) = std::exp(2.0 * std::numbers::pi * im * phase /
                             static_cast<double>(g.n));
    }
  }
  return Finv;
}

inline double symbol_k2(const Grid& g, std::size_t idx) {
  double k2 = 0.0;
  auto kk = g.unravel(idx);
  for (int a = 0; a < g.dim; ++a) {
    const double k = Dft::freq(kk[a], g.n);
    k2 += k * k;
  }
  return 4.0 * std::numbers::pi * std::numbers::pi * k2 /
         (g.box_len * g.box_len);
}

// Dense -Laplacian from the DFT definition.
inline Mat dense_laplacian(const Grid& g) {
  const auto total = static_cast<Eigen::Index>(g.num_points());
  CMat F = dense_dft(g);
  CMat Finv = dense_idft(g);
  CMat D = CMat::Zero(total, total);
  for (Eigen::Index k = 0; k < total; ++k)
    D(k, k) = symbol_k2(g, static_cast<std::size_t>(k));
  return (Finv * D * F).real();
}

// Dense inverse of ck*(-Lap) + shift*I.
inline Mat dense_green(const Grid& g, double shift, double ck = 1.0) {
  const auto total = static_cast<Eigen::Index>(g.num_points());
  Mat A = ck * dense_laplacian(g) + shift * Mat::Identity(total, total);
  return A.partialPivLu().inverse();
}

// Dense ck*(-Lap) + diag(Lu) - lambda.
inline Mat dense_linop(const Field& Lu, double lambda, double ck) {
  const Grid& g = Lu.grid;
  const auto total = static_cast<Eigen::Index>(g.num_points());
  Mat A = ck * dense_laplacian(g);
  for (Eigen::Index i = 0; i < total; ++i)
    A(i, i) += Lu.values[static_cast<std::size_t>(i)] - lambda;
  return A;
}

inline Field random_field(const Grid& g, std::mt19937_64& rng,
                          double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Field f(g);
  for (double& v : f.values) v = dist(rng);
  return f;
}

}  // namespace oracles
