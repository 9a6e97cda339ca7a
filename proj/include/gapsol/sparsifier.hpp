#pragma once

#include <Eigen/SparseCore>
#include <cstdint>
#include <memory>
#include <stdexcept>

#include "gapsol/spectral.hpp"

namespace gapsol {

struct PreconditionerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SparseMat = Eigen::SparseMatrix<double>;

// Local stencil that sparsifies the Green operator: alpha is the row of Q
// (one stencil, translated to every grid point), chosen so that
// alpha^T G(mu, C) is as small as possible over the annulus C just outside
// the stencil support mu = {m : |m|_inf <= b}. beta is the row of QG
// restricted to mu.
struct Stencil {
  Grid grid;
  int b = 1;  // stencil half-width
  int w = 3;  // annulus width of the fit region
  std::vector<double> alpha;  // over mu, row-major in offset order
  std::vector<double> beta;
  double sigma_min = 0.0;   // smallest singular value of G(mu, C)
  double gmat_norm = 0.0;   // largest singular value of G(mu, C)
  bool degraded = false;    // quality above threshold; consider b+1

  std::size_t stencil_size() const;  // (2b+1)^dim
};

// Relative quality threshold on sigma_min / gmat_norm.
inline constexpr double kStencilQualityThreshold = 1e-4;

Stencil build_stencil(const GreenKernel& kern, int b, int w);

// P(j, j+m) = alpha(m) + beta(m) * (Lu(j+m) - l), periodic indices; the rest
// of the matrix is zero. l must be the constant split actually used in the
// Green kernel (effective_l() when a shift was applied).
SparseMat assemble_P(const Stencil& st, const Field& Lu, double l);

// Q y: periodic stencil convolution with alpha.
Field stencil_apply(const Stencil& st, const Field& y);

struct FactorStats {
  std::int64_t nnz_matrix = 0;
  std::int64_t nnz_factors = 0;
  double fill() const {
    return nnz_matrix ? static_cast<double>(nnz_factors) / nnz_matrix : 0.0;
  }
  double factor_seconds = 0.0;
};

// Sparse LU with a fill-reducing column ordering. Throws
// PreconditionerError when the matrix is numerically singular.
class Factorization {
 public:
  static Factorization compute(const SparseMat& P);
  void solve(const double* rhs, double* x, std::size_t n) const;
  const FactorStats& stats() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

struct PrecondState {
  GreenKernel kern;
  Stencil stencil;
  Factorization fact;
  double setup_seconds = 0.0;  // stencil + assembly + factorization
};

PrecondState build_preconditioner(GreenKernel kern, const Field& Lu, int b, int w);

// v ~= P^-1 Q G r, the sparsifying preconditioner application.
Field apply_preconditioner(const PrecondState& state, const Field& r);

}  // namespace gapsol
