#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "gapsol/grid.hpp"

namespace gapsol {

struct KrylovOptions {
  double rel_tol = 1e-10;
  int restart = 40;
  int max_iters = 200;
  bool record_history = false;
};

struct KrylovReport {
  int iterations = 0;  // operator applications (Arnoldi steps)
  std::vector<double> preconditioned_residuals;  // filled when record_history
  double true_final_residual = 0.0;  // ||A x - b||_2, recomputed unpreconditioned
  bool converged = false;
  bool breakdown = false;
};

using FieldOp = std::function<Field(const Field&)>;

// Restarted GMRES with left preconditioning: solves M A x = M b with zero
// initial guess, stopping when ||M(Ax - b)||_2 <= rel_tol * ||M b||_2.
// Arnoldi uses modified Gram-Schmidt with one reorthogonalization pass when
// the loss of orthogonality exceeds 1e-8. apply_M may be empty (identity).
std::pair<Field, KrylovReport> gmres(const FieldOp& apply_A,
                                     const FieldOp& apply_M, const Field& rhs,
                                     const KrylovOptions& opts = {});

}  // namespace gapsol
