#pragma once

#include <functional>

#include "gapsol/krylov.hpp"
#include "gapsol/model.hpp"
#include "gapsol/sparsifier.hpp"

namespace gapsol {

enum class Damping { none, backtracking };

struct NewtonOptions {
  double res_tol = 1e-8;
  int max_newton = 50;
  Damping damping = Damping::backtracking;
  int max_halvings = 8;
  KrylovOptions krylov;
  int stencil_b = 1;
  int stencil_w = 3;
  // Called after every accepted iterate with (iteration, u, ||r||_inf).
  std::function<void(int, const Field&, double)> on_iteration;
};

enum class NewtonFailure {
  none,
  max_iterations,
  gmres_stall,
  preconditioner,
  bordered_singularity,  // turning point in the fixed-norm system
  diverged
};

struct NewtonReport {
  int newton_iters = 0;
  std::vector<double> residual_history;   // ||r||_inf at each iterate, incl. u0
  std::vector<int> gmres_iters_per_step;
  bool converged = false;
  NewtonFailure failure = NewtonFailure::none;
  int failing_step = -1;
  double final_power = 0.0;
};

// Newton iteration for kinetic*(-Lap u) + V u + N(x,u) = lambda u at fixed
// lambda. Each step rebuilds the sparsifying preconditioner from the
// current linearization and solves the Newton system with left-
// preconditioned GMRES. Stops when ||r||_inf <= res_tol * max(1, ||u||_inf).
std::pair<Field, NewtonReport> newton_solve(const Model& m, double lambda,
                                            const Field& u0,
                                            const NewtonOptions& opts = {});

struct FixedNormResult {
  Field u;
  double lambda = 0.0;
  NewtonReport report;
};

// Bordered Newton iteration with prescribed norm ||u||_2 = target_norm and
// free lambda, solved per step by block elimination with two preconditioned
// GMRES solves. Undamped. Inner products carry the mesh weight h^d, so the
// norm constraint is on sqrt(power(u)).
FixedNormResult newton_fixed_norm(const Model& m, double target_norm,
                                  const Field& u0, double lambda0,
                                  const NewtonOptions& opts = {});

struct PetviashviliReport {
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  std::vector<double> step_norms;  // ||u_{n+1} - u_n||_inf per iteration
};

// Classic stabilized fixed-point iteration for the cubic no-potential
// problem (kinetic*(-Lap) + lambda) u = u^3; lambda is the scheme's shift
// and every mode of the symbol must stay away from zero.
std::pair<Field, PetviashviliReport> petviashvili(double lambda,
                                                  const Field& u0, double gamma,
                                                  int max_iters, double tol,
                                                  double kinetic = 1.0);

}  // namespace gapsol
