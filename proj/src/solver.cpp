#include "gapsol/solver.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <stdexcept>

#include "gapsol/kernels.hpp"

namespace gapsol {

namespace {

double stop_scale(const Field& u) { return std::max(1.0, inf_norm(u)); }

struct NewtonStepContext {
  std::shared_ptr<const LinearizedOperator> op;
  std::shared_ptr<const PrecondState> precond;
  FieldOp apply_A;
  FieldOp apply_M;
};

NewtonStepContext prepare_step(const Model& m, const Field& u, double lambda,
                               const NewtonOptions& opts) {
  NewtonStepContext ctx;
  ctx.op = std::make_shared<const LinearizedOperator>(make_linearized(m, u, lambda));
  GreenKernel kern =
      build_green_kernel(u.grid, ctx.op->l, lambda, m.kinetic_factor);
  ctx.precond = std::make_shared<const PrecondState>(build_preconditioner(
      std::move(kern), ctx.op->Lu, opts.stencil_b, opts.stencil_w));
  ctx.apply_A = [op = ctx.op](const Field& v) { return op->apply(v); };
  ctx.apply_M = [pc = ctx.precond](const Field& v) {
    return apply_preconditioner(*pc, v);
  };
  return ctx;
}

}  // namespace

std::pair<Field, NewtonReport> newton_solve(const Model& m, double lambda,
                                            const Field& u0,
                                            const NewtonOptions& opts) {
  require_finite(u0, "newton_solve");
  if (!(opts.res_tol > 0.0))
    throw std::invalid_argument("newton_solve: res_tol must be positive");

  NewtonReport report;
  Field u = u0;
  Field r = residual(m, u, lambda);
  double rnorm = inf_norm(r);
  report.residual_history.push_back(rnorm);

  for (int iter = 0; iter < opts.max_newton; ++iter) {
    if (rnorm <= opts.res_tol * stop_scale(u)) {
      report.converged = true;
      break;
    }
    if (!all_finite(u) || !std::isfinite(rnorm)) {
      report.failure = NewtonFailure::diverged;
      report.failing_step = iter;
      break;
    }

    NewtonStepContext ctx;
    try {
      ctx = prepare_step(m, u, lambda, opts);
    } catch (const PreconditionerError&) {
      report.failure = NewtonFailure::preconditioner;
      report.failing_step = iter;
      break;
    }

    auto [v, krep] = gmres(ctx.apply_A, ctx.apply_M, r, opts.krylov);
    report.gmres_iters_per_step.push_back(krep.iterations);
    if (!krep.converged) {
      report.failure = NewtonFailure::gmres_stall;
      report.failing_step = iter;
      report.newton_iters = iter;
      break;
    }

    double step = 1.0;
    Field u_next = u;
    axpy(-step, v, u_next);
    Field r_next = residual(m, u_next, lambda);
    double rnorm_next = inf_norm(r_next);
    if (opts.damping == Damping::backtracking) {
      int halvings = 0;
      while ((!std::isfinite(rnorm_next) || rnorm_next > rnorm) &&
             halvings < opts.max_halvings) {
        step *= 0.5;
        u_next = u;
        axpy(-step, v, u_next);
        r_next = residual(m, u_next, lambda);
        rnorm_next = inf_norm(r_next);
        ++halvings;
      }
    }

    u = std::move(u_next);
    r = std::move(r_next);
    rnorm = rnorm_next;
    report.newton_iters = iter + 1;
    report.residual_history.push_back(rnorm);
    if (opts.on_iteration) opts.on_iteration(iter + 1, u, rnorm);

    if (rnorm <= opts.res_tol * stop_scale(u)) {
      report.converged = true;
      break;
    }
  }

  if (!report.converged && report.failure == NewtonFailure::none)
    report.failure = rnorm <= opts.res_tol * stop_scale(u)
                         ? NewtonFailure::none
                         : NewtonFailure::max_iterations;
  if (report.failure == NewtonFailure::none) report.converged = true;
  report.final_power = power(u);
  return {u, report};
}

FixedNormResult newton_fixed_norm(const Model& m, double target_norm,
                                  const Field& u0, double lambda0,
                                  const NewtonOptions& opts) {
  require_finite(u0, "newton_fixed_norm");
  if (!(norm2(u0) > 0.0))
    throw std::invalid_argument("newton_fixed_norm: u0 must be nonzero");

  FixedNormResult result;
  result.u = u0;
  result.lambda = lambda0;
  NewtonReport& report = result.report;

  const double m2 = target_norm * target_norm;
  Field r = residual(m, result.u, result.lambda);
  double rnorm = inf_norm(r);
  report.residual_history.push_back(rnorm);

  for (int iter = 0; iter < opts.max_newton; ++iter) {
    const double pw = power(result.u);
    const double norm_defect = std::abs(pw - m2);
    if (rnorm <= opts.res_tol * stop_scale(result.u) &&
        norm_defect <= opts.res_tol * std::max(1.0, m2)) {
      report.converged = true;
      break;
    }

    NewtonStepContext ctx;
    try {
      ctx = prepare_step(m, result.u, result.lambda, opts);
    } catch (const PreconditionerError&) {
      report.failure = NewtonFailure::preconditioner;
      report.failing_step = iter;
      break;
    }

    // Block elimination of the bordered system
    //   [ A   -u ] [v ]   [r    ]
    //   [ u^T  0 ] [mu] = [kappa],   kappa = (||u||^2 - m^2)/2:
    // solve A w1 = r and A w2 = u, then mu = (kappa - <u,w1>)/<u,w2> and
    // v = w1 + mu*w2.
    auto [w1, rep1] = gmres(ctx.apply_A, ctx.apply_M, r, opts.krylov);
    auto [w2, rep2] = gmres(ctx.apply_A, ctx.apply_M, result.u, opts.krylov);
    report.gmres_iters_per_step.push_back(rep1.iterations + rep2.iterations);
    if (!rep1.converged || !rep2.converged) {
      report.failure = NewtonFailure::gmres_stall;
      report.failing_step = iter;
      break;
    }

    const double kappa = (pw - m2) / 2.0;
    const double uw2 = inner(result.u, w2);
    if (std::abs(uw2) <= 1e-12 * norm2(result.u) * norm2(w2)) {
      report.failure = NewtonFailure::bordered_singularity;
      report.failing_step = iter;
      break;
    }
    const double mu = (kappa - inner(result.u, w1)) / uw2;

    axpy(-1.0, w1, result.u);
    axpy(-mu, w2, result.u);
    result.lambda -= mu;

    r = residual(m, result.u, result.lambda);
    rnorm = inf_norm(r);
    report.newton_iters = iter + 1;
    report.residual_history.push_back(rnorm);
    if (opts.on_iteration) opts.on_iteration(iter + 1, result.u, rnorm);
  }

  if (!report.converged && report.failure == NewtonFailure::none) {
    const double norm_defect = std::abs(power(result.u) - m2);
    if (rnorm <= opts.res_tol * stop_scale(result.u) &&
        norm_defect <= opts.res_tol * std::max(1.0, m2))
      report.converged = true;
    else
      report.failure = NewtonFailure::max_iterations;
  }
  report.final_power = power(result.u);
  return result;
}

std::pair<Field, PetviashviliReport> petviashvili(double lambda,
                                                  const Field& u0, double gamma,
                                                  int max_iters, double tol,
                                                  double kinetic) {
  require_finite(u0, "petviashvili");
  const Grid& g = u0.grid;

  // Shifted-Laplacian symbol lambda + kinetic*4pi^2|k|^2/L^2; every mode
  // must stay away from zero for the explicit inversion to make sense.
  const std::size_t total = g.num_points();
  std::vector<double> inv_sym(total);
  double min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < total; ++i) {
    const double d = lambda + kinetic * laplacian_symbol(g, i);
    min_abs = std::min(min_abs, std::abs(d));
    inv_sym[i] = 1.0 / d;
  }
  if (min_abs < 1e-8 * (1.0 + std::abs(lambda)))
    throw std::invalid_argument(
        "petviashvili: shifted-Laplacian symbol has a near-zero mode");

  PetviashviliReport report;
  const Dft& dft = dft_for(g);
  Field u = u0;
  Field cubed(g), lin(g), u_next(g);
  std::vector<std::complex<double>> spec;

  for (int iter = 0; iter < max_iters; ++iter) {
    for (std::size_t i = 0; i < total; ++i)
      cubed.values[i] = u.values[i] * u.values[i] * u.values[i];

    // Stabilizing factor <u, (kinetic*(-Lap) + lambda) u> / <u, u^3>;
    // equals 1 at a fixed point.
    lin = apply_laplacian(u);
    scale(lin, kinetic);
    axpy(lambda, u, lin);
    const double numer = inner(u, lin);
    const double denom = inner(u, cubed);
    if (denom == 0.0) {
      report.diverged = true;
      break;
    }
    const double mn = numer / denom;
    if (!(mn > 0.0) || !std::isfinite(mn)) {
      report.diverged = true;
      break;
    }

    dft.forward(cubed, spec);
    kern::cmul_real(spec.data(), inv_sym.data(), total);
    dft.inverse(spec, u_next);
    scale(u_next, std::pow(mn, gamma));

    Field diff = u_next;
    axpy(-1.0, u, diff);
    const double step = inf_norm(diff);
    report.step_norms.push_back(step);
    u = u_next;
    report.iterations = iter + 1;

    if (inf_norm(u) > 1e8 || !all_finite(u)) {
      report.diverged = true;
      break;
    }
    if (step <= tol) {
      report.converged = true;
      break;
    }
  }
  return {u, report};
}

}  // namespace gapsol
