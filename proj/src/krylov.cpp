#include "gapsol/krylov.hpp"

#include <cmath>
#include <stdexcept>

#include "gapsol/kernels.hpp"

namespace gapsol {

namespace {

constexpr double kBreakdownFloor = 1e-300;
constexpr double kOrthLossThreshold = 1e-8;

double norm2_plain(const Field& f) {
  return std::sqrt(kern::dot(f.data(), f.data(), f.size()));
}

Field apply_checked(const FieldOp& op, const Field& v, const char* what) {
  Field out = op(v);
  if (!all_finite(out))
    throw std::runtime_error(std::string("gmres: ") + what +
                             " returned non-finite values");
  return out;
}

}  // namespace

std::pair<Field, KrylovReport> gmres(const FieldOp& apply_A,
                                     const FieldOp& apply_M, const Field& rhs,
                                     const KrylovOptions& opts) {
  if (!(opts.rel_tol > 0.0 && opts.rel_tol < 1.0))
    throw std::invalid_argument("gmres: rel_tol must lie in (0, 1)");
  if (opts.restart < 1 || opts.max_iters < 1)
    throw std::invalid_argument("gmres: restart and max_iters must be >= 1");
  require_finite(rhs, "gmres rhs");

  const auto precond = [&](const Field& f) {
    return apply_M ? apply_checked(apply_M, f, "preconditioner") : f;
  };

  KrylovReport report;
  Field x(rhs.grid);  // zero initial guess

  const Field mb = precond(rhs);
  const double beta0 = norm2_plain(mb);
  if (beta0 == 0.0) {
    report.converged = true;
    report.true_final_residual = norm2_plain(rhs);
    return {x, report};
  }
  const double tol_abs = opts.rel_tol * beta0;

  const int m = opts.restart;
  std::vector<Field> basis;
  basis.reserve(m + 1);
  // Column-major upper Hessenberg, (m+1) x m.
  std::vector<double> H(static_cast<std::size_t>(m + 1) * m, 0.0);
  auto h = [&](int i, int j) -> double& {
    return H[static_cast<std::size_t>(j) * (m + 1) + i];
  };
  std::vector<double> gs(m + 1), cs(m), sn(m), y(m);

  bool done = false;
  while (!done && report.iterations < opts.max_iters) {
    // (Re)compute the preconditioned residual for this cycle.
    Field r = rhs;
    if (report.iterations > 0) {
      Field ax = apply_checked(apply_A, x, "operator");
      axpy(-1.0, ax, r);
      r = precond(r);
    } else {
      r = mb;
    }
    double beta = norm2_plain(r);
    if (report.iterations == 0 && opts.record_history)
      report.preconditioned_residuals.push_back(beta);
    if (beta <= tol_abs) {
      report.converged = true;
      break;
    }

    basis.clear();
    scale(r, 1.0 / beta);
    basis.push_back(std::move(r));
    std::fill(gs.begin(), gs.end(), 0.0);
    gs[0] = beta;

    int cols = 0;
    for (int j = 0; j < m && report.iterations < opts.max_iters; ++j) {
      Field w = precond(apply_checked(apply_A, basis[j], "operator"));
      const double norm_before = norm2_plain(w);

      double proj_sq = 0.0;
      for (int i = 0; i <= j; ++i) {
        const double hij = kern::dot(basis[i].data(), w.data(), w.size());
        kern::axpy(-hij, basis[i].data(), w.data(), w.size());
        h(i, j) = hij;
        proj_sq += hij * hij;
      }
      double norm_after = norm2_plain(w);

      // In exact arithmetic |w|^2 = |proj|^2 + |w_perp|^2; a violation
      // signals loss of orthogonality and triggers a second pass.
      const double defect = std::abs(norm_before * norm_before - proj_sq -
                                     norm_after * norm_after);
      if (defect > kOrthLossThreshold * norm_before * norm_before) {
        for (int i = 0; i <= j; ++i) {
          const double c = kern::dot(basis[i].data(), w.data(), w.size());
          kern::axpy(-c, basis[i].data(), w.data(), w.size());
          h(i, j) += c;
        }
        norm_after = norm2_plain(w);
      }
      h(j + 1, j) = norm_after;

      // Apply the accumulated Givens rotations to the new column, then
      // form the rotation that annihilates the subdiagonal entry.
      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * h(i, j) + sn[i] * h(i + 1, j);
        h(i + 1, j) = -sn[i] * h(i, j) + cs[i] * h(i + 1, j);
        h(i, j) = t;
      }
      const double denom = std::hypot(h(j, j), h(j + 1, j));
      if (denom == 0.0) {
        cs[j] = 1.0;
        sn[j] = 0.0;
      } else {
        cs[j] = h(j, j) / denom;
        sn[j] = h(j + 1, j) / denom;
      }
      h(j, j) = cs[j] * h(j, j) + sn[j] * h(j + 1, j);
      h(j + 1, j) = 0.0;
      gs[j + 1] = -sn[j] * gs[j];
      gs[j] = cs[j] * gs[j];

      ++report.iterations;
      ++cols;
      const double res_est = std::abs(gs[j + 1]);
      if (opts.record_history)
        report.preconditioned_residuals.push_back(res_est);

      const bool happy = norm_after <= kBreakdownFloor;
      if (happy) report.breakdown = true;
      if (res_est <= tol_abs || happy) {
        report.converged = res_est <= tol_abs;
        done = true;
        break;
      }
      scale(w, 1.0 / norm_after);
      basis.push_back(std::move(w));
    }

    // Back-substitute R y = g on the columns actually built and update x.
    for (int i = cols - 1; i >= 0; --i) {
      double s = gs[i];
      for (int k = i + 1; k < cols; ++k) s -= h(i, k) * y[k];
      y[i] = h(i, i) != 0.0 ? s / h(i, i) : 0.0;
    }
    for (int i = 0; i < cols; ++i) axpy(y[i], basis[i], x);
  }

  if (!done && !report.converged) {
    // Ran out of iterations; check whether the final iterate happens to
    // satisfy the tolerance.
    Field ax = apply_checked(apply_A, x, "operator");
    Field r = rhs;
    axpy(-1.0, ax, r);
    report.converged = norm2_plain(precond(r)) <= tol_abs;
  }

  Field ax = apply_checked(apply_A, x, "operator");
  Field r = rhs;
  axpy(-1.0, ax, r);
  report.true_final_residual = norm2_plain(r);
  return {x, report};
}

}  // namespace gapsol
