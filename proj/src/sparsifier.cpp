#include "gapsol/sparsifier.hpp"

#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <chrono>
#include <cmath>
#include <vector>

namespace gapsol {

namespace {

using Offset = std::array<int, 3>;

int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

// Offsets with inner < |m|_inf <= outer, row-major over [-outer, outer]^dim.
// inner = -1 yields the full cube.
std::vector<Offset> shell_offsets(int dim, int inner, int outer) {
  std::vector<Offset> out;
  Offset m{0, 0, 0};
  const auto norm_inf = [dim](const Offset& o) {
    int v = 0;
    for (int a = 0; a < dim; ++a) v = std::max(v, std::abs(o[a]));
    return v;
  };
  std::vector<int> range;
  for (int v = -outer; v <= outer; ++v) range.push_back(v);
  const std::size_t per_axis = range.size();
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= per_axis;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int a = dim - 1; a >= 0; --a) {
      m[a] = range[rest % per_axis];
      rest /= per_axis;
    }
    const int nrm = norm_inf(m);
    if (nrm > inner && nrm <= outer) out.push_back(m);
  }
  return out;
}

double kernel_at(const Field& kernel, const Offset& off) {
  const Grid& g = kernel.grid;
  std::size_t idx = 0;
  for (int a = 0; a < g.dim; ++a)
    idx = idx * static_cast<std::size_t>(g.n) +
          static_cast<std::size_t>(wrap(off[a], g.n));
  return kernel.values[idx];
}

Offset offset_diff(const Offset& a, const Offset& b) {
  return Offset{a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

}  // namespace

std::size_t Stencil::stencil_size() const {
  std::size_t s = 1;
  for (int a = 0; a < grid.dim; ++a)
    s *= static_cast<std::size_t>(2 * b + 1);
  return s;
}

Stencil build_stencil(const GreenKernel& kern, int b, int w) {
  const Grid& g = kern.grid;
  if (b < 0 || w < 1) throw std::invalid_argument("build_stencil: need b >= 0, w >= 1");
  if (2 * (b + w) + 1 > g.n)
    throw std::invalid_argument("build_stencil: grid too small for b + w");

  const auto mu = shell_offsets(g.dim, -1, b);
  const auto annulus = shell_offsets(g.dim, b, b + w);
  if (mu.size() >= annulus.size())
    throw std::invalid_argument(
        "build_stencil: annulus smaller than stencil; increase w");

  // G is a periodic convolution, so one kernel gives every entry of
  // G(mu, C) as a translate.
  Eigen::MatrixXd gmat(mu.size(), annulus.size());
  for (std::size_t r = 0; r < mu.size(); ++r)
    for (std::size_t c = 0; c < annulus.size(); ++c)
      gmat(r, c) = kernel_at(kern.kernel, offset_diff(mu[r], annulus[c]));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gmat, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const Eigen::Index last = sv.size() - 1;

  Stencil st;
  st.grid = g;
  st.b = b;
  st.w = w;
  st.sigma_min = sv(last);
  st.gmat_norm = sv(0);
  st.degraded = st.sigma_min > kStencilQualityThreshold * st.gmat_norm;

  Eigen::VectorXd alpha = svd.matrixU().col(last);
  const std::size_t center = (mu.size() - 1) / 2;  // offset m = 0
  if (alpha(static_cast<Eigen::Index>(center)) < 0.0) alpha = -alpha;
  st.alpha.assign(alpha.data(), alpha.data() + alpha.size());

  // beta(m) = (QG)(j, j+m) = sum_{m'} alpha(m') g(m' - m).
  st.beta.resize(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
      acc += st.alpha[k] * kernel_at(kern.kernel, offset_diff(mu[k], mu[i]));
    st.beta[i] = acc;
  }
  return st;
}

SparseMat assemble_P(const Stencil& st, const Field& Lu, double l) {
  if (!(st.grid == Lu.grid))
    throw std::invalid_argument("assemble_P: stencil and Lu grids differ");
  const Grid& g = st.grid;
  const auto mu = shell_offsets(g.dim, -1, st.b);
  const std::size_t total = g.num_points();

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(total * mu.size());
  for (std::size_t j = 0; j < total; ++j) {
    const auto jj = g.unravel(j);
    for (std::size_t mi = 0; mi < mu.size(); ++mi) {
      std::size_t col = 0;
      for (int a = 0; a < g.dim; ++a)
        col = col * static_cast<std::size_t>(g.n) +
              static_cast<std::size_t>(wrap(jj[a] + mu[mi][a], g.n));
      const double val = st.alpha[mi] + st.beta[mi] * (Lu.values[col] - l);
      trips.emplace_back(static_cast<int>(j), static_cast<int>(col), val);
    }
  }
  SparseMat P(static_cast<int>(total), static_cast<int>(total));
  P.setFromTriplets(trips.begin(), trips.end());
  return P;
}

Field stencil_apply(const Stencil& st, const Field& y) {
  if (!(st.grid == y.grid))
    throw std::invalid_argument("stencil_apply: grid mismatch");
  const Grid& g = st.grid;
  const auto mu = shell_offsets(g.dim, -1, st.b);
  const std::size_t total = g.num_points();

  // Per-axis wrapped index tables, one per stencil offset value.
  const int span = 2 * st.b + 1;
  std::vector<std::vector<std::size_t>> wrapped(span);
  for (int o = -st.b; o <= st.b; ++o) {
    auto& tab = wrapped[o + st.b];
    tab.resize(g.n);
    for (int j = 0; j < g.n; ++j)
      tab[j] = static_cast<std::size_t>(wrap(j + o, g.n));
  }

  Field z(y.grid);
  for (std::size_t j = 0; j < total; ++j) {
    const auto jj = g.unravel(j);
    double acc = 0.0;
    for (std::size_t mi = 0; mi < mu.size(); ++mi) {
      std::size_t src = 0;
      for (int a = 0; a < g.dim; ++a)
        src = src * static_cast<std::size_t>(g.n) +
              wrapped[mu[mi][a] + st.b][jj[a]];
      acc += st.alpha[mi] * y.values[src];
    }
    z.values[j] = acc;
  }
  return z;
}

struct Factorization::Impl {
  Eigen::SparseLU<SparseMat, Eigen::COLAMDOrdering<int>> lu;
  FactorStats stats;
};

Factorization Factorization::compute(const SparseMat& P) {
  auto impl = std::make_shared<Impl>();
  const auto t0 = std::chrono::steady_clock::now();
  impl->lu.analyzePattern(P);
  impl->lu.factorize(P);
  const auto t1 = std::chrono::steady_clock::now();
  if (impl->lu.info() != Eigen::Success)
    throw PreconditionerError(
        "sparse LU factorization failed (matrix numerically singular); "
        "retry with a larger stencil half-width b");
  impl->stats.nnz_matrix = P.nonZeros();
  impl->stats.nnz_factors = impl->lu.nnzL() + impl->lu.nnzU();
  impl->stats.factor_seconds = std::chrono::duration<double>(t1 - t0).count();
  Factorization f;
  f.impl_ = std::move(impl);
  return f;
}

void Factorization::solve(const double* rhs, double* x, std::size_t n) const {
  Eigen::Map<const Eigen::VectorXd> b(rhs, static_cast<Eigen::Index>(n));
  Eigen::VectorXd sol = impl_->lu.solve(b);
  if (impl_->lu.info() != Eigen::Success)
    throw PreconditionerError("sparse LU solve failed");
  Eigen::Map<Eigen::VectorXd>(x, static_cast<Eigen::Index>(n)) = sol;
}

const FactorStats& Factorization::stats() const { return impl_->stats; }

PrecondState build_preconditioner(GreenKernel kern, const Field& Lu, int b, int w) {
  const auto t0 = std::chrono::steady_clock::now();
  PrecondState state;
  state.stencil = build_stencil(kern, b, w);
  SparseMat P = assemble_P(state.stencil, Lu, kern.effective_l());
  state.fact = Factorization::compute(P);
  state.kern = std::move(kern);
  const auto t1 = std::chrono::steady_clock::now();
  state.setup_seconds = std::chrono::duration<double>(t1 - t0).count();
  return state;
}

Field apply_preconditioner(const PrecondState& state, const Field& r) {
  Field y = apply_G(state.kern, r);
  Field z = stencil_apply(state.stencil, y);
  Field v(r.grid);
  state.fact.solve(z.data(), v.data(), z.size());
  return v;
}

}  // namespace gapsol
