#include "gapsol/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gapsol/kernels.hpp"
#include "gapsol/spectral.hpp"

namespace gapsol {

namespace {

constexpr double kPi = std::numbers::pi;

// (V0/2) * sum_i sin^2(pi x_i); lattice period 1 in physical coordinates.
double kerr_potential(const KerrModel& k, const double* x, int dim) {
  double s = 0.0;
  for (int a = 0; a < dim; ++a) {
    const double sn = std::sin(kPi * x[a]);
    s += sn * sn;
  }
  return 0.5 * k.V0 * s;
}

// 1 + A^2 * prod_i cos^2(pi x_i), the saturation denominator at u = 0.
double saturable_den0(const SaturableModel& s, const double* x, int dim) {
  double p = 1.0;
  for (int a = 0; a < dim; ++a) {
    const double cs = std::cos(kPi * x[a]);
    p *= cs * cs;
  }
  return 1.0 + s.A * s.A * p;
}

template <typename PointFn>
Field map_points(const Field& u, PointFn&& fn) {
  Field out(u.grid);
  const Grid& g = u.grid;
  std::array<double, 3> x{0.0, 0.0, 0.0};
  const std::size_t total = g.num_points();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto j = g.unravel(idx);
    for (int a = 0; a < g.dim; ++a) x[a] = g.coord(j[a]);
    out.values[idx] = fn(x.data(), u.values[idx]);
  }
  return out;
}

}  // namespace

Model make_kerr(double V0, int sigma, double kinetic) {
  if (sigma != 1 && sigma != -1)
    throw std::invalid_argument("make_kerr: sigma must be +1 or -1");
  return Model{KerrModel{V0, sigma}, kinetic};
}

Model make_saturable(double V0, double A, double kinetic) {
  return Model{SaturableModel{V0, A}, kinetic};
}

Model make_custom(std::function<double(const double*)> potential,
                  std::function<double(const double*, double)> nonlinear,
                  std::function<double(const double*, double)> nonlinear_du,
                  double kinetic) {
  if (!nonlinear || !nonlinear_du)
    throw std::invalid_argument("make_custom: nonlinear and nonlinear_du are required");
  return Model{CustomModel{std::move(potential), std::move(nonlinear),
                           std::move(nonlinear_du)},
               kinetic};
}

std::string model_kind_name(const Model& m) {
  if (std::holds_alternative<KerrModel>(m.kind)) return "kerr";
  if (std::holds_alternative<SaturableModel>(m.kind)) return "saturable";
  return "custom";
}

Field nonlinear_apply(const Model& m, const Field& u) {
  require_finite(u, "nonlinear_apply");
  const int dim = u.grid.dim;
  if (const auto* k = std::get_if<KerrModel>(&m.kind)) {
    const double sg = k->sigma;
    return map_points(u, [&](const double* x, double v) {
      return kerr_potential(*k, x, dim) * v - sg * v * v * v;
    });
  }
  if (const auto* s = std::get_if<SaturableModel>(&m.kind)) {
    return map_points(u, [&](const double* x, double v) {
      return s->V0 * v / (saturable_den0(*s, x, dim) + v * v);
    });
  }
  const auto& c = std::get<CustomModel>(m.kind);
  return map_points(u, [&](const double* x, double v) {
    double r = c.nonlinear(x, v);
    if (c.potential) r += c.potential(x) * v;
    return r;
  });
}

Field linearization(const Model& m, const Field& u) {
  require_finite(u, "linearization");
  const int dim = u.grid.dim;
  if (const auto* k = std::get_if<KerrModel>(&m.kind)) {
    const double sg = k->sigma;
    return map_points(u, [&](const double* x, double v) {
      return kerr_potential(*k, x, dim) - 3.0 * sg * v * v;
    });
  }
  if (const auto* s = std::get_if<SaturableModel>(&m.kind)) {
    return map_points(u, [&](const double* x, double v) {
      const double d0 = saturable_den0(*s, x, dim);
      const double den = d0 + v * v;
      return s->V0 * (d0 - v * v) / (den * den);
    });
  }
  const auto& c = std::get<CustomModel>(m.kind);
  return map_points(u, [&](const double* x, double v) {
    double r = c.nonlinear_du(x, v);
    if (c.potential) r += c.potential(x);
    return r;
  });
}

Field residual(const Model& m, const Field& u, double lambda) {
  Field r = apply_laplacian(u);
  scale(r, m.kinetic_factor);
  Field pot = nonlinear_apply(m, u);
  axpy(1.0, pot, r);
  axpy(-lambda, u, r);
  return r;
}

Field LinearizedOperator::apply(const Field& v) const {
  if (!(v.grid == grid))
    throw std::invalid_argument("LinearizedOperator::apply: grid mismatch");
  Field lap = apply_laplacian(v);
  Field out(grid);
  kern::linop_combine(out.data(), lap.data(), Lu.data(), v.data(), kinetic,
                      lambda, out.size());
  return out;
}

LinearizedOperator make_linearized(const Model& m, const Field& u, double lambda) {
  LinearizedOperator op;
  op.grid = u.grid;
  op.kinetic = m.kinetic_factor;
  op.lambda = lambda;
  op.Lu = linearization(m, u);
  op.l = mean(op.Lu);
  return op;
}

}  // namespace gapsol
