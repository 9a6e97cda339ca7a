#include "gapsol/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gapsol/kernels.hpp"

namespace gapsol {

std::size_t Grid::num_points() const {
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= static_cast<std::size_t>(n);
  return total;
}

double Grid::volume() const { return std::pow(box_len, dim); }

double Grid::cell_volume() const { return std::pow(h, dim); }

std::array<int, 3> Grid::unravel(std::size_t idx) const {
  std::array<int, 3> j{0, 0, 0};
  for (int a = dim - 1; a >= 0; --a) {
    j[a] = static_cast<int>(idx % static_cast<std::size_t>(n));
    idx /= static_cast<std::size_t>(n);
  }
  return j;
}

std::size_t Grid::ravel(const std::array<int, 3>& j) const {
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a)
    idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(j[a]);
  return idx;
}

Grid build_grid(int dim, int n, double box_len, bool centered) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("build_grid: dim must be 1, 2 or 3, got " +
                                std::to_string(dim));
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument(
        "build_grid: n must be even and >= 4, got " + std::to_string(n));
  if (!(box_len > 0.0) || !std::isfinite(box_len))
    throw std::invalid_argument("build_grid: box_len must be positive");
  Grid g;
  g.dim = dim;
  g.n = n;
  g.box_len = box_len;
  g.h = box_len / n;
  g.origin = centered ? -box_len / 2.0 : 0.0;
  return g;
}

Field::Field(const Grid& g) : grid(g), values(g.num_points(), 0.0) {}

Field::Field(const Grid& g, double fill) : grid(g), values(g.num_points(), fill) {}

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid))
    throw std::invalid_argument("fields live on different grids");
}

bool all_finite(const Field& f) {
  for (double v : f.values)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_finite(const Field& f, const char* what) {
  if (!all_finite(f))
    throw std::invalid_argument(std::string(what) + ": field has non-finite entries");
}

double inf_norm(const Field& f) { return kern::max_abs(f.data(), f.size()); }

double dot(const Field& a, const Field& b) {
  require_same_grid(a, b);
  return kern::dot(a.data(), b.data(), a.size());
}

double inner(const Field& a, const Field& b) {
  return a.grid.cell_volume() * dot(a, b);
}

double norm2(const Field& f) { return std::sqrt(inner(f, f)); }

void axpy(double alpha, const Field& x, Field& y) {
  require_same_grid(x, y);
  kern::axpy(alpha, x.data(), y.data(), x.size());
}

void scale(Field& f, double alpha) { kern::scal(alpha, f.data(), f.size()); }

}  // namespace gapsol
