#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gapsol/kernels.hpp"

using namespace gapsol;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

const std::vector<std::size_t> kSizes = {0, 1, 3, 4, 7, 15, 16, 33, 1000, 4099};

}  // namespace

TEST_CASE("dot matches a long-double reference") {
  std::mt19937_64 rng(7);
  for (std::size_t n : kSizes) {
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    long double ref = 0.0L;
    for (std::size_t i = 0; i < n; ++i)
      ref += static_cast<long double>(a[i]) * b[i];
    const double got = kern::dot(a.data(), b.data(), n);
    CHECK(std::abs(got - static_cast<double>(ref)) <=
          1e-13 * std::max(1.0, std::abs(static_cast<double>(ref))));
  }
}

TEST_CASE("elementwise op semantics") {
  std::mt19937_64 rng(11);
  for (std::size_t n : kSizes) {
    auto x = random_vec(n, rng);
    auto y = random_vec(n, rng);

    auto y2 = y;
    kern::axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y2[i] == y[i] + 0.37 * x[i]);

    auto x2 = x;
    kern::scal(-1.25, x2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(x2[i] == -1.25 * x[i]);

    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    CHECK(kern::max_abs(x.data(), n) == m);

    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {x[i], y[i]};
    auto s = random_vec(n, rng);
    auto z2 = z;
    kern::cmul_real(z2.data(), s.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(z2[i].real() == x[i] * s[i]);
      CHECK(z2[i].imag() == y[i] * s[i]);
    }

    auto lu = random_vec(n, rng);
    auto v = random_vec(n, rng);
    std::vector<double> out(n);
    kern::linop_combine(out.data(), x.data(), lu.data(), v.data(), 0.5, 3.25, n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(out[i] == 0.5 * x[i] + (lu[i] - 3.25) * v[i]);
  }
}

TEST_CASE("scalar and simd backends agree") {
  if (kern::active_backend() != kern::Backend::avx2) {
    MESSAGE("avx2 not available at runtime; equivalence covered by scalar only");
    return;
  }
  std::mt19937_64 rng(23);
  for (std::size_t n : kSizes) {
    auto a = random_vec(n, rng);
    auto b = random_vec(n, rng);
    auto lu = random_vec(n, rng);
    auto s = random_vec(n, rng);
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = {a[i], b[i]};

    kern::force_backend(kern::Backend::scalar);
    const double dot_s = kern::dot(a.data(), b.data(), n);
    const double max_s = kern::max_abs(a.data(), n);
    auto y_s = b;
    kern::axpy(1.7, a.data(), y_s.data(), n);
    auto x_s = a;
    kern::scal(0.3, x_s.data(), n);
    auto z_s = z;
    kern::cmul_real(z_s.data(), s.data(), n);
    std::vector<double> lo_s(n);
    kern::linop_combine(lo_s.data(), a.data(), lu.data(), b.data(), 0.5, -2.0, n);

    kern::force_backend(kern::Backend::avx2);
    const double dot_v = kern::dot(a.data(), b.data(), n);
    const double max_v = kern::max_abs(a.data(), n);
    auto y_v = b;
    kern::axpy(1.7, a.data(), y_v.data(), n);
    auto x_v = a;
    kern::scal(0.3, x_v.data(), n);
    auto z_v = z;
    kern::cmul_real(z_v.data(), s.data(), n);
    std::vector<double> lo_v(n);
    kern::linop_combine(lo_v.data(), a.data(), lu.data(), b.data(), 0.5, -2.0, n);

    kern::force_backend(std::nullopt);

    // Reductions reassociate; elementwise ops must match bit for bit.
    CHECK(std::abs(dot_v - dot_s) <= 1e-13 * std::max(1.0, std::abs(dot_s)));
    CHECK(max_v == max_s);
    CHECK(y_v == y_s);
    CHECK(x_v == x_s);
    CHECK(lo_v == lo_s);
    bool z_equal = true;
    for (std::size_t i = 0; i < n; ++i)
      z_equal = z_equal && z_v[i] == z_s[i];
    CHECK(z_equal);
  }
}

TEST_CASE("backend override is honored") {
  kern::force_backend(kern::Backend::scalar);
  CHECK(kern::active_backend() == kern::Backend::scalar);
  kern::force_backend(std::nullopt);
  CHECK((kern::active_backend() == kern::Backend::scalar ||
         kern::active_backend() == kern::Backend::avx2));
}
