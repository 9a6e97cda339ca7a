#include "gapsol/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gapsol {

namespace {
// FFTW plan creation is not thread-safe; execution with the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

Dft::Dft(const Grid& g) : grid_(g) {
  const std::size_t total = g.num_points();
  std::vector<std::complex<double>> scratch(total);
  auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
  int dims[3] = {g.n, g.n, g.n};
  std::lock_guard<std::mutex> lock(planner_mutex());
  // In-place plans with FFTW_UNALIGNED so fftw_execute_dft may run on any
  // caller buffer. FFTW_ESTIMATE keeps planning deterministic.
  plan_fwd_ = fftw_plan_dft(g.dim, dims, ptr, ptr, FFTW_FORWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  plan_inv_ = fftw_plan_dft(g.dim, dims, ptr, ptr, FFTW_BACKWARD,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan_fwd_ || !plan_inv_) throw std::runtime_error("fftw plan creation failed");
}

Dft::~Dft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (plan_fwd_) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  if (plan_inv_) fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
}

void Dft::forward(const Field& f, std::vector<std::complex<double>>& out) const {
  // The transform only depends on the index lattice, not the box geometry.
  if (f.grid.dim != grid_.dim || f.grid.n != grid_.n)
    throw std::invalid_argument("Dft::forward: grid mismatch");
  const std::size_t total = grid_.num_points();
  out.resize(total);
  for (std::size_t i = 0; i < total; ++i) out[i] = f.values[i];
  auto* ptr = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), ptr, ptr);
  const double inv_total = 1.0 / static_cast<double>(total);
  double* d = reinterpret_cast<double*>(out.data());
  for (std::size_t i = 0; i < 2 * total; ++i) d[i] *= inv_total;
}

void Dft::inverse(std::vector<std::complex<double>>& buf, Field& out,
                  double tol_rel) const {
  const std::size_t total = grid_.num_points();
  if (buf.size() != total)
    throw std::invalid_argument("Dft::inverse: spectral buffer size mismatch");
  if (out.grid.dim != grid_.dim || out.grid.n != grid_.n)
    throw std::invalid_argument("Dft::inverse: output grid mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
  fftw_execute_dft(static_cast<fftw_plan>(plan_inv_), ptr, ptr);

  out.values.resize(total);
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    const double re = buf[i].real();
    const double im = buf[i].imag();
    out.values[i] = re;
    max_re = std::max(max_re, std::abs(re));
    max_im = std::max(max_im, std::abs(im));
  }
  if (max_im > tol_rel * std::max(max_re, 1e-300))
    throw std::runtime_error(
        "Dft::inverse: imaginary residue above tolerance (spectral data not "
        "Hermitian-symmetric?)");
}

const Dft& dft_for(const Grid& g) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<Dft>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(g.dim, g.n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<Dft>(g)).first;
  return *it->second;
}

}  // namespace gapsol
