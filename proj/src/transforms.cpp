#include "beltrami/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

#include "beltrami/parallel.hpp"

namespace beltrami {

namespace {

// The FFTW planner is not re-entrant; execution with new-array calls is.
std::mutex planner_mutex;

struct Buffer {
  explicit Buffer(std::size_t count)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count))) {
    if (!data) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* data;
};

}  // namespace

struct SpectralPlan::Fftw {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Fftw() {
    std::lock_guard lock(planner_mutex);
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

SpectralPlan::SpectralPlan(const Grid& grid) : grid_(grid), fftw_(std::make_unique<Fftw>()) {
  const std::size_t n = grid.n();
  const double scale = std::numbers::pi / grid.half_width();
  auto wrap = [n](std::size_t k) {
    return k < n / 2 ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
  };
  xi_.resize(grid.size());
  beurling_.resize(grid.size());
  cauchy_.resize(grid.size());
  dbar_.resize(grid.size());
  dz_.resize(grid.size());
  const complex half_i{0.0, 0.5};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t k = a * n + b;
      complex xi{scale * wrap(a), scale * wrap(b)};
      xi_[k] = xi;
      dbar_[k] = half_i * xi;
      dz_[k] = half_i * std::conj(xi);
      if (k != 0) {
        beurling_[k] = std::conj(xi) / xi;
        cauchy_[k] = complex{0.0, -2.0} / xi;
      }
    }

  Buffer scratch(grid.size());
  const int ni = static_cast<int>(n);
  std::lock_guard lock(planner_mutex);
  fftw_->forward = fftw_plan_dft_2d(ni, ni, scratch.data, scratch.data, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_->backward =
      fftw_plan_dft_2d(ni, ni, scratch.data, scratch.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!fftw_->forward || !fftw_->backward) throw Error("FFTW planning failed");
}

SpectralPlan::~SpectralPlan() = default;

ComplexField SpectralPlan::apply(const ComplexField& f, const std::vector<complex>& symbol) const {
  require_same_grid(grid_, f.grid());
  if (symbol.size() != grid_.size()) throw InvalidArgument("symbol table has the wrong size");
  Buffer work(grid_.size());
  auto* data = reinterpret_cast<complex*>(work.data);
  std::memcpy(work.data, f.samples().data(), grid_.size() * sizeof(complex));
  fftw_execute_dft(fftw_->forward, work.data, work.data);
  const double inv = 1.0 / static_cast<double>(grid_.size());
  parallel_for(grid_.size(), [&](std::size_t k) { data[k] *= symbol[k] * inv; });
  fftw_execute_dft(fftw_->backward, work.data, work.data);
  return ComplexField(grid_, std::vector<complex>(data, data + grid_.size()));
}

ComplexField SpectralPlan::beurling(const ComplexField& f) const { return apply(f, beurling_); }
ComplexField SpectralPlan::cauchy(const ComplexField& f) const { return apply(f, cauchy_); }
ComplexField SpectralPlan::dbar(const ComplexField& f) const { return apply(f, dbar_); }
ComplexField SpectralPlan::dz(const ComplexField& f) const { return apply(f, dz_); }

}  // namespace beltrami
