#include "beltrami/field.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "beltrami/parallel.hpp"

namespace beltrami {

Grid::Grid(std::size_t n, double half_width) : n_(n), half_width_(half_width) {
  if (n < 64 || (n & (n - 1)) != 0)
    throw InvalidArgument("grid size must be a power of two >= 64, got " + std::to_string(n));
  if (!(half_width >= 2.0) || !std::isfinite(half_width))
    throw InvalidArgument("grid half width must be >= 2");
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw GridMismatch();
}

namespace {

template <class T>
void check_samples(const Grid& grid, const std::vector<T>& s) {
  if (s.size() != grid.size()) throw InvalidArgument("sample count does not match grid");
  for (const auto& v : s) {
    bool ok;
    if constexpr (std::is_same_v<T, complex>)
      ok = std::isfinite(v.real()) && std::isfinite(v.imag());
    else
      ok = std::isfinite(v);
    if (!ok) throw InvalidField("field contains a non-finite sample");
  }
}

}  // namespace

RealField::RealField(Grid grid) : grid_(grid), samples_(grid.size(), 0.0) {}

RealField::RealField(Grid grid, std::vector<double> samples)
    : grid_(grid), samples_(std::move(samples)) {
  check_samples(grid_, samples_);
}

double RealField::min() const { return *std::min_element(samples_.begin(), samples_.end()); }
double RealField::max() const { return *std::max_element(samples_.begin(), samples_.end()); }

ComplexField::ComplexField(Grid grid) : grid_(grid), samples_(grid.size(), complex{}) {}

ComplexField::ComplexField(Grid grid, std::vector<complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  check_samples(grid_, samples_);
}

complex ComplexField::mean() const {
  complex s{};
  for (auto v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

double ComplexField::sup_norm() const {
  double m = 0.0;
  for (auto v : samples_) m = std::max(m, std::abs(v));
  return m;
}

RealField ComplexField::real() const {
  std::vector<double> out(samples_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = samples_[k].real();
  return RealField(grid_, std::move(out));
}

RealField ComplexField::imag() const {
  std::vector<double> out(samples_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = samples_[k].imag();
  return RealField(grid_, std::move(out));
}

RealField ComplexField::modulus() const {
  std::vector<double> out(samples_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::abs(samples_[k]);
  return RealField(grid_, std::move(out));
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  require_same_grid(grid_, other.grid_);
  parallel_for(samples_.size(), [&](std::size_t k) { samples_[k] += other.samples_[k]; });
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  require_same_grid(grid_, other.grid_);
  parallel_for(samples_.size(), [&](std::size_t k) { samples_[k] -= other.samples_[k]; });
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }

ComplexField operator*(const ComplexField& a, const ComplexField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<complex> out(a.size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = a[k] * b[k]; });
  return ComplexField(a.grid(), std::move(out));
}

ComplexField operator*(complex c, const ComplexField& f) {
  std::vector<complex> out(f.size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = c * f[k]; });
  return ComplexField(f.grid(), std::move(out));
}

ComplexField operator+(const ComplexField& f, complex c) {
  std::vector<complex> out(f.size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = f[k] + c; });
  return ComplexField(f.grid(), std::move(out));
}

ComplexField conj(const ComplexField& f) {
  std::vector<complex> out(f.size());
  parallel_for(out.size(), [&](std::size_t k) { out[k] = std::conj(f[k]); });
  return ComplexField(f.grid(), std::move(out));
}

ComplexField to_complex(const RealField& f) {
  std::vector<complex> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = f[k];
  return ComplexField(f.grid(), std::move(out));
}

RegionMask::RegionMask(Grid grid, std::vector<std::uint8_t> bits)
    : grid_(grid), bits_(std::move(bits)) {
  if (bits_.size() != grid_.size()) throw InvalidArgument("mask size does not match grid");
  for (auto& b : bits_) b = b ? 1 : 0;
}

RegionMask RegionMask::full(const Grid& grid) {
  return RegionMask(grid, std::vector<std::uint8_t>(grid.size(), 1));
}

RegionMask RegionMask::empty(const Grid& grid) {
  return RegionMask(grid, std::vector<std::uint8_t>(grid.size(), 0));
}

RegionMask RegionMask::disk(const Grid& grid, double radius, complex centre) {
  return from_predicate(grid, [&](complex z) { return std::abs(z - centre) < radius; });
}

RegionMask RegionMask::annulus(const Grid& grid, double inner, double outer) {
  return from_predicate(grid, [&](complex z) {
    double r = std::abs(z);
    return r > inner && r < outer;
  });
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

RegionMask RegionMask::complement() const {
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = bits_[k] ? 0 : 1;
  return RegionMask(grid_, std::move(out));
}

RegionMask RegionMask::operator&(const RegionMask& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = bits_[k] & other.bits_[k];
  return RegionMask(grid_, std::move(out));
}

RegionMask RegionMask::operator|(const RegionMask& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<std::uint8_t> out(bits_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = bits_[k] | other.bits_[k];
  return RegionMask(grid_, std::move(out));
}

double l2_norm(const ComplexField& f) {
  auto s = f.samples();
  double sum = parallel_sum(s.size(), [&](std::size_t k) { return std::norm(s[k]); });
  return std::sqrt(f.grid().cell_area() * sum);
}

double l2_norm(const RealField& f) {
  auto s = f.samples();
  double sum = parallel_sum(s.size(), [&](std::size_t k) { return s[k] * s[k]; });
  return std::sqrt(f.grid().cell_area() * sum);
}

ComplexField restrict(const ComplexField& f, const RegionMask& mask) {
  require_same_grid(f.grid(), mask.grid());
  std::vector<complex> out(f.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = mask.contains(k) ? f[k] : complex{};
  return ComplexField(f.grid(), std::move(out));
}

double measure(const RegionMask& mask) {
  return static_cast<double>(mask.count()) * mask.grid().cell_area();
}

double image_measure(const RealField& jacobian, const RegionMask& mask) {
  require_same_grid(jacobian.grid(), mask.grid());
  for (std::size_t k = 0; k < jacobian.size(); ++k)
    if (mask.contains(k) && jacobian[k] < -1e-9)
      throw InvalidField("negative Jacobian sample inside the region");
  return integrate(jacobian, mask);
}

double integrate(const RealField& f, const RegionMask& mask) {
  require_same_grid(f.grid(), mask.grid());
  double sum = parallel_sum(f.size(), [&](std::size_t k) { return mask.contains(k) ? f[k] : 0.0; });
  return sum * f.grid().cell_area();
}

double sample_bilinear(const RealField& f, complex z) {
  const Grid& g = f.grid();
  const std::size_t n = g.n();
  const double h = g.spacing();
  auto locate = [&](double x, std::size_t& i0, double& w) {
    double s = (x + g.half_width()) / h - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(n - 1));
    i0 = std::min(static_cast<std::size_t>(s), n - 2);
    w = s - static_cast<double>(i0);
  };
  std::size_t i, j;
  double wx, wy;
  locate(z.real(), i, wx);
  locate(z.imag(), j, wy);
  return (1 - wx) * (1 - wy) * f[g.index(i, j)] + wx * (1 - wy) * f[g.index(i + 1, j)] +
         (1 - wx) * wy * f[g.index(i, j + 1)] + wx * wy * f[g.index(i + 1, j + 1)];
}

namespace {

// Derivative along one axis of a line of samples with stride.
void differentiate_line(const double* in, double* out, std::size_t n, std::size_t stride, double h) {
  auto v = [&](std::size_t k) { return in[k * stride]; };
  for (std::size_t k = 2; k + 2 < n; ++k)
    out[k * stride] = (v(k - 2) - 8 * v(k - 1) + 8 * v(k + 1) - v(k + 2)) / (12 * h);
  out[0] = (-3 * v(0) + 4 * v(1) - v(2)) / (2 * h);
  out[stride] = (v(2) - v(0)) / (2 * h);
  out[(n - 2) * stride] = (v(n - 1) - v(n - 3)) / (2 * h);
  out[(n - 1) * stride] = (3 * v(n - 1) - 4 * v(n - 2) + v(n - 3)) / (2 * h);
}

}  // namespace

Gradient gradient(const RealField& f) {
  const Grid& g = f.grid();
  const std::size_t n = g.n();
  std::vector<double> dx(g.size()), dy(g.size());
  const double* in = f.samples().data();
  parallel_for(n, [&](std::size_t line) {
    differentiate_line(in + line, dx.data() + line, n, n, g.spacing());
    differentiate_line(in + line * n, dy.data() + line * n, n, 1, g.spacing());
  });
  return {RealField(g, std::move(dx)), RealField(g, std::move(dy))};
}

}  // namespace beltrami
