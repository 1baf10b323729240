#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "beltrami/error.hpp"

namespace beltrami {

using complex = std::complex<double>;

/// Uniform cell-centred grid over the square [-L, L]^2.
///
/// Sample (i, j) sits at z = (-L + (i + 1/2) h) + i (-L + (j + 1/2) h) and is
/// stored at linear index i * n + j. No sample ever lies on the origin.
class Grid {
 public:
  /// Requires n >= 64, n a power of two, and L >= 2.
  Grid(std::size_t n, double half_width);

  std::size_t n() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / static_cast<double>(n_); }
  double cell_area() const { return spacing() * spacing(); }
  std::size_t size() const { return n_ * n_; }
  /// Total area of the square, 4 L^2.
  double area() const { return 4.0 * half_width_ * half_width_; }

  double coordinate(std::size_t i) const {
    return -half_width_ + (static_cast<double>(i) + 0.5) * spacing();
  }
  std::size_t index(std::size_t i, std::size_t j) const { return i * n_ + j; }
  complex point(std::size_t index) const {
    return {coordinate(index / n_), coordinate(index % n_)};
  }

  bool operator==(const Grid&) const = default;

 private:
  std::size_t n_;
  double half_width_;
};

class RegionMask;

/// Real samples on a Grid (Jacobians, distortion functions, matrix entries).
class RealField {
 public:
  explicit RealField(Grid grid);
  RealField(Grid grid, std::vector<double> samples);

  template <class F>
  static RealField from_function(const Grid& grid, F&& f) {
    std::vector<double> s(grid.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = f(grid.point(k));
    return RealField(grid, std::move(s));
  }

  const Grid& grid() const { return grid_; }
  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }

  double min() const;
  double max() const;

 private:
  Grid grid_;
  std::vector<double> samples_;
};

/// Complex samples on a Grid. Immutable once built; all samples finite.
class ComplexField {
 public:
  explicit ComplexField(Grid grid);
  ComplexField(Grid grid, std::vector<complex> samples);

  template <class F>
  static ComplexField from_function(const Grid& grid, F&& f) {
    std::vector<complex> s(grid.size());
    for (std::size_t k = 0; k < s.size(); ++k) s[k] = f(grid.point(k));
    return ComplexField(grid, std::move(s));
  }

  const Grid& grid() const { return grid_; }
  std::span<const complex> samples() const { return samples_; }
  complex operator[](std::size_t k) const { return samples_[k]; }
  std::size_t size() const { return samples_.size(); }

  /// Arithmetic mean of the samples (the zero Fourier mode).
  complex mean() const;
  double sup_norm() const;

  RealField real() const;
  RealField imag() const;
  RealField modulus() const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);

 private:
  Grid grid_;
  std::vector<complex> samples_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
/// Pointwise product.
ComplexField operator*(const ComplexField& a, const ComplexField& b);
ComplexField operator*(complex c, const ComplexField& f);
ComplexField operator+(const ComplexField& f, complex c);
ComplexField conj(const ComplexField& f);
ComplexField to_complex(const RealField& f);

/// Sample-aligned subset of the grid.
class RegionMask {
 public:
  RegionMask(Grid grid, std::vector<std::uint8_t> bits);

  static RegionMask full(const Grid& grid);
  static RegionMask empty(const Grid& grid);
  /// Cells whose centre lies strictly inside |z - centre| < radius.
  static RegionMask disk(const Grid& grid, double radius, complex centre = {});
  /// Cells with inner < |z| < outer.
  static RegionMask annulus(const Grid& grid, double inner, double outer);
  template <class Pred>
  static RegionMask from_predicate(const Grid& grid, Pred&& pred) {
    std::vector<std::uint8_t> bits(grid.size());
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = pred(grid.point(k)) ? 1 : 0;
    return RegionMask(grid, std::move(bits));
  }

  const Grid& grid() const { return grid_; }
  bool contains(std::size_t k) const { return bits_[k] != 0; }
  std::span<const std::uint8_t> bits() const { return bits_; }
  std::size_t count() const;

  RegionMask complement() const;
  RegionMask operator&(const RegionMask& other) const;
  RegionMask operator|(const RegionMask& other) const;

 private:
  Grid grid_;
  std::vector<std::uint8_t> bits_;
};

/// sqrt(h^2 * sum |f|^2).
double l2_norm(const ComplexField& f);
double l2_norm(const RealField& f);
/// Zeroes the samples outside E.
ComplexField restrict(const ComplexField& f, const RegionMask& mask);
/// count * h^2.
double measure(const RegionMask& mask);
/// h^2 * sum_E J. A sample of J below -1e-9 inside E raises InvalidField.
double image_measure(const RealField& jacobian, const RegionMask& mask);
/// h^2 * sum_E f, no sign condition.
double integrate(const RealField& f, const RegionMask& mask);

/// Bilinear interpolation between cell centres; exact for affine fields.
double sample_bilinear(const RealField& f, complex z);

/// Fourth-order central differences in the interior, second-order one-sided
/// differences on the two outermost cells. Does not assume periodicity.
struct Gradient {
  RealField dx;
  RealField dy;
};
Gradient gradient(const RealField& f);

void require_same_grid(const Grid& a, const Grid& b);

}  // namespace beltrami
