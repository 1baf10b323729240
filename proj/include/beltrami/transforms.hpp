#pragma once

#include <memory>
#include <vector>

#include "beltrami/field.hpp"

namespace beltrami {

/// Fourier-multiplier transforms on the 2L-periodic square.
///
/// Mode (k1, k2) has frequency xi = (pi/L)(k1 + i k2) with k in [-n/2, n/2).
/// Symbols: dbar -> (i/2) xi, dz -> (i/2) conj(xi), Beurling -> conj(xi)/xi,
/// Cauchy -> -2i/xi. The Beurling and Cauchy symbols vanish at xi = 0.
///
/// A plan is immutable and may be shared; every call works in its own
/// scratch buffer.
class SpectralPlan {
 public:
  explicit SpectralPlan(const Grid& grid);
  ~SpectralPlan();
  SpectralPlan(const SpectralPlan&) = delete;
  SpectralPlan& operator=(const SpectralPlan&) = delete;

  const Grid& grid() const { return grid_; }
  /// xi for the mode stored at FFT index (k1, k2).
  complex frequency(std::size_t k1, std::size_t k2) const { return xi_[k1 * grid_.n() + k2]; }

  ComplexField beurling(const ComplexField& f) const;
  ComplexField cauchy(const ComplexField& f) const;
  ComplexField dbar(const ComplexField& f) const;
  ComplexField dz(const ComplexField& f) const;

  /// Inverse transform of symbol(xi) * fhat(xi) for an arbitrary symbol table
  /// laid out like frequency().
  ComplexField apply(const ComplexField& f, const std::vector<complex>& symbol) const;

 private:
  struct Fftw;
  Grid grid_;
  std::vector<complex> xi_;
  std::vector<complex> beurling_;
  std::vector<complex> cauchy_;
  std::vector<complex> dbar_;
  std::vector<complex> dz_;
  std::unique_ptr<Fftw> fftw_;
};

}  // namespace beltrami
