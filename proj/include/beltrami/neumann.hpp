#pragma once

#include <vector>

#include "beltrami/coefficients.hpp"
#include "beltrami/field.hpp"
#include "beltrami/report.hpp"
#include "beltrami/transforms.hpp"

namespace beltrami {

/// Iteration state of the series sum_k psi_k with psi_0 = mu and
/// psi_k = mu S(psi_{k-1}).
class NeumannRun {
 public:
  NeumannRun(BeltramiCoefficient mu, const SpectralPlan& plan);

  /// Computes the next term.
  void advance(const SpectralPlan& plan);

  const BeltramiCoefficient& coefficient() const { return mu_; }
  /// Number of terms psi_0 .. psi_{terms-1} accumulated so far.
  int terms_computed() const { return static_cast<int>(norms_.size()); }
  const ComplexField& psi() const { return psi_; }
  const ComplexField& s_psi() const { return s_psi_; }
  /// sum psi_k, the approximation of f_zbar.
  const ComplexField& sigma() const { return sigma_; }
  /// sum S(psi_k), the approximation of f_z - 1.
  const ComplexField& s_sigma() const { return s_sigma_; }
  const std::vector<double>& norms() const { return norms_; }
  /// True once the norms failed to decrease over 8 consecutive steps.
  bool nonconvergent() const { return nonconvergent_; }

 private:
  BeltramiCoefficient mu_;
  ComplexField psi_;
  ComplexField s_psi_;
  ComplexField sigma_;
  ComplexField s_sigma_;
  std::vector<double> norms_;
  int rising_streak_ = 0;
  bool nonconvergent_ = false;
};

/// Functional form of NeumannRun::advance.
NeumannRun step(NeumannRun run, const SpectralPlan& plan);

struct PrincipalSolution {
  /// f(z) - z, mean zero.
  ComplexField displacement;
  ComplexField fz;
  ComplexField fzbar;
  /// |f_z|^2 - |f_zbar|^2.
  RealField jacobian;
  int terms = 0;
  bool nonconvergent = false;
  /// ||f_zbar - mu f_z|| / ||f_zbar||, or 0 when f_zbar vanishes.
  double residual = 0.0;
  std::vector<double> norms;

  /// Samples of f = z + displacement.
  ComplexField map() const;
};

/// Sums n_terms terms (psi_0 .. psi_{n_terms-1}) and assembles f = z + C(sigma).
PrincipalSolution solve(const BeltramiCoefficient& mu, const SpectralPlan& plan, int n_terms);
PrincipalSolution assemble(const NeumannRun& run, const SpectralPlan& plan);
/// Principal solution for the coefficient lambda mu, |lambda| < 1.
PrincipalSolution solve_lambda(const BeltramiCoefficient& mu, const SpectralPlan& plan,
                               complex lambda, int n_terms);
/// L2 bound k^{n_terms+1} sqrt(pi)/(1-k) on the discarded tail for sup |mu| = k.
double truncation_bound(double k, int n_terms);

/// Trapezoid rule for (1/2 pi i) times the contour integral over |lambda| = radius
/// of lambda^{-(n+2)} chi_E f^lambda_zbar. Node series run concurrently and
/// are reduced in node order.
ComplexField contour_term(const BeltramiCoefficient& mu, const SpectralPlan& plan, int n,
                          const RegionMask& E, double radius = 0.5, int nodes = 64);

/// Term norms ||psi_n|| of the continuum series for a radial coefficient
/// mu = (z/zbar) gamma(|z|) on the unit disk. For phi = e^{2i theta} G(log 1/r),
/// S phi is radial with profile G(u) - 2 int_0^u G, so the series reduces to
/// a 1-D recursion on a uniform u-lattice of spacing du up to u_max.
std::vector<double> radial_neumann_norms(const RadialProfile& profile, int n_terms,
                                         double u_max = 400.0, double du = 0.005);

/// Columns n, norm, envelope = (n+1)^{beta/2} norm. Notes carry the fitted
/// tail slope dhat (of -log norm against log n over n in [N/2, N]) and the
/// envelope maxima. Fails when the tail envelope exceeds 1.1 times the head.
ReportTable decay_report(const std::vector<double>& norms, double beta);
ReportTable decay_report(const NeumannRun& run, double beta);

/// Least-squares slope of -log norm against log n for n in [first, last].
double fitted_decay_slope(const std::vector<double>& norms, std::size_t first, std::size_t last);

}  // namespace beltrami
