#pragma once

#include <cstdint>
#include <vector>

#include "beltrami/coefficients.hpp"
#include "beltrami/field.hpp"
#include "beltrami/neumann.hpp"
#include "beltrami/report.hpp"

namespace beltrami {

struct PointPair {
  complex a;
  complex b;
};

/// Pairs of points drawn uniformly from the disk of the given radius.
std::vector<PointPair> random_pairs(std::size_t count, double radius, std::uint64_t seed);

/// Boundedness of a curve: max over the second half of the values against the
/// median of all values. Returns that ratio.
double tail_to_median_ratio(const std::vector<double>& values);

/// |u(a) - u(b)|^2 <= pi int_{3D} |grad u|^2 / log(e + 1/|a - b|) per pair,
/// with u sampled bilinearly and the gradient by finite differences. A max /
/// min principle probe on 50 random subdisks is reported as note "monotone".
ReportTable modulus_check(const RealField& u, const std::vector<PointPair>& pairs,
                          std::uint64_t seed = 1);

/// For the principal map f = rho(|z|) z/|z| / rho(1) and g = f^{-1}: compares
/// int (|g_wbar|^2 + |g_w - 1|^2) with 2 int_D K by 1-D quadrature.
ReportTable inverse_energy_check(const RadialProfile& profile);

/// |g(a) - g(b)|^2 <= (4 pi)^2 (R^2 + int_D K) / log(e + 1/|a - b|).
ReportTable continuity_bound_check(const RadialProfile& profile, double R,
                                   const std::vector<PointPair>& pairs);
/// Inverse of the principal radial map at w.
complex radial_inverse(const RadialProfile& profile, complex w);

/// Columns measure, lhs = ||chi_E sigma|| + ||chi_E S sigma||,
/// ratio = lhs / log^{1 - beta/2}(e + 1/|E|). Asserts tail/median ratio <= 2.
ReportTable restricted_norm_curve(const ComplexField& sigma, const ComplexField& s_sigma,
                                  const std::vector<RegionMask>& masks, double beta);
ReportTable restricted_norm_curve(const NeumannRun& run, const std::vector<RegionMask>& masks,
                                  double beta);

/// Disks E = D_r: columns r, measure, image = pi rho(r)^2, weighted =
/// image log^beta(e + 1/|E|). For beta < p the weighted column must stay
/// bounded; for beta >= p the growth factor is only reported (notes
/// "growth" = last/first and "last_increment").
ReportTable area_distortion_curve(const RadialProfile& profile, const std::vector<double>& radii,
                                  double beta, double p);

/// True when a sweep increases by at least 2x from first to last entry and
/// its last increment is positive.
bool shows_growth(const std::vector<double>& sweep);

struct RearrangedField {
  std::vector<double> values;
  double cell_measure = 0.0;
  /// cumulative[k] = integral of J* over (0, (k+1) cell_measure).
  std::vector<double> cumulative;

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  /// Integral of J* over (0, t).
  double integral_to(double t) const;
};

RearrangedField rearrange(const RealField& J, const RegionMask& region);

/// Radial epsilon sweep of int_{eps<|z|<1} |Df|^2 log^{beta-1}(e + |Df|) and
/// int J log^beta(e + J), |Df| = |f_z| + |f_zbar|. For beta < p asserts the
/// last two values of each sweep agree within 1%.
ReportTable regularity_integrals(const RadialProfile& profile, double beta, double p,
                                 const std::vector<double>& eps);
/// Grid integrals over the unit disk for a solver output.
ReportTable regularity_integrals(const PrincipalSolution& solution, double beta);

/// int_D |Df|^2 / log(e + |Df|) <= (2/p) int_D J + (2/p) int_D (e^{pK} - 1).
ReportTable orlicz_bound_check(const RadialProfile& profile, double p);
ReportTable orlicz_bound_check(const PrincipalSolution& solution, const BeltramiCoefficient& mu,
                               double p);

struct ElementaryConstants {
  double C1;
  double C2;
  ReportTable report;
};
/// Constants with x y log^{beta-1}(e + sqrt(x y)) <= C1 x log^beta(e + x) + C2 e^{p y}
/// from the split x < e^{py/2} / x >= e^{py/2}, validated on a 200 x 200
/// log-spaced lattice over x in [1e-12, 1e12], y in [1e-6, 100].
ElementaryConstants elementary_inequality_check(double beta, double p);

/// Rows n, measure of B_n, Chebychev bound, for n = 1..n_max.
ReportTable bad_set_check(const BeltramiCoefficient& mu, double p, double beta, int n_max);

/// Rows r, int_{D(r)} J, pi r^2 + 10 h r.
ReportTable bieberbach_check(const PrincipalSolution& solution, const std::vector<double>& radii);

}  // namespace beltrami
