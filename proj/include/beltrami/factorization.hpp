#pragma once

#include "beltrami/coefficients.hpp"
#include "beltrami/report.hpp"

namespace beltrami {

/// Poincare distance log((1 + |w|)/(1 - |w|)) from 0 to w in the unit disk.
double hyperbolic_distance(complex w);
/// Poincare distance between two points of the unit disk.
double hyperbolic_distance(complex a, complex b);

/// Pointwise split of mu at budget M: nu lies on the segment [0, mu] at
/// hyperbolic distance max(d - log M, 0) from 0, where d is the distance to mu;
/// kappa is the remaining step from nu to mu, with modulus tanh(min(d, log M)/2).
struct SplitPoint {
  complex nu;
  complex kappa;
};
SplitPoint split_point(complex mu, double M);

struct SplitResult {
  BeltramiCoefficient nu;
  /// kappa in z-coordinates, with the unimodular factor set to 1.
  ComplexField kappa_tilde;
  double M;
  RealField K_nu;
  RealField K_mu;
};

SplitResult hyperbolic_split(const BeltramiCoefficient& mu, double M);

/// Dilatation of the outer map g in f = g o F, given mu_f, mu_F and the
/// unimodular phase F_z/|F_z|: (mu_f - mu_F)/(1 - mu_f conj(mu_F)) phase^2.
complex compose_dilatation(complex mu_f, complex mu_F, complex phase);
/// Inverse of compose_dilatation with phase 1: recovers mu_f from (kappa, nu).
complex recover_dilatation(complex kappa, complex nu);

/// Columns lhs = int e^{p M K_nu}, rhs = e^{p M} int e^{p K_mu}; one checked row.
ReportTable exp_bound_check(const SplitResult& split, double p);

/// Per-sample worst violations of the split identities; every column should
/// be <= 0 up to the listed rounding slack.
ReportTable split_violation_report(const BeltramiCoefficient& mu, const SplitResult& split);

/// rho_f = rho_g o rho_F for untwisted profiles with rho_F(1) = 1.
RadialProfile compose_radial(const RadialProfile& F, const RadialProfile& g);

/// Radial split of a profile at budget M: F carries nu (stretch capped
/// hyperbolically by M) and g = f o F^{-1} is rebuilt by integrating its own
/// stretch in its own log variable.
struct RadialSplit {
  RadialProfile F;
  RadialProfile g;
};
RadialSplit split_radial(const RadialProfile& f, double M);

}  // namespace beltrami
