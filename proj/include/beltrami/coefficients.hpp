#pragma once

#include <functional>
#include <memory>
#include <string>

#include "beltrami/field.hpp"

namespace beltrami {

/// Radial map f(z) = (z/|z|) rho(|z|), described in the logarithmic variable
/// u = log(1/t), t in (0, 1].
///
/// The profile is given by log|rho| and the stretch A = t rho'/rho, which may
/// be complex for twisted (spiralling) profiles; arg rho is then tracked by
/// twist(u). For t > 1 the map continues as rho(1) t.
class RadialProfile {
 public:
  using RealFn = std::function<double(double)>;
  using StretchFn = std::function<complex(double)>;

  RadialProfile(std::string label, RealFn log_rho, StretchFn stretch, RealFn twist = {});

  const std::string& label() const { return label_; }

  double log_rho_at(double u) const;
  complex stretch_at(double u) const;
  double twist_at(double u) const;

  /// |rho(t)| for t > 0.
  double rho(double t) const;
  /// d|rho|/dt.
  double drho(double t) const;
  /// Complex rho(t) = |rho| e^{i twist}.
  complex rho_complex(double t) const;
  /// gamma(t) = (t rho' - rho)/(t rho' + rho).
  complex gamma(double t) const;
  complex gamma_log(double u) const;
  /// K = (1 + |gamma|)/(1 - |gamma|).
  double distortion(double t) const;
  double distortion_log(double u) const;
  bool is_twisted() const { return static_cast<bool>(twist_); }

  /// The map itself.
  complex map(complex z) const;

 private:
  std::string label_;
  RealFn log_rho_;
  StretchFn stretch_;
  RealFn twist_;
};

/// Distortion of a stretch value A, (|A+1| + |A-1|)^2 / (4 Re A).
double distortion_from_stretch(complex A);

RadialProfile identity_profile();
/// rho(t) = t^a.
RadialProfile power_profile(double a);
/// Constant dilatation gamma: rho(t) = t^{(1+gamma)/(1-gamma)}.
RadialProfile stretch_profile(double gamma);
/// rho(t) = [log(e + 1/t)]^{-p/2} [log log(e + 1/t)]^{-1/2}.
RadialProfile gp_profile(double p);
/// rho_lambda(t) = exp int_1^t (1 + lambda gamma)/(1 - lambda gamma) ds/s with
/// gamma(s) = (alpha - log(5/s))/(alpha + log(5/s)).
RadialProfile alpha_profile(double alpha, complex lambda);
/// Profile with rho(1) = exp(log_rho_one) and stretch A(u), integrated by a
/// cumulative adaptive rule.
RadialProfile profile_from_stretch(std::string label, RadialProfile::StretchFn stretch,
                                   double log_rho_one = 0.0, double u_max = 800.0,
                                   double tol = 1e-10);
/// Same profile scaled so that rho(1) = 1.
RadialProfile normalized(const RadialProfile& profile);

/// Beltrami coefficient on a grid: |mu| < 1 at every sample, mu = 0 outside
/// the support radius.
class BeltramiCoefficient {
 public:
  BeltramiCoefficient(ComplexField mu, double support_radius = 1.0);

  const ComplexField& mu() const { return mu_; }
  const Grid& grid() const { return mu_.grid(); }
  double support_radius() const { return support_radius_; }
  double sup_norm() const { return mu_.sup_norm(); }
  /// K = (1 + |mu|)/(1 - |mu|).
  RealField distortion() const;

 private:
  ComplexField mu_;
  double support_radius_;
};

/// Largest modulus a sampled singular coefficient may take.
inline constexpr double kMaxModulus = 1.0 - 1e-12;

BeltramiCoefficient zero_coefficient(const Grid& grid);
/// mu(z) = k z/zbar on the unit disk (uniformly elliptic, |mu| = |k|).
BeltramiCoefficient constant_radial_coefficient(const Grid& grid, complex k);
/// Scales mu by lambda, |lambda| <= 1.
BeltramiCoefficient scaled(const BeltramiCoefficient& mu, complex lambda);
/// |out| <= 1 - 1/m: samples above the cap are pulled radially onto it.
BeltramiCoefficient truncate(const BeltramiCoefficient& mu, int m);
/// mu(z) = (z/zbar) gamma(|z|) for |z| <= 1, 0 outside.
BeltramiCoefficient radial_to_coefficient(const RadialProfile& profile, const Grid& grid);
/// mu = (K - 1)/(K + 1) z/zbar inside the unit disk.
BeltramiCoefficient coefficient_from_distortion(const RealField& K);

/// h^2 sum over samples in the unit disk of e^{p K}; +infinity on overflow.
double exp_integral(const RealField& K, double p);
/// 2 pi int_0^1 e^{p K(t)} t dt for a radial profile; +infinity if the
/// integrand overflows.
double exp_integral_radial(const RadialProfile& profile, double p);

/// Measure of B_n = {|mu| > 1 - beta/(2n + beta)}.
double bad_set_measure(const BeltramiCoefficient& mu, int n, double beta);
/// e^{-p} exp_integral e^{-4np/beta}, which dominates bad_set_measure.
double chebyshev_bound(double exp_integral_value, double p, int n, double beta);

}  // namespace beltrami
