#include "beltrami/coefficients.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "beltrami/parallel.hpp"
#include "beltrami/quadrature.hpp"

namespace beltrami {

namespace {

constexpr double kE = std::numbers::e;

double log_of(double t) {
  if (!(t > 0)) throw InvalidArgument("radial profiles are evaluated at t > 0");
  return -std::log(t);
}

}  // namespace

RadialProfile::RadialProfile(std::string label, RealFn log_rho, StretchFn stretch, RealFn twist)
    : label_(std::move(label)),
      log_rho_(std::move(log_rho)),
      stretch_(std::move(stretch)),
      twist_(std::move(twist)) {}

double RadialProfile::log_rho_at(double u) const { return log_rho_(std::max(u, 0.0)); }
complex RadialProfile::stretch_at(double u) const { return u < 0 ? complex{1.0} : stretch_(u); }
double RadialProfile::twist_at(double u) const { return twist_ ? twist_(std::max(u, 0.0)) : 0.0; }

double RadialProfile::rho(double t) const {
  double u = log_of(t);
  if (u <= 0) return std::exp(log_rho_(0.0)) * t;
  return std::exp(log_rho_(u));
}

double RadialProfile::drho(double t) const {
  double u = log_of(t);
  if (u <= 0) return std::exp(log_rho_(0.0));
  return std::exp(log_rho_(u)) * stretch_(u).real() / t;
}

complex RadialProfile::rho_complex(double t) const {
  return std::polar(rho(t), twist_at(log_of(t)));
}

complex RadialProfile::gamma_log(double u) const {
  complex A = stretch_at(u);
  return (A - 1.0) / (A + 1.0);
}

complex RadialProfile::gamma(double t) const { return gamma_log(log_of(t)); }

double RadialProfile::distortion_log(double u) const {
  return distortion_from_stretch(stretch_at(u));
}

double RadialProfile::distortion(double t) const { return distortion_log(log_of(t)); }

complex RadialProfile::map(complex z) const {
  double t = std::abs(z);
  if (t == 0) return 0.0;
  return z / t * rho_complex(t);
}

double distortion_from_stretch(complex A) {
  double s = std::abs(A + 1.0) + std::abs(A - 1.0);
  return s * s / (4.0 * A.real());
}

RadialProfile identity_profile() {
  return RadialProfile("identity", [](double u) { return -u; }, [](double) { return complex{1.0}; });
}

RadialProfile power_profile(double a) {
  if (!(a > 0)) throw InvalidArgument("power profile needs a > 0");
  return RadialProfile(
      "power", [a](double u) { return -a * u; }, [a](double) { return complex{a}; });
}

RadialProfile stretch_profile(double gamma) {
  if (!(std::abs(gamma) < 1)) throw InvalidArgument("stretch profile needs |gamma| < 1");
  RadialProfile p = power_profile((1 + gamma) / (1 - gamma));
  return RadialProfile("stretch", [p](double u) { return p.log_rho_at(u); },
                       [p](double u) { return p.stretch_at(u); });
}

RadialProfile gp_profile(double p) {
  if (!(p > 0)) throw InvalidArgument("g_p profile needs p > 0");
  // Lg = log(e + e^u), written to stay accurate for large u.
  auto Lg = [](double u) { return u + std::log1p(kE * std::exp(-u)); };
  auto log_rho = [p, Lg](double u) {
    double L = Lg(u);
    return -0.5 * p * std::log(L) - 0.5 * std::log(std::log(L));
  };
  auto stretch = [p, Lg](double u) {
    double L = Lg(u);
    double s = 1.0 / (1.0 + kE * std::exp(-u));
    return complex{s * (p + 1.0 / std::log(L)) / (2.0 * L)};
  };
  return RadialProfile("gp", log_rho, stretch);
}

RadialProfile profile_from_stretch(std::string label, RadialProfile::StretchFn stretch,
                                   double log_rho_one, double u_max, double tol) {
  auto re = std::make_shared<CumulativeIntegral>(
      [stretch](double u) { return stretch(u).real(); }, u_max, 0.5, tol);
  bool twisted = false;
  for (double u : {0.0, 0.5, 3.0, 30.0, 300.0}) twisted = twisted || stretch(u).imag() != 0.0;
  RadialProfile::RealFn twist;
  if (twisted) {
    auto im = std::make_shared<CumulativeIntegral>(
        [stretch](double u) { return stretch(u).imag(); }, u_max, 0.5, tol);
    twist = [im](double u) { return -(*im)(u); };
  }
  return RadialProfile(
      std::move(label), [re, log_rho_one](double u) { return log_rho_one - (*re)(u); },
      std::move(stretch), std::move(twist));
}

RadialProfile alpha_profile(double alpha, complex lambda) {
  if (!(alpha > 0)) throw InvalidArgument("alpha profile needs alpha > 0");
  if (std::abs(lambda) > 1) throw InvalidArgument("alpha profile needs |lambda| <= 1");
  if (lambda == complex{}) {
    RadialProfile id = identity_profile();
    return RadialProfile("alpha", [id](double u) { return id.log_rho_at(u); },
                         [id](double u) { return id.stretch_at(u); });
  }
  const double log5 = std::log(5.0);
  auto stretch = [alpha, lambda, log5](double u) {
    double w = log5 + u;
    complex g = lambda * ((alpha - w) / (alpha + w));
    return (1.0 + g) / (1.0 - g);
  };
  return profile_from_stretch("alpha", stretch);
}

RadialProfile normalized(const RadialProfile& profile) {
  double shift = profile.log_rho_at(0.0);
  double twist0 = profile.twist_at(0.0);
  RadialProfile::RealFn twist;
  if (profile.is_twisted()) twist = [profile, twist0](double u) { return profile.twist_at(u) - twist0; };
  return RadialProfile(
      profile.label(), [profile, shift](double u) { return profile.log_rho_at(u) - shift; },
      [profile](double u) { return profile.stretch_at(u); }, std::move(twist));
}

BeltramiCoefficient::BeltramiCoefficient(ComplexField mu, double support_radius)
    : mu_(std::move(mu)), support_radius_(support_radius) {
  if (!(support_radius > 0)) throw InvalidArgument("support radius must be positive");
  const Grid& g = mu_.grid();
  for (std::size_t k = 0; k < g.size(); ++k) {
    double m = std::abs(mu_[k]);
    if (!(m < 1.0)) throw InvalidField("Beltrami coefficient reaches |mu| >= 1");
    if (m != 0.0 && std::abs(g.point(k)) > support_radius)
      throw InvalidField("Beltrami coefficient is nonzero outside its support radius");
  }
}

RealField BeltramiCoefficient::distortion() const {
  std::vector<double> K(mu_.size());
  parallel_for(K.size(), [&](std::size_t k) {
    double m = std::abs(mu_[k]);
    K[k] = (1 + m) / (1 - m);
  });
  return RealField(mu_.grid(), std::move(K));
}

BeltramiCoefficient zero_coefficient(const Grid& grid) { return BeltramiCoefficient(ComplexField(grid)); }

BeltramiCoefficient constant_radial_coefficient(const Grid& grid, complex k) {
  if (!(std::abs(k) < 1)) throw InvalidArgument("constant coefficient needs |k| < 1");
  return BeltramiCoefficient(ComplexField::from_function(grid, [k](complex z) {
    double r2 = std::norm(z);
    return r2 <= 1.0 ? k * z * z / r2 : complex{};
  }));
}

BeltramiCoefficient scaled(const BeltramiCoefficient& mu, complex lambda) {
  if (std::abs(lambda) > 1) throw InvalidArgument("scaling factor must satisfy |lambda| <= 1");
  return BeltramiCoefficient(lambda * mu.mu(), mu.support_radius());
}

BeltramiCoefficient truncate(const BeltramiCoefficient& mu, int m) {
  if (m < 1) throw InvalidArgument("truncation level m must be >= 1");
  const double cap = 1.0 - 1.0 / m;
  std::vector<complex> out(mu.mu().size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    complex v = mu.mu()[k];
    double a = std::abs(v);
    out[k] = a <= cap ? v : v * (cap / a);
  }
  return BeltramiCoefficient(ComplexField(mu.grid(), std::move(out)), mu.support_radius());
}

BeltramiCoefficient radial_to_coefficient(const RadialProfile& profile, const Grid& grid) {
  std::vector<complex> out(grid.size());
  parallel_for(out.size(), [&](std::size_t k) {
    complex z = grid.point(k);
    double r2 = std::norm(z);
    if (r2 > 1.0) return;
    complex g = profile.gamma_log(-0.5 * std::log(r2));
    double a = std::abs(g);
    if (a > kMaxModulus) g *= kMaxModulus / a;
    out[k] = z * z / r2 * g;
  });
  return BeltramiCoefficient(ComplexField(grid, std::move(out)));
}

BeltramiCoefficient coefficient_from_distortion(const RealField& K) {
  const Grid& grid = K.grid();
  std::vector<complex> out(grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!(K[k] >= 1.0)) throw InvalidField("distortion must be >= 1");
    complex z = grid.point(k);
    double r2 = std::norm(z);
    if (r2 > 1.0) continue;
    double a = std::min((K[k] - 1) / (K[k] + 1), kMaxModulus);
    out[k] = z * z / r2 * a;
  }
  return BeltramiCoefficient(ComplexField(grid, std::move(out)));
}

double exp_integral(const RealField& K, double p) {
  if (!(p > 0)) throw InvalidArgument("exponent p must be positive");
  const Grid& g = K.grid();
  double sum = parallel_sum(K.size(), [&](std::size_t k) {
    return std::norm(g.point(k)) <= 1.0 ? std::exp(p * K[k]) : 0.0;
  });
  return std::isfinite(sum) ? sum * g.cell_area() : std::numeric_limits<double>::infinity();
}

double exp_integral_radial(const RadialProfile& profile, double p) {
  if (!(p > 0)) throw InvalidArgument("exponent p must be positive");
  auto f = [&](double u) { return std::exp(p * profile.distortion_log(u) - 2.0 * u); };
  try {
    return 2.0 * std::numbers::pi * integrate_adaptive(f, 0.0, std::numeric_limits<double>::infinity());
  } catch (const QuadratureError&) {
    return std::numeric_limits<double>::infinity();
  }
}

double bad_set_measure(const BeltramiCoefficient& mu, int n, double beta) {
  if (n < 1 || !(beta > 0)) throw InvalidArgument("bad set needs n >= 1 and beta > 0");
  const double threshold = 1.0 - beta / (2.0 * n + beta);
  std::size_t count = 0;
  for (auto v : mu.mu().samples()) count += std::abs(v) > threshold ? 1 : 0;
  return static_cast<double>(count) * mu.grid().cell_area();
}

double chebyshev_bound(double exp_integral_value, double p, int n, double beta) {
  return std::exp(-p) * exp_integral_value * std::exp(-4.0 * n * p / beta);
}

}  // namespace beltrami
