#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beltrami/coefficients.hpp"

using namespace beltrami;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<double> log_spaced(double lo, double hi, int count) {
  std::vector<double> t(count);
  for (int k = 0; k < count; ++k) t[k] = lo * std::pow(hi / lo, k / (count - 1.0));
  return t;
}

// gamma from a central difference of log rho in log t, independent of the
// stored stretch.
complex numeric_gamma(const RadialProfile& f, double t) {
  const double s = 1e-5;
  complex lp = std::log(f.rho_complex(t * std::exp(s)));
  complex lm = std::log(f.rho_complex(t * std::exp(-s)));
  complex dl = lp - lm;
  dl.imag(std::remainder(dl.imag(), 2 * kPi));
  complex A = dl / (2 * s);
  return (A - 1.0) / (A + 1.0);
}

}  // namespace

TEST(Truncate, Examples) {
  Grid g(64, 2.0);
  auto mu = BeltramiCoefficient(ComplexField::from_function(g, [](complex z) {
    return std::abs(z) < 1 ? (z.real() > 0 ? complex{0.3} : std::polar(0.9, 0.7)) : complex{};
  }));
  auto t = truncate(mu, 2);
  for (std::size_t k = 0; k < g.size(); ++k) {
    complex z = g.point(k);
    if (std::abs(z) >= 1) {
      EXPECT_EQ(t.mu()[k], complex{});
    } else if (z.real() > 0) {
      EXPECT_EQ(t.mu()[k], complex{0.3});
    } else {
      EXPECT_NEAR(std::abs(t.mu()[k] - std::polar(0.5, 0.7)), 0.0, 1e-15);
    }
  }
}

TEST(Truncate, Properties) {
  Grid g(128, 2.0);
  auto mu = radial_to_coefficient(gp_profile(1.0), g);
  for (int m : {2, 3, 10, 100}) {
    auto t = truncate(mu, m);
    EXPECT_LE(t.sup_norm(), 1.0 - 1.0 / m + 1e-15);
    auto tt = truncate(t, m);
    auto next = truncate(mu, m + 1);
    RealField K = t.distortion(), Kmu = mu.distortion();
    for (std::size_t k = 0; k < g.size(); ++k) {
      EXPECT_NEAR(std::abs(tt.mu()[k] - t.mu()[k]), 0.0, 1e-15);
      EXPECT_LE(std::abs(t.mu()[k]), std::abs(next.mu()[k]));
      EXPECT_LE(K[k], Kmu[k] * (1 + 1e-12));
    }
  }
}

TEST(BeltramiCoefficient, Validation) {
  Grid g(64, 2.0);
  EXPECT_THROW(BeltramiCoefficient(ComplexField::from_function(g, [](complex) { return 0.0; }) + complex{1.0}),
               InvalidField);
  EXPECT_THROW(BeltramiCoefficient(ComplexField::from_function(g, [](complex z) { return std::abs(z) > 1.5 ? 0.2 : 0.0; })),
               InvalidField);
  EXPECT_EQ(zero_coefficient(g).sup_norm(), 0.0);
}

TEST(GpProfile, FrozenValues) {
  EXPECT_NEAR(gp_profile(2.0).rho(1.0), 1.45866113442392506, 1e-12);
  EXPECT_NEAR(gp_profile(1.0).rho(1.0), 1.67159109446283037, 1e-12);
  EXPECT_NEAR(gp_profile(1.0).distortion(1e-6), 20.0103940163582238, 1e-9);
  EXPECT_NEAR(gp_profile(2.0).distortion(1e-3), 5.50526202074055718, 1e-9);
}

TEST(GpProfile, LogarithmicDistortion) {
  for (double p : {0.5, 1.0, 2.0}) {
    auto f = gp_profile(p);
    double previous = 0;
    for (double u : {10.0, 100.0, 1000.0, 1e5}) {
      double t = std::exp(-u);
      double K = f.distortion_log(u);
      double ratio = K * p / (2 * u);
      EXPECT_GT(ratio, previous);
      previous = ratio;
      // Second-order term: K (p + 1/log log(1/t)) / (2 log(1/t)) -> 1.
      EXPECT_NEAR(K * (p + 1 / std::log(u)) / (2 * u), 1.0, 0.05) << "p=" << p << " t=" << t;
      EXPECT_LT(1 - std::abs(f.gamma_log(u)), 2.5 / K);
    }
  }
}

TEST(RadialProfile, GammaMatchesNumericalDerivative) {
  std::vector<RadialProfile> profiles = {gp_profile(1.0),       gp_profile(3.0),
                                         power_profile(0.5),    stretch_profile(-1.0 / 3),
                                         alpha_profile(0.4, 1.0), alpha_profile(1.0, 0.5),
                                         alpha_profile(0.4, complex{0.0, 0.9})};
  for (const auto& f : profiles)
    for (double t : log_spaced(1e-12, 0.99, 100)) {
      complex expected = numeric_gamma(f, t);
      EXPECT_NEAR(std::abs(f.gamma(t) - expected), 0.0, 1e-7 * std::max(1.0, 1 / (1 - std::abs(expected))))
          << f.label() << " t=" << t;
      EXPECT_LT(std::abs(f.gamma(t)), 1.0);
    }
}

TEST(RadialProfile, StrictlyIncreasingModulus) {
  for (const auto& f : {gp_profile(1.0), alpha_profile(0.4, 1.0), alpha_profile(0.4, complex{0.3, 0.6})}) {
    double previous = 0;
    for (double t : log_spaced(1e-30, 1.0, 200)) {
      double r = f.rho(t);
      EXPECT_GT(r, previous) << f.label();
      previous = r;
    }
  }
}

TEST(AlphaProfile, EndpointsInLambda) {
  auto identity = alpha_profile(0.4, 0.0);
  for (double t : {1e-9, 0.01, 0.5, 1.0, 1.7}) EXPECT_NEAR(identity.rho(t), t, 1e-14 * t);
  auto f = alpha_profile(0.4, 1.0);
  EXPECT_NEAR(f.rho(0.01), 0.582511082420048624, 1e-9);
  const double c = std::pow(std::log(5.0), 0.4);
  for (double t : log_spaced(1e-12, 1.0, 40)) EXPECT_NEAR(f.rho(t) * std::pow(std::log(5 / t), 0.4) / c, 1.0, 1e-8);
  for (double t : {1.0, 1.5, 2.0}) EXPECT_NEAR(f.rho(t), t, 1e-12);
}

TEST(AlphaProfile, ComplexLambdaTwists) {
  auto f = alpha_profile(0.4, complex{0.0, 0.5});
  EXPECT_TRUE(f.is_twisted());
  EXPECT_FALSE(alpha_profile(0.4, 0.5).is_twisted());
  EXPECT_NEAR(std::abs(f.rho_complex(0.3)), f.rho(0.3), 1e-14);
  complex z = std::polar(0.2, 1.1);
  EXPECT_NEAR(std::abs(f.map(z)), f.rho(0.2), 1e-14);
}

TEST(RadialToCoefficient, Examples) {
  Grid g(128, 2.0);
  EXPECT_EQ(radial_to_coefficient(identity_profile(), g).sup_norm(), 0.0);
  auto stretch = radial_to_coefficient(stretch_profile(0.5), g);
  for (std::size_t k = 0; k < g.size(); ++k)
    EXPECT_NEAR(std::abs(stretch.mu()[k]), std::abs(g.point(k)) < 1 ? 0.5 : 0.0, 1e-12);
  auto f = gp_profile(1.0);
  auto gp = radial_to_coefficient(f, g);
  RealField K = gp.distortion();
  for (std::size_t k = 0; k < g.size(); k += 97) {
    double t = std::abs(g.point(k));
    if (t >= 1) continue;
    EXPECT_NEAR(std::abs(gp.mu()[k]), (f.distortion(t) - 1) / (f.distortion(t) + 1), 1e-12);
    EXPECT_NEAR(K[k], f.distortion(t), 1e-8 * K[k]);
  }
}

TEST(RadialToCoefficient, ModulusConstantOnCircles) {
  Grid g(128, 2.0);
  auto mu = radial_to_coefficient(gp_profile(2.0), g);
  const std::size_t n = g.n();
  for (std::size_t i = 0; i < n; i += 5)
    for (std::size_t j = 0; j < n; j += 7) {
      double a = std::abs(mu.mu()[g.index(i, j)]);
      EXPECT_EQ(a, std::abs(mu.mu()[g.index(j, i)]));
      EXPECT_EQ(a, std::abs(mu.mu()[g.index(n - 1 - i, j)]));
    }
}

TEST(ExpIntegral, ConstantDistortion) {
  Grid g(512, 2.0);
  RealField one(g, std::vector<double>(g.size(), 1.0));
  for (double p : {0.5, 1.0, 2.0}) EXPECT_NEAR(exp_integral(one, p), kPi * std::exp(p), 2 * kPi * std::exp(p) * g.spacing());
}

TEST(ExpIntegral, GpProfileBelowAndAboveThreshold) {
  auto f = gp_profile(1.0);
  EXPECT_NEAR(exp_integral_radial(f, 0.5), 9.59226587857465550, 1e-8);
  EXPECT_TRUE(std::isinf(exp_integral_radial(f, 2.0)));
  double coarse = exp_integral(radial_to_coefficient(f, Grid(512, 2.0)).distortion(), 0.5);
  double fine = exp_integral(radial_to_coefficient(f, Grid(1024, 2.0)).distortion(), 0.5);
  EXPECT_NEAR(fine / coarse, 1.0, 0.1);
  EXPECT_NEAR(fine, 9.59226587857465550, 0.1);
  // Above the threshold the sum keeps growing under refinement, by a factor
  // that itself increases as h shrinks.
  double previous = exp_integral(radial_to_coefficient(f, Grid(256, 2.0)).distortion(), 2.0);
  double last_factor = 1.0;
  for (std::size_t n : {512, 1024}) {
    double next = exp_integral(radial_to_coefficient(f, Grid(n, 2.0)).distortion(), 2.0);
    EXPECT_GT(next / previous, std::max(1.2, last_factor));
    last_factor = next / previous;
    previous = next;
  }
}

TEST(BadSet, Examples) {
  Grid g(256, 2.0);
  auto elliptic = constant_radial_coefficient(g, 0.5);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(bad_set_measure(elliptic, n, 1.0), 0.0);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(bad_set_measure(zero_coefficient(g), n, 1.0), 0.0);
  auto gp = radial_to_coefficient(gp_profile(1.0), g);
  double E = exp_integral(gp.distortion(), 1.0);
  double previous = INFINITY;
  for (int n = 1; n <= 6; ++n) {
    double m = bad_set_measure(gp, n, 0.5);
    EXPECT_LE(m, chebyshev_bound(E, 1.0, n, 0.5));
    EXPECT_LE(m, previous);
    previous = m;
  }
}

TEST(ScaledCoefficient, Linear) {
  Grid g(64, 2.0);
  auto mu = constant_radial_coefficient(g, complex{0.3, 0.4});
  auto s = scaled(mu, complex{0.0, 0.5});
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_NEAR(std::abs(s.mu()[k] - complex{0.0, 0.5} * mu.mu()[k]), 0.0, 1e-16);
  EXPECT_THROW(scaled(mu, 1.5), InvalidArgument);
}
