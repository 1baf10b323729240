#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "beltrami/neumann.hpp"

using namespace beltrami;
const double kSqrtPi = std::sqrt(std::numbers::pi);

namespace {

double rel_diff(const ComplexField& a, const ComplexField& b) { return l2_norm(a - b) / l2_norm(b); }

// Relative L2 error of the solver map against the closed form on an annulus
// away from the unit circle and the origin.
double annulus_error(const PrincipalSolution& s, const RadialProfile& f) {
  const Grid& g = s.displacement.grid();
  ComplexField map = s.map();
  complex shift{};
  double count = 0;
  RegionMask ann = RegionMask::annulus(g, 0.2, 0.8);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (ann.contains(k)) {
      shift += map[k] - f.map(g.point(k));
      count += 1;
    }
  shift /= count;
  double num = 0, den = 0;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (ann.contains(k)) {
      num += std::norm(map[k] - shift - f.map(g.point(k)));
      den += std::norm(f.map(g.point(k)));
    }
  return std::sqrt(num / den);
}

}  // namespace

TEST(Neumann, ZeroCoefficient) {
  Grid g(64, 2.0);
  SpectralPlan plan(g);
  auto s = solve(zero_coefficient(g), plan, 10);
  EXPECT_EQ(l2_norm(s.displacement), 0.0);
  EXPECT_EQ(l2_norm(s.fzbar), 0.0);
  EXPECT_EQ(l2_norm(s.fz + complex{-1.0}), 0.0);
  EXPECT_EQ(s.residual, 0.0);
  EXPECT_FALSE(s.nonconvergent);
  for (double n : s.norms) EXPECT_EQ(n, 0.0);
}

TEST(Neumann, TermNormsBoundedByPowers) {
  Grid g(256, 2.0);
  SpectralPlan plan(g);
  const double k = 0.5;
  NeumannRun run(constant_radial_coefficient(g, k), plan);
  for (int n = 0; n < 20; ++n) run.advance(plan);
  const auto& norms = run.norms();
  for (std::size_t n = 0; n < norms.size(); ++n) {
    EXPECT_LE(norms[n], std::pow(k, static_cast<double>(n)) * kSqrtPi * (1 + 1e-12));
    if (n > 0) {
      EXPECT_LE(norms[n], k * norms[n - 1] * (1 + 1e-12));
    }
  }
}

TEST(Neumann, PartialSumsAndBeurlingConsistency) {
  Grid g(128, 2.0);
  SpectralPlan plan(g);
  NeumannRun run(radial_to_coefficient(gp_profile(2.0), g), plan);
  ComplexField manual = run.psi();
  for (int n = 0; n < 12; ++n) {
    run.advance(plan);
    manual += run.psi();
  }
  EXPECT_LT(rel_diff(run.sigma(), manual), 1e-12);
  EXPECT_LT(rel_diff(run.s_sigma(), plan.beurling(run.sigma())), 1e-12);
  EXPECT_LT(rel_diff(run.s_psi(), plan.beurling(run.psi())), 1e-12);
  EXPECT_EQ(run.terms_computed(), 13);
  NeumannRun copy(radial_to_coefficient(gp_profile(2.0), g), plan);
  for (int n = 0; n < 12; ++n) copy = step(std::move(copy), plan);
  EXPECT_EQ(copy.norms(), run.norms());
}

TEST(Neumann, ResidualWithinTruncationBound) {
  Grid g(256, 2.0);
  SpectralPlan plan(g);
  for (double k : {0.2, 0.5, 0.8}) {
    auto mu = constant_radial_coefficient(g, k);
    for (int terms : {5, 20, 60}) {
      auto s = solve(mu, plan, terms);
      // The truncation bound is an absolute L2 bound on the discarded tail, so
      // it is compared with the absolute residual.
      double absolute = s.residual * l2_norm(s.fzbar);
      EXPECT_LE(absolute, std::max(truncation_bound(k, terms), 1e-6 * l2_norm(s.fzbar)))
          << "k=" << k << " terms=" << terms;
    }
  }
}

TEST(Neumann, TruncationBoundFormula) {
  EXPECT_DOUBLE_EQ(truncation_bound(0.5, 3), std::pow(0.5, 4) * kSqrtPi / 0.5);
  EXPECT_EQ(truncation_bound(0.0, 5), 0.0);
}

TEST(Neumann, ConstantStretchMatchesClosedForm) {
  Grid g(512, 2.0);
  SpectralPlan plan(g);
  auto f = stretch_profile(-1.0 / 3);
  auto s = solve(radial_to_coefficient(f, g), plan, 60);
  EXPECT_LT(annulus_error(s, f), 1e-3);
  EXPECT_LT(s.residual, 1e-10);
}

TEST(Neumann, SolveLambdaMatchesScaledStretch) {
  Grid g(512, 2.0);
  SpectralPlan plan(g);
  const double gamma = 0.6;
  auto mu = radial_to_coefficient(stretch_profile(gamma), g);
  auto identity = solve_lambda(mu, plan, 0.0, 10);
  EXPECT_EQ(l2_norm(identity.displacement), 0.0);
  for (double lambda : {0.5, -0.5}) {
    auto s = solve_lambda(mu, plan, lambda, 60);
    EXPECT_LT(annulus_error(s, stretch_profile(lambda * gamma)), 2e-3) << lambda;
  }
  EXPECT_THROW(solve_lambda(mu, plan, 1.0, 10), InvalidArgument);
}

TEST(Neumann, NormsScaleHomogeneouslyInLambda) {
  Grid g(128, 2.0);
  SpectralPlan plan(g);
  auto mu = radial_to_coefficient(gp_profile(1.0), g);
  const complex lambda{0.3, 0.4};
  auto unit = solve(mu, plan, 10);
  auto scaled_run = solve_lambda(mu, plan, lambda, 10);
  for (std::size_t n = 0; n < unit.norms.size(); ++n)
    EXPECT_NEAR(scaled_run.norms[n], std::pow(std::abs(lambda), n + 1.0) * unit.norms[n], 1e-10 * unit.norms[n]);
}

TEST(Neumann, JacobianOfSolution) {
  Grid g(256, 2.0);
  SpectralPlan plan(g);
  auto s = solve(constant_radial_coefficient(g, 0.4), plan, 40);
  for (std::size_t k = 0; k < g.size(); ++k) {
    EXPECT_NEAR(s.jacobian[k], std::norm(s.fz[k]) - std::norm(s.fzbar[k]), 1e-12 * (1 + std::norm(s.fz[k])));
  }
  EXPECT_NEAR(s.displacement.mean().real(), 0.0, 1e-12);
  EXPECT_NEAR(s.displacement.mean().imag(), 0.0, 1e-12);
}

TEST(ContourTerm, Examples) {
  Grid g(128, 2.0);
  SpectralPlan plan(g);
  RegionMask all = RegionMask::full(g);
  auto mu = constant_radial_coefficient(g, 0.6);
  EXPECT_LT(rel_diff(contour_term(mu, plan, 0, all), mu.mu()), 1e-6);
  NeumannRun run(mu, plan);
  run.advance(plan);
  run.advance(plan);
  EXPECT_LT(rel_diff(contour_term(mu, plan, 2, all), run.psi()), 1e-6);
  EXPECT_EQ(l2_norm(contour_term(zero_coefficient(g), plan, 3, all)), 0.0);
  RegionMask E = RegionMask::disk(g, 0.5);
  EXPECT_LT(rel_diff(contour_term(mu, plan, 2, E), restrict(run.psi(), E)), 1e-6);
  EXPECT_THROW(contour_term(mu, plan, 2, all, 0.5, 8), InvalidArgument);
}

TEST(ContourTerm, DeterministicAcrossCalls) {
  Grid g(64, 2.0);
  SpectralPlan plan(g);
  auto mu = radial_to_coefficient(gp_profile(2.0), g);
  RegionMask E = RegionMask::disk(g, 0.7);
  ComplexField a = contour_term(mu, plan, 3, E);
  ComplexField b = contour_term(mu, plan, 3, E);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(a[k], b[k]);
}

TEST(RadialNorms, GridNormsConvergeToRadialReduction) {
  auto f = gp_profile(2.0);
  auto radial = radial_neumann_norms(f, 4);
  ASSERT_EQ(radial.size(), 4u);
  std::vector<double> previous_gap(4, INFINITY);
  for (std::size_t n : {256, 512}) {
    Grid g(n, 2.0);
    SpectralPlan plan(g);
    NeumannRun run(radial_to_coefficient(f, g), plan);
    for (int k = 0; k < 3; ++k) run.advance(plan);
    EXPECT_NEAR(run.norms()[0] / radial[0], 1.0, 0.01);
    EXPECT_NEAR(run.norms()[1] / radial[1], 1.0, 0.01);
    for (std::size_t k = 0; k < 4; ++k) {
      double gap = std::abs(run.norms()[k] / radial[k] - 1.0);
      if (k >= 2) {
        EXPECT_LT(gap, previous_gap[k]) << "term " << k << " grid " << n;
      }
      previous_gap[k] = gap;
    }
  }
}

TEST(RadialNorms, ConstantDilatationClosedForm) {
  // For constant gamma the reduced operator G -> G - 2 int_0^u G is an
  // isometry of L2(e^{-2u} du), so ||psi_n|| = |gamma|^{n+1} sqrt(pi).
  for (double gamma : {0.5, -0.3}) {
    auto norms = radial_neumann_norms(stretch_profile(gamma), 30);
    for (std::size_t n = 0; n < norms.size(); ++n)
      EXPECT_NEAR(norms[n] / (std::pow(std::abs(gamma), n + 1.0) * kSqrtPi), 1.0, 1e-3) << n;
  }
}

TEST(DecayReport, EllipticCoefficientHasBoundedEnvelope) {
  Grid g(128, 2.0);
  SpectralPlan plan(g);
  NeumannRun run(constant_radial_coefficient(g, 0.5), plan);
  for (int n = 0; n < 31; ++n) run.advance(plan);
  ReportTable r = decay_report(run, 3.0);
  EXPECT_TRUE(r.all_pass());
  EXPECT_EQ(r.rows(), 32u);
  EXPECT_EQ(r.columns(), (std::vector<std::string>{"n", "norm", "envelope"}));
}

TEST(DecayReport, GpProfileDecaysFasterThanAlpha) {
  auto gp = decay_report(radial_neumann_norms(gp_profile(2.0), 65), 1.0);
  EXPECT_TRUE(gp.all_pass());
  auto alpha = decay_report(radial_neumann_norms(alpha_profile(0.4, 1.0), 65), 1.0);
  double dhat = std::stod(*alpha.note_value("dhat"));
  EXPECT_LT(dhat, 0.75);
  EXPECT_GT(std::stod(*gp.note_value("dhat")), dhat);
}

TEST(DecayReport, RequiresEnoughTerms) {
  EXPECT_THROW(decay_report(std::vector<double>(8, 1.0), 1.0), InvalidArgument);
  std::vector<double> power(64);
  for (std::size_t n = 0; n < power.size(); ++n) power[n] = std::pow(n + 1.0, -2.0);
  EXPECT_NEAR(fitted_decay_slope(power, 32, 63), 2.0, 0.05);
}
