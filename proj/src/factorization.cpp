#include "beltrami/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "beltrami/parallel.hpp"
#include "beltrami/quadrature.hpp"

namespace beltrami {

double hyperbolic_distance(complex w) { return 2.0 * std::atanh(std::abs(w)); }

double hyperbolic_distance(complex a, complex b) {
  return hyperbolic_distance((a - b) / (1.0 - std::conj(b) * a));
}

SplitPoint split_point(complex mu, double M) {
  if (!(M > 1)) throw InvalidArgument("split budget M must exceed 1");
  const double a = std::abs(mu);
  if (a == 0) return {0.0, 0.0};
  const double d = hyperbolic_distance(mu);
  const double cap = std::log(M);
  const complex phase = mu / a;
  complex nu = d > cap ? phase * std::tanh(0.5 * (d - cap)) : complex{};
  return {nu, phase * std::tanh(0.5 * std::min(d, cap))};
}

SplitResult hyperbolic_split(const BeltramiCoefficient& mu, double M) {
  if (!(M > 1)) throw InvalidArgument("split budget M must exceed 1");
  const Grid& grid = mu.grid();
  std::vector<complex> nu(grid.size()), kappa(grid.size());
  std::vector<double> K_nu(grid.size());
  parallel_for(grid.size(), [&](std::size_t k) {
    SplitPoint s = split_point(mu.mu()[k], M);
    nu[k] = s.nu;
    kappa[k] = s.kappa;
    double a = std::abs(s.nu);
    K_nu[k] = (1 + a) / (1 - a);
  });
  return SplitResult{BeltramiCoefficient(ComplexField(grid, std::move(nu)), mu.support_radius()),
                     ComplexField(grid, std::move(kappa)), M,
                     RealField(grid, std::move(K_nu)), mu.distortion()};
}

complex compose_dilatation(complex mu_f, complex mu_F, complex phase) {
  return (mu_f - mu_F) / (1.0 - mu_f * std::conj(mu_F)) * phase * phase;
}

complex recover_dilatation(complex kappa, complex nu) {
  return (kappa + nu) / (1.0 + kappa * std::conj(nu));
}

ReportTable exp_bound_check(const SplitResult& split, double p) {
  ReportTable table({"p", "M", "lhs", "rhs"});
  double lhs = exp_integral(split.K_nu, p * split.M);
  double rhs = std::exp(p * split.M) * exp_integral(split.K_mu, p);
  bool pointwise = true;
  for (std::size_t k = 0; k < split.K_nu.size(); ++k)
    pointwise = pointwise && split.M * split.K_nu[k] <= split.K_mu[k] + split.M;
  table.add_checked_row({p, split.M, lhs, rhs}, pointwise && lhs <= rhs);
  return table;
}

ReportTable split_violation_report(const BeltramiCoefficient& mu, const SplitResult& split) {
  ReportTable table({"magnitude_identity", "distortion_budget", "hyperbolic_additivity",
                     "recomposition", "cap"});
  const double M = split.M;
  double w_mag = -INFINITY, w_budget = -INFINITY, w_add = -INFINITY, w_rec = -INFINITY,
         w_cap = -INFINITY;
  for (std::size_t k = 0; k < mu.mu().size(); ++k) {
    complex m = mu.mu()[k];
    complex nu = split.nu.mu()[k];
    complex kappa = split.kappa_tilde[k];
    double d = hyperbolic_distance(m);
    double kk = std::abs(kappa);
    double K_kappa = (1 + kk) / (1 - kk);
    double mag = std::abs(K_kappa - std::min(split.K_mu[k], M)) - 1e-12 * M;
    double budget = M * split.K_nu[k] - (split.K_mu[k] + M) - 1e-12 * (split.K_mu[k] + M);
    double add = nu == complex{} ? -1.0
                                 : std::abs(hyperbolic_distance(nu) + hyperbolic_distance(nu, m) - d) -
                                       1e-12 * std::max(1.0, d);
    double rec = std::abs(std::abs(recover_dilatation(kappa, nu)) - std::abs(m)) - 1e-12;
    double cap = K_kappa - M - 1e-12 * M;
    w_mag = std::max(w_mag, mag);
    w_budget = std::max(w_budget, budget);
    w_add = std::max(w_add, add);
    w_rec = std::max(w_rec, rec);
    w_cap = std::max(w_cap, cap);
  }
  bool pass = w_mag <= 0 && w_budget <= 0 && w_add <= 0 && w_rec <= 0 && w_cap <= 0;
  table.add_checked_row({w_mag, w_budget, w_add, w_rec, w_cap}, pass);
  table.note("M", M);
  return table;
}

RadialProfile compose_radial(const RadialProfile& F, const RadialProfile& g) {
  if (F.is_twisted() || g.is_twisted())
    throw InvalidArgument("radial composition expects untwisted profiles");
  if (std::abs(F.log_rho_at(0.0)) > 1e-12)
    throw InvalidArgument("inner profile must satisfy rho(1) = 1");
  for (double u : {0.0, 1.0, 10.0, 100.0})
    if (!(F.stretch_at(u).real() > 0) || !(g.stretch_at(u).real() > 0))
      throw InvalidArgument("radial composition needs strictly increasing profiles");
  // u_g = log(1/rho_F(t)) is the log variable of the outer map.
  return RadialProfile(
      F.label() + "+" + g.label(),
      [F, g](double u) {
        double ug = -F.log_rho_at(u);
        return ug >= 0 ? g.log_rho_at(ug) : g.log_rho_at(0.0) - ug;
      },
      [F, g](double u) { return g.stretch_at(-F.log_rho_at(u)) * F.stretch_at(u); });
}

namespace {

// Untwisted profile whose log rho is integrated separately on [0, brk] and
// [brk, u_max], so a derivative jump of the stretch at brk never sits inside
// an adaptive interval. The head runs in s = u / brk over [0, 1].
RadialProfile profile_with_break(std::string label, RadialProfile::StretchFn stretch,
                                 double log_rho_one, double brk, double u_max, double tol) {
  if (!(brk > 0) || !(brk < u_max))
    return profile_from_stretch(std::move(label), std::move(stretch), log_rho_one, u_max, tol);
  const double nodes = std::ceil(brk / 0.5);
  auto head = std::make_shared<CumulativeIntegral>(
      [stretch, brk](double s) { return brk * stretch(brk * std::min(s, 1.0)).real(); }, 1.0,
      1.0 / nodes, tol);
  const double at_break = log_rho_one - (*head)(1.0);
  RadialProfile tail = profile_from_stretch(
      label, [stretch, brk](double s) { return stretch(brk + s); }, at_break, u_max - brk, tol);
  return RadialProfile(
      std::move(label),
      [head, tail, brk, log_rho_one](double u) {
        return u <= brk ? log_rho_one - (*head)(u / brk) : tail.log_rho_at(u - brk);
      },
      std::move(stretch));
}

}  // namespace

RadialSplit split_radial(const RadialProfile& f, double M) {
  if (f.is_twisted()) throw InvalidArgument("radial split expects an untwisted profile");
  auto inner_stretch = [f, M](double u) {
    complex A = f.stretch_at(u);
    complex nu = split_point((A - 1.0) / (A + 1.0), M).nu;
    return (1.0 + nu) / (1.0 - nu);
  };
  // First u where K_f reaches M; nu switches on there with a derivative jump.
  constexpr double kUMax = 60.0;
  double brk = 0.0;
  if (f.distortion_log(0.0) < M) {
    for (double u = 0.25; u <= 800.0; u += 0.25)
      if (f.distortion_log(u) >= M) {
        brk = bisect([&](double x) { return f.distortion_log(x) - M; }, u - 0.25, u, 1e-14);
        break;
      }
  }
  RadialProfile F = profile_with_break(f.label() + ":inner", inner_stretch, 0.0, brk, 800.0, 1e-10);
  // Outer stretch in the outer log variable v: find u with -log rho_F(u) = v,
  // then A_g(v) = A_f(u) / A_F(u). The inverse starts from a tabulated v(u)
  // and is polished by Newton steps with dv/du = Re A_F(u).
  constexpr double kDu = 0.01;
  auto table = std::make_shared<std::vector<double>>();
  for (std::size_t k = 0; k * kDu <= kUMax + 1e-12; ++k) table->push_back(-F.log_rho_at(k * kDu));
  auto locate = [F, table](double v) {
    const auto& vs = *table;
    if (v <= 0) return 0.0;
    if (v >= vs.back()) return kDu * static_cast<double>(vs.size() - 1);
    auto it = std::upper_bound(vs.begin(), vs.end(), v);
    std::size_t k = static_cast<std::size_t>(it - vs.begin()) - 1;
    double u = kDu * (static_cast<double>(k) + (v - vs[k]) / (vs[k + 1] - vs[k]));
    for (int iter = 0; iter < 8; ++iter) {
      double du = (-F.log_rho_at(u) - v) / F.stretch_at(u).real();
      u -= du;
      if (std::abs(du) <= 1e-14 * std::max(1.0, u)) break;
    }
    return u;
  };
  auto outer_stretch = [f, F, locate](double v) {
    double u = locate(v);
    return f.stretch_at(u) / F.stretch_at(u);
  };
  const double v_max = table->back();
  const double v_break = brk > 0 ? -F.log_rho_at(brk) : 0.0;
  RadialProfile g = profile_with_break(f.label() + ":outer", outer_stretch, f.log_rho_at(0.0),
                                       v_break, v_max, 1e-10);
  return {F, g};
}

}  // namespace beltrami
