#include "beltrami/estimators.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "beltrami/parallel.hpp"
#include "beltrami/quadrature.hpp"

namespace beltrami {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log(e^a + e^b) without overflow.
double log_add_exp(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e + X) given log X.
double log_e_plus(double log_x) { return log_add_exp(1.0, log_x); }

// Operator norm factor (|A+1| + |A-1|)/2 of a radial map, in units of |rho|/t.
double operator_factor(complex A) { return 0.5 * (std::abs(A + 1.0) + std::abs(A - 1.0)); }

void require_untwisted(const RadialProfile& profile) {
  if (profile.is_twisted()) throw InvalidArgument("this estimate expects an untwisted profile");
  for (double u : {0.0, 1.0, 10.0, 100.0})
    if (!(profile.stretch_at(u).real() > 0))
      throw InvalidArgument("profile is not strictly increasing");
}

// Beyond this log radius e^{-u} underflows, so preimages are 0.
constexpr double kUnderflowLog = 800.0;

// u >= 0 with -log rho_N(u) = v for a normalized profile; v must not exceed
// -log rho_N(kUnderflowLog).
double solve_log_inverse(const RadialProfile& normal, double v) {
  if (v <= 0) return 0.0;
  double hi = 1.0;
  while (-normal.log_rho_at(hi) < v) {
    hi *= 2.0;
    if (hi > kUnderflowLog) {
      hi = kUnderflowLog;
      break;
    }
  }
  return bisect([&](double u) { return -normal.log_rho_at(u) - v; }, 0.0, hi, 1e-14);
}

double disk_integral_log(const std::function<double(double)>& f, double u0 = 0.0,
                         double u1 = kInf) {
  return 2.0 * kPi * integrate_adaptive(f, u0, u1);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<PointPair> random_pairs(std::size_t count, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw = [&] {
    double r = radius * std::sqrt(unit(rng));
    double a = 2.0 * kPi * unit(rng);
    return std::polar(r, a);
  };
  std::vector<PointPair> out(count);
  for (auto& p : out) {
    p.a = draw();
    p.b = draw();
  }
  return out;
}

double tail_to_median_ratio(const std::vector<double>& values) {
  if (values.size() < 2) throw InvalidArgument("boundedness needs at least two values");
  double m = median(values);
  double tail = *std::max_element(values.begin() + static_cast<long>(values.size() / 2), values.end());
  return m > 0 ? tail / m : (tail > 0 ? kInf : 0.0);
}

bool shows_growth(const std::vector<double>& sweep) {
  if (sweep.size() < 2) return false;
  return sweep.back() >= 2.0 * sweep.front() && sweep.back() > sweep[sweep.size() - 2];
}

ReportTable modulus_check(const RealField& u, const std::vector<PointPair>& pairs,
                          std::uint64_t seed) {
  const Grid& grid = u.grid();
  Gradient grad = gradient(u);
  RegionMask triple = RegionMask::disk(grid, 3.0);
  double energy = parallel_sum(grid.size(), [&](std::size_t k) {
    return triple.contains(k) ? grad.dx[k] * grad.dx[k] + grad.dy[k] * grad.dy[k] : 0.0;
  }) * grid.cell_area();

  ReportTable table({"ax", "ay", "bx", "by", "lhs", "rhs", "ratio"});
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    if (std::abs(a) > 1.0 || std::abs(b) > 1.0)
      throw InvalidArgument("modulus check pairs must lie in the unit disk");
    double diff = sample_bilinear(u, a) - sample_bilinear(u, b);
    double lhs = diff * diff;
    double dist = std::abs(a - b);
    double rhs = dist > 0 ? kPi * energy / std::log(kE + 1.0 / dist) : kInf;
    double ratio = rhs > 0 && std::isfinite(rhs) ? lhs / rhs : 0.0;
    worst = std::max(worst, ratio);
    table.add_checked_row({a.real(), a.imag(), b.real(), b.imag(), lhs, rhs, ratio}, lhs <= rhs);
  }
  table.note("energy_3D", energy);
  table.note("worst_ratio", worst);

  // Max/min principle probe on random subdisks.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double h = grid.spacing();
  const double scale = std::max(std::abs(u.max()), std::abs(u.min())) + 1.0;
  bool monotone = true;
  for (int trial = 0; trial < 50; ++trial) {
    complex c = std::polar(std::sqrt(unit(rng)), 2.0 * kPi * unit(rng));
    double r = 0.1 + 0.4 * unit(rng);
    double in_max = -kInf, in_min = kInf, bd_max = -kInf, bd_min = kInf;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      double d = std::abs(grid.point(k) - c);
      if (d >= r) continue;
      if (d > r - 1.5 * h) {
        bd_max = std::max(bd_max, u[k]);
        bd_min = std::min(bd_min, u[k]);
      } else {
        in_max = std::max(in_max, u[k]);
        in_min = std::min(in_min, u[k]);
      }
    }
    if (in_max > bd_max + 1e-9 * scale || in_min < bd_min - 1e-9 * scale) monotone = false;
  }
  table.note("monotone", monotone ? "1" : "0");
  return table;
}

complex radial_inverse(const RadialProfile& profile, complex w) {
  RadialProfile normal = normalized(profile);
  double s = std::abs(w);
  if (s == 0) return 0.0;
  if (s >= 1) return w;
  double v = -std::log(s);
  if (v >= -normal.log_rho_at(kUnderflowLog)) return 0.0;
  double u = solve_log_inverse(normal, v);
  return w / s * std::exp(-u);
}

ReportTable inverse_energy_check(const RadialProfile& profile) {
  require_untwisted(profile);
  RadialProfile normal = normalized(profile);
  // In v = log(1/|w|): q = sigma(s)/s, sigma' = q / A.
  auto parts = [&](double v, bool antiholomorphic) {
    double u = solve_log_inverse(normal, v);
    double A = normal.stretch_at(u).real();
    double q = std::exp(v - u);
    double value = antiholomorphic ? 0.5 * q * std::abs(1.0 / A - 1.0) : 0.5 * q * (1.0 / A + 1.0) - 1.0;
    return value * value * std::exp(-2.0 * v);
  };
  // Past v_cap the preimage radius underflows: q = 0, so only |g_w - 1|^2 = 1
  // remains, contributing pi e^{-2 v_cap}.
  const double v_cap = -normal.log_rho_at(kUnderflowLog);
  double dbar = disk_integral_log([&](double v) { return parts(v, true); }, 0.0, v_cap);
  double dz = disk_integral_log([&](double v) { return parts(v, false); }, 0.0, v_cap) +
              kPi * std::exp(-2.0 * v_cap);
  double K = disk_integral_log([&](double u) { return profile.distortion_log(u) * std::exp(-2.0 * u); });
  ReportTable table({"dbar_energy", "d_energy", "lhs", "rhs"});
  table.add_checked_row({dbar, dz, dbar + dz, 2.0 * K}, dbar + dz <= 2.0 * K);
  return table;
}

ReportTable continuity_bound_check(const RadialProfile& profile, double R,
                                   const std::vector<PointPair>& pairs) {
  require_untwisted(profile);
  if (!(R >= 1)) throw InvalidArgument("continuity bound needs R >= 1");
  double K = disk_integral_log([&](double u) { return profile.distortion_log(u) * std::exp(-2.0 * u); });
  const double constant = 16.0 * kPi * kPi * (R * R + K);
  ReportTable table({"ax", "ay", "bx", "by", "lhs", "rhs"});
  for (const auto& [a, b] : pairs) {
    if (std::abs(a) > R || std::abs(b) > R)
      throw InvalidArgument("continuity pairs must lie in the disk of radius R");
    double lhs = std::norm(radial_inverse(profile, a) - radial_inverse(profile, b));
    double dist = std::abs(a - b);
    double rhs = dist > 0 ? constant / std::log(kE + 1.0 / dist) : kInf;
    table.add_checked_row({a.real(), a.imag(), b.real(), b.imag(), lhs, rhs}, lhs <= rhs);
  }
  table.note("integral_K", K);
  return table;
}

ReportTable restricted_norm_curve(const ComplexField& sigma, const ComplexField& s_sigma,
                                  const std::vector<RegionMask>& masks, double beta) {
  if (!(beta > 2)) throw InvalidArgument("restricted norm curve needs beta > 2");
  require_same_grid(sigma.grid(), s_sigma.grid());
  ReportTable table({"measure", "lhs", "ratio"});
  std::vector<double> ratios;
  for (const auto& E : masks) {
    double m = measure(E);
    if (!(m > 0)) throw InvalidArgument("restricted norm curve needs nonempty regions");
    double lhs = l2_norm(restrict(sigma, E)) + l2_norm(restrict(s_sigma, E));
    double ratio = lhs / std::pow(std::log(kE + 1.0 / m), 1.0 - beta / 2.0);
    ratios.push_back(ratio);
    table.add_row({m, lhs, ratio});
  }
  double bound = ratios.size() >= 2 ? tail_to_median_ratio(ratios) : 1.0;
  table.note("tail_to_median", bound);
  if (bound > 2.0) table.fail("restricted norm ratio is not bounded");
  return table;
}

ReportTable restricted_norm_curve(const NeumannRun& run, const std::vector<RegionMask>& masks,
                                  double beta) {
  return restricted_norm_curve(run.sigma(), run.s_sigma(), masks, beta);
}

ReportTable area_distortion_curve(const RadialProfile& profile, const std::vector<double>& radii,
                                  double beta, double p) {
  if (!(beta > 0) || !(p > 0)) throw InvalidArgument("area curve needs beta, p > 0");
  ReportTable table({"r", "measure", "image", "weighted"});
  std::vector<double> weighted;
  for (double r : radii) {
    if (!(r > 0 && r < 1)) throw InvalidArgument("area curve radii must lie in (0, 1)");
    double m = kPi * r * r;
    double rho = profile.rho(r);
    double image = kPi * rho * rho;
    double w = image * std::pow(std::log(kE + 1.0 / m), beta);
    weighted.push_back(w);
    table.add_row({r, m, image, w});
  }
  table.note("beta", beta);
  table.note("p", p);
  if (weighted.size() >= 2) {
    double bound = tail_to_median_ratio(weighted);
    table.note("tail_to_median", bound);
    table.note("growth", weighted.back() / weighted.front());
    table.note("last_increment", weighted.back() - weighted[weighted.size() - 2]);
    if (beta < p && bound > 2.0) table.fail("weighted image area is not bounded");
  }
  return table;
}

double RearrangedField::integral_to(double t) const {
  if (t <= 0 || values.empty()) return 0.0;
  double cells = t / cell_measure;
  auto full = static_cast<std::size_t>(cells);
  if (full >= values.size()) return total();
  double head = full ? cumulative[full - 1] : 0.0;
  return head + (cells - static_cast<double>(full)) * values[full] * cell_measure;
}

RearrangedField rearrange(const RealField& J, const RegionMask& region) {
  require_same_grid(J.grid(), region.grid());
  RearrangedField out;
  out.cell_measure = J.grid().cell_area();
  for (std::size_t k = 0; k < J.size(); ++k) {
    if (!region.contains(k)) continue;
    if (J[k] < -1e-9) throw InvalidField("rearrangement needs a nonnegative field");
    out.values.push_back(J[k]);
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  out.cumulative.resize(out.values.size());
  double s = 0.0;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    s += out.values[k] * out.cell_measure;
    out.cumulative[k] = s;
  }
  return out;
}

ReportTable regularity_integrals(const RadialProfile& profile, double beta, double p,
                                 const std::vector<double>& eps) {
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  if (eps.empty()) throw InvalidArgument("regularity sweep needs at least one epsilon");
  // |Df| = e^{lr + u} F and J = e^{2(lr + u)} Re A, lr = log rho, F = operator factor.
  auto df = [&](double u) {
    double lr = profile.log_rho_at(u);
    complex A = profile.stretch_at(u);
    double F = operator_factor(A);
    double log_D = lr + u + std::log(F);
    return std::exp(2.0 * lr) * F * F * std::pow(log_e_plus(log_D), beta - 1.0);
  };
  auto jac = [&](double u) {
    double lr = profile.log_rho_at(u);
    double a = profile.stretch_at(u).real();
    double log_J = 2.0 * (lr + u) + std::log(a);
    return std::exp(2.0 * lr) * a * std::pow(log_e_plus(log_J), beta);
  };
  ReportTable table({"eps", "df_integral", "j_integral"});
  std::vector<double> sorted = eps;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double u_prev = 0.0, I_df = 0.0, I_j = 0.0;
  std::vector<double> df_sweep, j_sweep;
  for (double e : sorted) {
    if (!(e > 0 && e < 1)) throw InvalidArgument("epsilon must lie in (0, 1)");
    double u = -std::log(e);
    I_df += disk_integral_log(df, u_prev, u);
    I_j += disk_integral_log(jac, u_prev, u);
    u_prev = u;
    df_sweep.push_back(I_df);
    j_sweep.push_back(I_j);
    table.add_row({e, I_df, I_j});
  }
  table.note("beta", beta);
  table.note("p", p);
  if (sorted.size() >= 2) {
    auto rel_step = [](const std::vector<double>& s) {
      return std::abs(s.back() - s[s.size() - 2]) / std::abs(s.back());
    };
    table.note("df_last_step", rel_step(df_sweep));
    table.note("j_last_step", rel_step(j_sweep));
    table.note("df_growth", df_sweep.back() / df_sweep.front());
    table.note("j_growth", j_sweep.back() / j_sweep.front());
    table.note("df_diverges", shows_growth(df_sweep) ? "1" : "0");
    table.note("j_diverges", shows_growth(j_sweep) ? "1" : "0");
    if (beta < p && (rel_step(df_sweep) > 0.01 || rel_step(j_sweep) > 0.01))
      table.fail("regularity integrals do not settle below beta = p");
  }
  return table;
}

ReportTable regularity_integrals(const PrincipalSolution& solution, double beta) {
  const Grid& grid = solution.fz.grid();
  RegionMask disk = RegionMask::disk(grid, 1.0);
  double I_df = parallel_sum(grid.size(), [&](std::size_t k) {
    if (!disk.contains(k)) return 0.0;
    double D = std::abs(solution.fz[k]) + std::abs(solution.fzbar[k]);
    return D * D * std::pow(std::log(kE + D), beta - 1.0);
  }) * grid.cell_area();
  double I_j = parallel_sum(grid.size(), [&](std::size_t k) {
    if (!disk.contains(k)) return 0.0;
    double J = std::max(solution.jacobian[k], 0.0);
    return J * std::pow(std::log(kE + J), beta);
  }) * grid.cell_area();
  ReportTable table({"beta", "df_integral", "j_integral"});
  table.add_row({beta, I_df, I_j});
  return table;
}

ReportTable orlicz_bound_check(const RadialProfile& profile, double p) {
  if (!(p > 0)) throw InvalidArgument("p must be positive");
  auto lhs_f = [&](double u) {
    double lr = profile.log_rho_at(u);
    double F = operator_factor(profile.stretch_at(u));
    return std::exp(2.0 * lr) * F * F / log_e_plus(lr + u + std::log(F));
  };
  auto jac_f = [&](double u) {
    return std::exp(2.0 * profile.log_rho_at(u)) * profile.stretch_at(u).real();
  };
  auto exp_f = [&](double u) {
    return std::exp(p * profile.distortion_log(u) - 2.0 * u) - std::exp(-2.0 * u);
  };
  double lhs = disk_integral_log(lhs_f);
  double jac = disk_integral_log(jac_f);
  double ex;
  try {
    ex = disk_integral_log(exp_f);
  } catch (const QuadratureError&) {
    ex = kInf;
  }
  double rhs = 2.0 / p * (jac + ex);
  ReportTable table({"p", "lhs", "jacobian_integral", "exp_integral", "rhs"});
  table.add_checked_row({p, lhs, jac, ex, rhs}, lhs <= rhs);
  return table;
}

ReportTable orlicz_bound_check(const PrincipalSolution& solution, const BeltramiCoefficient& mu,
                               double p) {
  if (!(p > 0)) throw InvalidArgument("p must be positive");
  const Grid& grid = solution.fz.grid();
  require_same_grid(grid, mu.grid());
  RegionMask disk = RegionMask::disk(grid, 1.0);
  RealField K = mu.distortion();
  const double h2 = grid.cell_area();
  double lhs = parallel_sum(grid.size(), [&](std::size_t k) {
    if (!disk.contains(k)) return 0.0;
    double D = std::abs(solution.fz[k]) + std::abs(solution.fzbar[k]);
    return D * D / std::log(kE + D);
  }) * h2;
  double jac = integrate(solution.jacobian, disk);
  double ex = parallel_sum(grid.size(), [&](std::size_t k) {
    return disk.contains(k) ? std::expm1(p * K[k]) : 0.0;
  }) * h2;
  double rhs = 2.0 / p * (jac + ex);
  ReportTable table({"p", "lhs", "jacobian_integral", "exp_integral", "rhs"});
  table.add_checked_row({p, lhs, jac, ex, rhs}, lhs <= rhs);
  return table;
}

namespace {

// Maximum of f over a log-spaced scan of [lo, hi], refined by Brent's method
// around the best scan point. Works with log-argument functions.
double scan_max(const std::function<double(double)>& f_of_log, double log_lo, double log_hi,
                int samples) {
  double best = -kInf, best_at = log_lo;
  const double step = (log_hi - log_lo) / (samples - 1);
  for (int k = 0; k < samples; ++k) {
    double s = log_lo + step * k;
    double v = f_of_log(s);
    if (v > best) best = v, best_at = s;
  }
  auto neg = [&](double s) { return -f_of_log(s); };
  double a = std::max(log_lo, best_at - step), b = std::min(log_hi, best_at + step);
  auto [arg, val] = boost::math::tools::brent_find_minima(neg, a, b, 52);
  (void)arg;
  return std::max(best, -val);
}

}  // namespace

ElementaryConstants elementary_inequality_check(double beta, double p) {
  if (!(beta > 0) || !(p > 0)) throw InvalidArgument("beta and p must be positive");
  // Case x < e^{py/2}: the left side increases in x, so it is at most
  // y e^{py/2} log^{beta-1}(e + sqrt(y e^{py/2})) = C2(y) e^{py}.
  auto c2_of_log = [&](double ly) {
    double y = std::exp(ly);
    double log_xy = ly + 0.5 * p * y;
    return y * std::exp(-0.5 * p * y) * std::pow(log_e_plus(0.5 * log_xy), beta - 1.0);
  };
  // Case x >= e^{py/2}: y <= (2/p) log x and the left side increases in y.
  auto c1_of_log = [&](double lx) {
    if (lx <= 0) return 0.0;
    double ybar = 2.0 / p * lx;
    double log_xy = lx + std::log(ybar);
    return ybar * std::pow(log_e_plus(0.5 * log_xy), beta - 1.0) /
           std::pow(log_e_plus(lx), beta);
  };
  const double asymptote = 2.0 / p * std::pow(0.5, beta - 1.0);
  const double slack = 1.0 + 1e-6;
  double C2 = slack * scan_max(c2_of_log, std::log(1e-12), std::log(std::max(400.0, 400.0 / p)), 20001);
  double C1 = slack * std::max(asymptote, scan_max(c1_of_log, 0.0, 690.0, 20001));

  ReportTable table({"beta", "p", "C1", "C2", "max_ratio", "violations"});
  double worst = 0.0;
  int violations = 0;
  const int N = 200;
  for (int i = 0; i < N; ++i) {
    double lx = std::log(1e-12) + (std::log(1e12) - std::log(1e-12)) * i / (N - 1);
    double x = std::exp(lx);
    for (int j = 0; j < N; ++j) {
      double ly = std::log(1e-6) + (std::log(100.0) - std::log(1e-6)) * j / (N - 1);
      double y = std::exp(ly);
      double lhs = x * y * std::pow(log_e_plus(0.5 * (lx + ly)), beta - 1.0);
      double rhs = C1 * x * std::pow(log_e_plus(lx), beta) + C2 * std::exp(p * y);
      double ratio = lhs / rhs;
      worst = std::max(worst, ratio);
      if (!(lhs <= rhs)) ++violations;
    }
  }
  table.add_checked_row({beta, p, C1, C2, worst, static_cast<double>(violations)}, violations == 0);
  table.note("slack", slack - 1.0);
  return {C1, C2, std::move(table)};
}

ReportTable bad_set_check(const BeltramiCoefficient& mu, double p, double beta, int n_max) {
  double E = exp_integral(mu.distortion(), p);
  ReportTable table({"n", "measure", "bound"});
  for (int n = 1; n <= n_max; ++n) {
    double m = bad_set_measure(mu, n, beta);
    double bound = chebyshev_bound(E, p, n, beta);
    table.add_checked_row({static_cast<double>(n), m, bound}, m <= bound);
  }
  table.note("exp_integral", E);
  return table;
}

ReportTable bieberbach_check(const PrincipalSolution& solution, const std::vector<double>& radii) {
  const Grid& grid = solution.jacobian.grid();
  const double h = grid.spacing();
  ReportTable table({"r", "jacobian_integral", "bound"});
  for (double r : radii) {
    if (!(r >= 1) || r > grid.half_width()) throw InvalidArgument("Bieberbach radii must lie in [1, L]");
    double integral = integrate(solution.jacobian, RegionMask::disk(grid, r));
    double bound = kPi * r * r + 10.0 * h * r;
    table.add_checked_row({r, integral, bound}, integral <= bound);
  }
  return table;
}

}  // namespace beltrami
