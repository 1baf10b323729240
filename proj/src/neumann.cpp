#include "beltrami/neumann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "beltrami/parallel.hpp"

namespace beltrami {

NeumannRun::NeumannRun(BeltramiCoefficient mu, const SpectralPlan& plan)
    : mu_(std::move(mu)),
      psi_(mu_.mu()),
      s_psi_(plan.beurling(psi_)),
      sigma_(psi_),
      s_sigma_(s_psi_) {
  require_same_grid(mu_.grid(), plan.grid());
  norms_.push_back(l2_norm(psi_));
}

void NeumannRun::advance(const SpectralPlan& plan) {
  psi_ = mu_.mu() * s_psi_;
  double norm = l2_norm(psi_);
  if (norm > 0 && norm >= norms_.back()) {
    if (++rising_streak_ >= 8) nonconvergent_ = true;
  } else {
    rising_streak_ = 0;
  }
  norms_.push_back(norm);
  sigma_ += psi_;
  s_psi_ = plan.beurling(psi_);
  s_sigma_ += s_psi_;
}

NeumannRun step(NeumannRun run, const SpectralPlan& plan) {
  run.advance(plan);
  return run;
}

ComplexField PrincipalSolution::map() const {
  const Grid& g = displacement.grid();
  std::vector<complex> out(g.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = g.point(k) + displacement[k];
  return ComplexField(g, std::move(out));
}

PrincipalSolution assemble(const NeumannRun& run, const SpectralPlan& plan) {
  const ComplexField& fzbar = run.sigma();
  ComplexField fz = run.s_sigma() + complex{1.0};
  std::vector<double> J(fz.size());
  parallel_for(J.size(), [&](std::size_t k) { J[k] = std::norm(fz[k]) - std::norm(fzbar[k]); });
  double scale = l2_norm(fzbar);
  double residual = scale > 0 ? l2_norm(fzbar - run.coefficient().mu() * fz) / scale : 0.0;
  return PrincipalSolution{plan.cauchy(fzbar),
                           std::move(fz),
                           fzbar,
                           RealField(fzbar.grid(), std::move(J)),
                           run.terms_computed(),
                           run.nonconvergent(),
                           residual,
                           run.norms()};
}

PrincipalSolution solve(const BeltramiCoefficient& mu, const SpectralPlan& plan, int n_terms) {
  if (n_terms < 1) throw InvalidArgument("solve needs at least one term");
  NeumannRun run(mu, plan);
  while (run.terms_computed() < n_terms) run.advance(plan);
  return assemble(run, plan);
}

PrincipalSolution solve_lambda(const BeltramiCoefficient& mu, const SpectralPlan& plan,
                               complex lambda, int n_terms) {
  if (!(std::abs(lambda) < 1)) throw InvalidArgument("solve_lambda needs |lambda| < 1");
  return solve(scaled(mu, lambda), plan, n_terms);
}

double truncation_bound(double k, int n_terms) {
  if (!(k < 1)) return std::numeric_limits<double>::infinity();
  return std::pow(k, n_terms + 1) * std::sqrt(std::numbers::pi) / (1 - k);
}

ComplexField contour_term(const BeltramiCoefficient& mu, const SpectralPlan& plan, int n,
                          const RegionMask& E, double radius, int nodes) {
  if (nodes < 16) throw InvalidArgument("contour extraction needs at least 16 nodes");
  if (!(radius > 0 && radius < 1)) throw InvalidArgument("contour radius must lie in (0, 1)");
  if (n < 0) throw InvalidArgument("term index must be nonnegative");
  require_same_grid(mu.grid(), E.grid());
  // Enough terms that the discarded part of the lambda-series is below 1e-14
  // relative to the extracted coefficient.
  const int extra = static_cast<int>(std::ceil(std::log(1e-14) / std::log(radius)));
  const int terms = std::min(n + 2 + extra, n + 200);

  const Grid& grid = mu.grid();
  std::vector<complex> total(grid.size());
  const std::size_t batch = static_cast<std::size_t>(std::max(1, thread_count()));
  for (std::size_t first = 0; first < static_cast<std::size_t>(nodes); first += batch) {
    const std::size_t count = std::min(batch, static_cast<std::size_t>(nodes) - first);
    std::vector<ComplexField> partial(count, ComplexField(grid));
    parallel_for(count, [&](std::size_t b) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(first + b) / nodes;
      const complex lambda = std::polar(radius, angle);
      NeumannRun run(scaled(mu, lambda), plan);
      while (run.terms_computed() < terms) run.advance(plan);
      const complex weight = std::pow(lambda, -(n + 1)) / static_cast<double>(nodes);
      partial[b] = weight * run.sigma();
    });
    for (const auto& p : partial)
      for (std::size_t k = 0; k < total.size(); ++k) total[k] += p[k];
  }
  return restrict(ComplexField(grid, std::move(total)), E);
}

std::vector<double> radial_neumann_norms(const RadialProfile& profile, int n_terms, double u_max,
                                         double du) {
  if (n_terms < 1 || !(u_max > 0) || !(du > 0))
    throw InvalidArgument("radial norms need n_terms >= 1 and a positive lattice");
  const auto m = static_cast<std::size_t>(std::llround(u_max / du)) + 1;
  std::vector<complex> gamma(m), G(m), integral(m);
  std::vector<double> weight(m);
  for (std::size_t k = 0; k < m; ++k) {
    double u = du * static_cast<double>(k);
    gamma[k] = profile.gamma_log(u);
    weight[k] = std::exp(-2.0 * u) * ((k == 0 || k + 1 == m) ? 0.5 : 1.0);
  }
  auto norm = [&] {
    double s = 0.0;
    for (std::size_t k = 0; k < m; ++k) s += std::norm(G[k]) * weight[k];
    return std::sqrt(2.0 * std::numbers::pi * du * s);
  };
  G = gamma;
  std::vector<double> norms{norm()};
  for (int step = 1; step < n_terms; ++step) {
    integral[0] = 0.0;
    for (std::size_t k = 1; k < m; ++k) integral[k] = integral[k - 1] + 0.5 * du * (G[k - 1] + G[k]);
    for (std::size_t k = 0; k < m; ++k) G[k] = gamma[k] * (G[k] - 2.0 * integral[k]);
    norms.push_back(norm());
  }
  return norms;
}

double fitted_decay_slope(const std::vector<double>& norms, std::size_t first, std::size_t last) {
  if (first < 1 || last >= norms.size() || last <= first)
    throw InvalidArgument("invalid slope window");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double count = 0;
  for (std::size_t n = first; n <= last; ++n) {
    if (!(norms[n] > 0)) return std::numeric_limits<double>::infinity();
    double x = std::log(static_cast<double>(n));
    double y = -std::log(norms[n]);
    sx += x, sy += y, sxx += x * x, sxy += x * y, count += 1;
  }
  return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

ReportTable decay_report(const std::vector<double>& norms, double beta) {
  if (norms.size() < 16) throw InvalidArgument("decay report needs at least 16 terms");
  if (!(beta > 0)) throw InvalidArgument("beta must be positive");
  ReportTable table({"n", "norm", "envelope"});
  const std::size_t N = norms.size() - 1;
  const std::size_t half = N / 2;
  double head = 0, tail = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    double envelope = std::pow(static_cast<double>(n + 1), beta / 2) * norms[n];
    table.add_row({static_cast<double>(n), norms[n], envelope});
    if (n >= 1 && n <= half) head = std::max(head, envelope);
    if (n >= half) tail = std::max(tail, envelope);
  }
  table.note("beta", beta);
  table.note("envelope_head_max", head);
  table.note("envelope_tail_max", tail);
  table.note("dhat", fitted_decay_slope(norms, std::max<std::size_t>(half, 1), N));
  if (tail > 1.1 * head) table.fail("envelope grows over the tail window");
  return table;
}

ReportTable decay_report(const NeumannRun& run, double beta) { return decay_report(run.norms(), beta); }

}  // namespace beltrami
