#include "beltrami/elliptic.hpp"

#include <cmath>

#include "beltrami/parallel.hpp"

namespace beltrami {

namespace {

void require_spd(const SymmetricMatrix& A) {
  double det = A.a11 * A.a22 - A.a12 * A.a12;
  if (!(A.a11 > 0) || !(det > 0)) throw InvalidField("matrix is not symmetric positive definite");
}

}  // namespace

BeltramiData beltrami_from_matrix(const SymmetricMatrix& A) {
  require_spd(A);
  double det = A.a11 * A.a22 - A.a12 * A.a12;
  double denom = 1.0 + A.a11 + A.a22 + det;
  return {complex{A.a22 - A.a11, -2.0 * A.a12} / denom, complex{(1.0 - det) / denom}};
}

SymmetricMatrix matrix_from_beltrami(complex mu, double nu) {
  if (!(std::abs(mu) + std::abs(nu) < 1)) throw InvalidField("Beltrami data needs |mu| + |nu| < 1");
  double D = 4.0 / ((1.0 + nu) * (1.0 + nu) - std::norm(mu));
  double tau = 0.5 * (D * (1.0 + nu) - 2.0);
  complex b = -0.5 * D * mu;
  return {tau + b.real(), b.imag(), tau - b.real()};
}

double ellipticity(const SymmetricMatrix& A) {
  require_spd(A);
  double mean = 0.5 * (A.a11 + A.a22);
  double radius = std::hypot(0.5 * (A.a11 - A.a22), A.a12);
  double lmax = mean + radius;
  double lmin = (A.a11 * A.a22 - A.a12 * A.a12) / lmax;
  return std::max(lmax, 1.0 / lmin);
}

MatrixField::MatrixField(RealField a11, RealField a12, RealField a22)
    : a11_(std::move(a11)), a12_(std::move(a12)), a22_(std::move(a22)) {
  require_same_grid(a11_.grid(), a12_.grid());
  require_same_grid(a11_.grid(), a22_.grid());
  for (std::size_t k = 0; k < a11_.size(); ++k) require_spd(at(k));
}

MatrixField MatrixField::constant(const Grid& grid, const SymmetricMatrix& A) {
  return MatrixField(RealField(grid, std::vector<double>(grid.size(), A.a11)),
                     RealField(grid, std::vector<double>(grid.size(), A.a12)),
                     RealField(grid, std::vector<double>(grid.size(), A.a22)));
}

RealField ellipticity(const MatrixField& A) {
  std::vector<double> K(A.grid().size());
  for (std::size_t k = 0; k < K.size(); ++k) K[k] = ellipticity(A.at(k));
  return RealField(A.grid(), std::move(K));
}

BeltramiFields beltrami_from_matrix(const MatrixField& A) {
  std::vector<complex> mu(A.grid().size()), nu(A.grid().size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    BeltramiData d = beltrami_from_matrix(A.at(k));
    mu[k] = d.mu;
    nu[k] = d.nu;
  }
  return {ComplexField(A.grid(), std::move(mu)), ComplexField(A.grid(), std::move(nu))};
}

MatrixField matrix_from_beltrami(const ComplexField& mu, const ComplexField& nu) {
  require_same_grid(mu.grid(), nu.grid());
  const Grid& g = mu.grid();
  std::vector<double> a11(g.size()), a12(g.size()), a22(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(nu[k].imag()) > 1e-12) throw InvalidField("nu must be real");
    SymmetricMatrix A = matrix_from_beltrami(mu[k], nu[k].real());
    a11[k] = A.a11;
    a12[k] = A.a12;
    a22[k] = A.a22;
  }
  return MatrixField(RealField(g, std::move(a11)), RealField(g, std::move(a12)),
                     RealField(g, std::move(a22)));
}

ReportTable conjugate_relation_check(const RealField& u, const RealField& v, const MatrixField& A) {
  require_same_grid(u.grid(), v.grid());
  require_same_grid(u.grid(), A.grid());
  const Grid& g = u.grid();
  Gradient gu = gradient(u);
  Gradient gv = gradient(v);
  BeltramiFields data = beltrami_from_matrix(A);
  const double h2 = g.cell_area();
  double r1 = parallel_sum(g.size(), [&](std::size_t k) {
    SymmetricMatrix M = A.at(k);
    double px = M.a11 * gu.dx[k] + M.a12 * gu.dy[k];
    double py = M.a12 * gu.dx[k] + M.a22 * gu.dy[k];
    // J(px, py) = (-py, px)
    double ex = gv.dx[k] + py;
    double ey = gv.dy[k] - px;
    return ex * ex + ey * ey;
  });
  double r2 = parallel_sum(g.size(), [&](std::size_t k) {
    complex fx{gu.dx[k], gv.dx[k]};
    complex fy{gu.dy[k], gv.dy[k]};
    complex fz = 0.5 * (fx - complex{0, 1} * fy);
    complex fzbar = 0.5 * (fx + complex{0, 1} * fy);
    return std::norm(fzbar - data.mu[k] * fz - data.nu[k] * std::conj(fz));
  });
  double df = parallel_sum(g.size(), [&](std::size_t k) {
    complex fx{gu.dx[k], gv.dx[k]};
    complex fy{gu.dy[k], gv.dy[k]};
    double D = std::abs(0.5 * (fx - complex{0, 1} * fy)) + std::abs(0.5 * (fx + complex{0, 1} * fy));
    return D * D;
  });
  r1 = std::sqrt(h2 * r1);
  r2 = std::sqrt(h2 * r2);
  df = std::sqrt(h2 * df);
  ReportTable table({"r1", "r2", "df_norm"});
  table.add_checked_row({r1, r2, df}, r2 <= 10.0 * r1 + 1e-8 * df);
  return table;
}

double energy(const RealField& u, const MatrixField& A, const RegionMask& region) {
  require_same_grid(u.grid(), A.grid());
  require_same_grid(u.grid(), region.grid());
  Gradient gu = gradient(u);
  double sum = parallel_sum(u.size(), [&](std::size_t k) {
    if (!region.contains(k)) return 0.0;
    SymmetricMatrix M = A.at(k);
    double x = gu.dx[k], y = gu.dy[k];
    return x * (M.a11 * x + M.a12 * y) + y * (M.a12 * x + M.a22 * y);
  });
  return sum * u.grid().cell_area();
}

}  // namespace beltrami
