#pragma once

#include "beltrami/field.hpp"
#include "beltrami/report.hpp"

namespace beltrami {

/// Symmetric 2x2 matrix [[a11, a12], [a12, a22]].
struct SymmetricMatrix {
  double a11;
  double a12;
  double a22;
};

/// Beltrami data (mu, nu) of f = u + iv with grad v = J A grad u, J(x, y) = (-y, x):
/// f_zbar = mu f_z + nu conj(f_z), nu real.
struct BeltramiData {
  complex mu;
  complex nu;
};

BeltramiData beltrami_from_matrix(const SymmetricMatrix& A);
SymmetricMatrix matrix_from_beltrami(complex mu, double nu);
/// max(lambda_max, 1/lambda_min); throws InvalidField for non-SPD input.
double ellipticity(const SymmetricMatrix& A);

/// Symmetric positive definite matrix field, validated at construction.
class MatrixField {
 public:
  MatrixField(RealField a11, RealField a12, RealField a22);

  const Grid& grid() const { return a11_.grid(); }
  const RealField& a11() const { return a11_; }
  const RealField& a12() const { return a12_; }
  const RealField& a22() const { return a22_; }
  SymmetricMatrix at(std::size_t k) const { return {a11_[k], a12_[k], a22_[k]}; }

  static MatrixField constant(const Grid& grid, const SymmetricMatrix& A);

 private:
  RealField a11_;
  RealField a12_;
  RealField a22_;
};

struct BeltramiFields {
  ComplexField mu;
  ComplexField nu;
};

RealField ellipticity(const MatrixField& A);
BeltramiFields beltrami_from_matrix(const MatrixField& A);
/// Inverse of beltrami_from_matrix; nu must be real.
MatrixField matrix_from_beltrami(const ComplexField& mu, const ComplexField& nu);

/// Residuals r1 = ||grad v - J A grad u|| and r2 = ||f_zbar - mu f_z - nu conj(f_z)||
/// for f = u + iv, with finite-difference derivatives. Asserts
/// r2 <= 10 r1 + 1e-8 ||Df||.
ReportTable conjugate_relation_check(const RealField& u, const RealField& v, const MatrixField& A);

/// h^2 sum over the region of <grad u, A grad u>.
double energy(const RealField& u, const MatrixField& A, const RegionMask& region);

}  // namespace beltrami
