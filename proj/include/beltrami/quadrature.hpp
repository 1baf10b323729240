#pragma once

#include <functional>
#include <vector>

namespace beltrami {

/// Adaptive Gauss-Kronrod on [a, b]; b may be +infinity. Throws
/// QuadratureError when the error estimate exceeds max(tol, tol * |result|).
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-10);

/// Running integral F(u) = int_0^u f for u >= 0, tabulated on a uniform
/// node lattice and completed by a short adaptive integral from the nearest
/// node. Evaluations beyond the table continue adaptively from its end.
class CumulativeIntegral {
 public:
  CumulativeIntegral(std::function<double(double)> f, double u_max, double node_step = 0.5,
                     double tol = 1e-10);
  double operator()(double u) const;
  double u_max() const { return step_ * static_cast<double>(table_.size() - 1); }

 private:
  std::function<double(double)> f_;
  double step_;
  double tol_;
  std::vector<double> table_;
};

/// Root of a monotone f on [lo, hi] by bisection to absolute width tol.
double bisect(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13);

}  // namespace beltrami
