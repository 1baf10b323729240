#include "beltrami/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>

#include "beltrami/error.hpp"

namespace beltrami {

namespace {

// Boost's refinement test is purely relative, so integrands at rounding-noise
// level recurse to full depth. One panel is accepted when its error estimate
// already sits below the absolute floor.
template <class F>
double gk31(const F& f, double a, double b, double tol, double* error, double* l1) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double value = GK::integrate(f, a, b, 0, tol, error, l1);
  if (*error <= 1e-3 * tol * std::max(1.0, *l1)) return value;
  return GK::integrate(f, a, b, 25, tol, error, l1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  double l1 = 0.0;
  double value;
  if (std::isfinite(b)) {
    // Boost compares the unscaled local error against a width-scaled
    // tolerance, so short intervals never converge; integrate over [0, 1].
    const double w = b - a;
    value = gk31([&](double s) { return w * f(a + w * s); }, 0.0, 1.0, tol, &error, &l1);
  } else {
    // Head [a, a + 1] plus a tail in u = a + e^s, which turns algebraic decay
    // into exponential decay. Past s = 700 the tail is below any tolerance.
    double head = integrate_adaptive(f, a, a + 1.0, tol);
    auto tail = [&](double s) {
      if (s > 700.0) return 0.0;
      double e = std::exp(s);
      return e * f(a + e);
    };
    double tail_l1 = 0.0;
    value = head + gk31(tail, 0.0, std::numeric_limits<double>::infinity(), tol, &error, &tail_l1);
    l1 = std::abs(head) + tail_l1;
  }
  if (!std::isfinite(value) || error > std::max(tol, tol * l1))
    throw QuadratureError("adaptive quadrature did not reach tolerance on [" + std::to_string(a) +
                          ", " + std::to_string(b) + "], error estimate " +
                          std::to_string(error));
  return value;
}

CumulativeIntegral::CumulativeIntegral(std::function<double(double)> f, double u_max,
                                       double node_step, double tol)
    : f_(std::move(f)), step_(node_step), tol_(tol) {
  if (!(u_max > 0) || !(node_step > 0)) throw InvalidArgument("invalid cumulative table range");
  auto count = static_cast<std::size_t>(std::ceil(u_max / node_step));
  table_.resize(count + 1);
  table_[0] = 0.0;
  for (std::size_t k = 1; k <= count; ++k) {
    double a = step_ * static_cast<double>(k - 1);
    table_[k] = table_[k - 1] + integrate_adaptive(f_, a, a + step_, tol_);
  }
}

double CumulativeIntegral::operator()(double u) const {
  if (u < 0) throw InvalidArgument("cumulative integral is defined for u >= 0");
  auto last = table_.size() - 1;
  auto k = std::min(static_cast<std::size_t>(std::lround(u / step_)), last);
  double node = step_ * static_cast<double>(k);
  double rest = (u >= node) ? integrate_adaptive(f_, node, u, tol_)
                            : -integrate_adaptive(f_, u, node, tol_);
  return table_[k] + rest;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) throw InvalidArgument("bisection bracket does not change sign");
  auto [a, b] = boost::math::tools::bisect(
      f, lo, hi, [tol](double x, double y) { return std::abs(y - x) <= tol; });
  return 0.5 * (a + b);
}

}  // namespace beltrami
