#include "quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace nlsv {

namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr int kOriginPower = 6;

double origin_piece(const RealFunction& f, double x, const QuadratureSettings& q) {
  if (x <= 0.0) return 0.0;
  auto g = [&](double t) {
    if (t <= 0.0) return 0.0;
    const double t5 = std::pow(t, kOriginPower - 1);
    return f(x * t5 * t) * kOriginPower * x * t5;
  };
  return Rule::integrate(g, 0.0, 1.0, q.max_depth, q.rel_tol);
}

}  // namespace

double integrate(const RealFunction& f, double a, double b, const QuadratureSettings& q) {
  if (a == b) return 0.0;
  return Rule::integrate(f, a, b, q.max_depth, q.rel_tol);
}

double integrate_to(const RealFunction& f, double x, const QuadratureSettings& q) {
  return origin_piece(f, x, q);
}

double integrate_from(const RealFunction& f, double x, const QuadratureSettings& q) {
  const double inf = std::numeric_limits<double>::infinity();
  if (x < q.r_split) {
    const double head = x <= 0.0 ? origin_piece(f, q.r_split, q)
                                 : Rule::integrate(f, x, q.r_split, q.max_depth, q.rel_tol);
    return head + Rule::integrate(f, q.r_split, inf, q.max_depth, q.rel_tol);
  }
  return Rule::integrate(f, x, inf, q.max_depth, q.rel_tol);
}

double integrate_half_line(const RealFunction& f, const QuadratureSettings& q) {
  return integrate_from(f, 0.0, q);
}

}  // namespace nlsv
