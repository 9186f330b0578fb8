#pragma once

#include <functional>

namespace nlsv {

struct QuadratureSettings {
  double rel_tol = 1e-9;
  double r_split = 1.0;     // origin piece [0, r_split], tail [r_split, inf)
  unsigned max_depth = 30;  // adaptive bisection depth
};

using RealFunction = std::function<double(double)>;

// Adaptive Gauss-Kronrod on a finite interval.
double integrate(const RealFunction& f, double a, double b, const QuadratureSettings& q = {});

// int_0^inf f(r) dr for integrands with an integrable power singularity at 0.
// The origin piece is computed after r = r_split * t^6, which regularises
// r^p for p > -1; the tail uses the rule's semi-infinite map.
double integrate_half_line(const RealFunction& f, const QuadratureSettings& q = {});

// int_x^inf f(r) dr with the same origin treatment when x is small.
double integrate_from(const RealFunction& f, double x, const QuadratureSettings& q = {});

// int_0^x f(r) dr with the origin substitution.
double integrate_to(const RealFunction& f, double x, const QuadratureSettings& q = {});

}  // namespace nlsv
