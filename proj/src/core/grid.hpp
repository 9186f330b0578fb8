#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlsv {

using cplx = std::complex<double>;

// Uniform radial grid r_i = i*h, i = 0..n, h = r_max/n.
// Node 0 sits at the origin and only carries quadrature weight; node n is the
// outer Dirichlet node.
class RadialGrid {
 public:
  RadialGrid() = default;
  RadialGrid(double r_max, std::size_t n_points);

  double r_max() const { return r_max_; }
  std::size_t n_points() const { return n_; }
  double spacing() const { return h_; }
  std::size_t size() const { return n_ + 1; }
  double r(std::size_t i) const { return static_cast<double>(i) * h_; }

  bool operator==(const RadialGrid& o) const { return n_ == o.n_ && r_max_ == o.r_max_; }

 private:
  double r_max_ = 0.0;
  std::size_t n_ = 0;
  double h_ = 0.0;
};

// 4*pi * int_0^{r_max} f(r) r^2 dr by composite Simpson on the grid nodes.
double radial_integral(const RadialGrid& grid, std::span<const double> f);

// Same integral by the trapezoid rule. For even smooth f this is spectrally
// accurate, and on |u|^2 it is exactly the norm the kinetic step preserves.
double radial_trapezoid(const RadialGrid& grid, std::span<const double> f);

// Plain int_0^{r_max} g(r) dr by composite Simpson (no 4*pi r^2 weight).
double line_integral(const RadialGrid& grid, std::span<const double> g);

}  // namespace nlsv
