#include "field.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "errors.hpp"

namespace nlsv {

FieldState make_field(const RadialGrid& grid, const std::function<cplx(double)>& profile, double time) {
  FieldState u{grid, std::vector<cplx>(grid.size()), time};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) u.values[i] = profile(grid.r(i));
  u.values.back() = 0.0;
  return u;
}

FieldState zero_field(const RadialGrid& grid) { return {grid, std::vector<cplx>(grid.size()), 0.0}; }

FieldState gaussian_field(const RadialGrid& grid, double amplitude, double width) {
  if (!(width > 0.0)) fail(ErrorKind::Config, "gaussian width must be positive");
  return make_field(grid, [=](double r) { return cplx(amplitude * std::exp(-(r * r) / (width * width))); });
}

void check_finite(const FieldState& u) {
  for (const auto& z : u.values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail(ErrorKind::Solver, "field has non-finite values");
}

std::vector<cplx> gradient_of_ru(const FieldState& u) {
  const std::size_t n = u.grid.n_points();
  const double h = u.grid.spacing();
  auto v = [&](long i) -> cplx {
    const long nn = static_cast<long>(n);
    if (i < 0) return -(static_cast<double>(-i) * h) * u.values[static_cast<std::size_t>(-i)];
    if (i > nn) return -(static_cast<double>(2 * nn - i) * h) * u.values[static_cast<std::size_t>(2 * nn - i)];
    return (static_cast<double>(i) * h) * u.values[static_cast<std::size_t>(i)];
  };
  std::vector<cplx> d(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const long i = static_cast<long>(k);
    d[k] = (v(i - 2) - 8.0 * v(i - 1) + 8.0 * v(i + 1) - v(i + 2)) / (12.0 * h);
  }
  return d;
}

std::vector<cplx> radial_gradient(const FieldState& u) {
  auto d = gradient_of_ru(u);
  d[0] = 0.0;
  for (std::size_t i = 1; i < d.size(); ++i) d[i] = (d[i] - u.values[i]) / u.grid.r(i);
  return d;
}

AxialQuadrature axial_rule(std::size_t n_mu) {
  // Composite 20-point Gauss-Legendre on equal panels of [-1, 1].
  using GL = boost::math::quadrature::gauss<double, 20>;
  const std::size_t panels = std::max<std::size_t>(1, n_mu / 20);
  AxialQuadrature q;
  const auto& x = GL::abscissa();
  const auto& w = GL::weights();
  const double half = 1.0 / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double c = -1.0 + (2.0 * static_cast<double>(p) + 1.0) * half;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k] == 0.0) {
        q.mu.push_back(c);
        q.mu_weight.push_back(half * w[k]);
      } else {
        q.mu.push_back(c - half * x[k]);
        q.mu_weight.push_back(half * w[k]);
        q.mu.push_back(c + half * x[k]);
        q.mu_weight.push_back(half * w[k]);
      }
    }
  }
  return q;
}

}  // namespace nlsv
