#include "grid.hpp"

#include <numbers>
#include <string>

#include "errors.hpp"

namespace nlsv {

RadialGrid::RadialGrid(double r_max, std::size_t n_points) : r_max_(r_max), n_(n_points) {
  if (!(r_max > 0.0)) fail(ErrorKind::Config, "radial grid: r_max must be positive");
  if (n_points < 64) fail(ErrorKind::Config, "radial grid: n_points must be at least 64");
  if (n_points % 2 != 0) fail(ErrorKind::Config, "radial grid: n_points must be even (Simpson)");
  h_ = r_max / static_cast<double>(n_points);
}

double line_integral(const RadialGrid& grid, std::span<const double> g) {
  const std::size_t n = grid.n_points();
  if (g.size() != n + 1) fail(ErrorKind::Config, "line_integral: size mismatch");
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; i += 2) odd += g[i];
  for (std::size_t i = 2; i < n; i += 2) even += g[i];
  return grid.spacing() / 3.0 * (g[0] + g[n] + 4.0 * odd + 2.0 * even);
}

double radial_integral(const RadialGrid& grid, std::span<const double> f) {
  const std::size_t n = grid.n_points();
  if (f.size() != n + 1) fail(ErrorKind::Config, "radial_integral: size mismatch");
  std::vector<double> g(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double r = grid.r(i);
    g[i] = f[i] * r * r;
  }
  return 4.0 * std::numbers::pi * line_integral(grid, g);
}

double radial_trapezoid(const RadialGrid& grid, std::span<const double> f) {
  const std::size_t n = grid.n_points();
  if (f.size() != n + 1) fail(ErrorKind::Config, "radial_trapezoid: size mismatch");
  double s = 0.5 * f[n] * grid.r_max() * grid.r_max();
  for (std::size_t i = 1; i < n; ++i) s += f[i] * grid.r(i) * grid.r(i);
  return 4.0 * std::numbers::pi * grid.spacing() * s;
}

}  // namespace nlsv
