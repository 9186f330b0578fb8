#pragma once

#include <functional>
#include <vector>

#include "grid.hpp"

namespace nlsv {

// Complex radial field u(r_i) at time t. values[n] is the Dirichlet node.
struct FieldState {
  RadialGrid grid;
  std::vector<cplx> values;
  double time = 0.0;
};

FieldState make_field(const RadialGrid& grid, const std::function<cplx(double)>& profile, double time = 0.0);
FieldState zero_field(const RadialGrid& grid);

// Real Gaussian amplitude * exp(-r^2 / width^2).
FieldState gaussian_field(const RadialGrid& grid, double amplitude, double width);

void check_finite(const FieldState& u);

// Radial derivative u_r on the nodes, from 4th-order centred differences of
// v = r u (odd reflection at r = 0 and at r_max).
std::vector<cplx> radial_gradient(const FieldState& u);

// d/dr (r u) on the nodes, same stencil.
std::vector<cplx> gradient_of_ru(const FieldState& u);

// Nodes and weights on mu = cos(theta) in [-1, 1], for axisymmetric
// integrals dx = 2 pi r^2 dr dmu.
struct AxialQuadrature {
  std::vector<double> mu;
  std::vector<double> mu_weight;
};

AxialQuadrature axial_rule(std::size_t n_mu);

}  // namespace nlsv
