#pragma once

#include <string>
#include <vector>

#include "grid.hpp"

namespace nlsv {

struct CriticalExponents {
  double gamma_c;
  double sigma_c;
};

// gamma_c = 3/2 - 2/alpha, sigma_c = (4 - alpha)/(3 alpha - 4); alpha in (4/3, 4).
CriticalExponents critical_exponents(double alpha);

struct GroundState {
  double alpha = 0.0;
  RadialGrid grid;
  std::vector<double> q_values;  // Q(r_i), i = 0..n
  std::vector<double> q_prime;   // Q'(r_i) from the ODE integration
  double q0 = 0.0;
  double mass = 0.0;      // ||Q||_2^2
  double grad_sq = 0.0;   // ||grad Q||_2^2
  double lp_norm = 0.0;   // ||Q||_{alpha+2}^{alpha+2}
  double c_opt = 0.0;
  double e0 = 0.0;
  double sigma_c = 0.0;
  double gamma_c = 0.0;
  double matching_radius = 0.0;  // where the analytic tail takes over
};

// Positive radial solution of -Q'' - (2/r) Q' + Q - Q^{alpha+1} = 0 by
// RK4 shooting and bisection on Q(0).
GroundState solve_ground_state(double alpha, const RadialGrid& grid, double tol = 1e-10);

struct PohozaevResiduals {
  double res1;
  double res2;
};

PohozaevResiduals pohozaev_residuals(const GroundState& gs);

struct SharpConstants {
  double c_opt;
  double e0_q;
  double threshold_energy;  // E0(Q) M(Q)^{sigma_c}
  double threshold_grad;    // ||grad Q|| ||Q||^{sigma_c}
  double threshold_scat;    // ||Q||_{alpha+2}^{alpha+2} ||Q||^{2 sigma_c}
};

SharpConstants sharp_constants(const GroundState& gs);

// Recomputes mass/grad_sq/lp_norm/constants from q_values and q_prime.
void refresh_norms(GroundState& gs);

void write_ground_state_csv(const GroundState& gs, const std::string& path);

}  // namespace nlsv
