#pragma once

#include <array>
#include <vector>

#include "cutoffs.hpp"
#include "dynamics.hpp"

namespace nlsv {

// 4 pi int psi_R(r) r 2 Im(conj(u) u_r) r^2 dr.
double morawetz_action(const FieldState& u, const CutoffProfile& p);

// Right-hand side of the Morawetz identity after integration by parts.
struct MorawetzTerms {
  double nonlinear;   // mu 2a/(a+2) int (phi + 2 psi) |u|^{a+2}
  double laplacian;   // int (phi + 2 psi)' d_r |u|^2
  double kinetic;     // 4 int phi |u_r|^2
  double angular;     // 4 int (psi - phi)(|grad u|^2 - |u_r|^2), zero for radial u
  double potential;   // -2 int psi r V' |u|^2
  double sum() const { return nonlinear + laplacian + kinetic + angular + potential; }
};

MorawetzTerms morawetz_terms(const FieldState& u, const CutoffProfile& p, const PotentialSpec& spec, Sign sign,
                             double alpha);

struct MorawetzSample {
  double t;
  double action;
  double dmdt;          // central difference over neighbouring snapshots
  MorawetzTerms terms;
  double residual;      // |dmdt - sum| / scale
  double inequality_lhs;  // -R int V' |u|^2
  double inequality_rhs;  // right side with the O(R^{-2}) term dropped
  double slack;           // rhs - lhs
};

struct MorawetzSeries {
  std::vector<MorawetzSample> samples;
  double scale = 0.0;  // max over samples of the summed term magnitudes
  double max_residual = 0.0;
  double min_slack = 0.0;
};

MorawetzSeries morawetz_identity_residual(const Trajectory& traj, const CutoffProfile& p,
                                          const PotentialSpec& spec, Sign sign, double alpha);

// Axisymmetric quadrature for fields e^{i k x_3} u(r) against chi_R(x - z e_3).
struct AxialSettings {
  std::size_t n_mu = 80;
};

// xi = -P_3 / A with A = int chi^2 |u|^2, P_3 = int chi^2 Im(conj(w) d_3 w),
// w = e^{i k x_3} u. Zero when A < 1e-14 M(u).
double galilean_shift(const FieldState& u, const CutoffProfile& p, double z, double k = 0.0,
                      const AxialSettings& q = {});

// Localised axial momentum int chi_R^2(x - z) Im(conj(w) d_3 w), w = e^{i k x_3} u.
double localized_momentum(const FieldState& u, const CutoffProfile& p, double z, double k,
                          const AxialSettings& q = {});

struct InteractionIntegrand {
  double a;                  // int chi^2 |w|^2
  double b;                  // int chi^2 |grad w|^2
  std::array<double, 3> p;   // int chi^2 Im(conj(w) grad w)
  double value() const { return a * b - (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]); }
};

// Full 3D quadrature of the interaction integrand for w = e^{i x.xi} u.
InteractionIntegrand interaction_integrand(const FieldState& u, const CutoffProfile& p, double z,
                                           const std::array<double, 3>& xi, std::size_t n_mu = 40,
                                           std::size_t n_azimuth = 32);

struct InteractionSettings {
  std::size_t radial_stride = 4;  // use every stride-th grid node
  std::size_t n_cos = 48;
};

// Two-point Morawetz action for radial u.
double interaction_action(const FieldState& u, const CutoffProfile& p, const InteractionSettings& q = {});

struct CoercivityResult {
  double xi;
  double lhs;
  double rhs;
  double grad_sq;
  bool holds;
};

CoercivityResult coercivity_check(const FieldState& u, const CutoffProfile& p, double z, const GroundState& gs,
                                  double rho, double k = 0.0, const AxialSettings& q = {});

}  // namespace nlsv
