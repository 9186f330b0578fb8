#pragma once

#include <string>

#include "field.hpp"
#include "groundstate.hpp"
#include "potentials.hpp"

namespace nlsv {

enum class Sign { Focusing, Defocusing };

std::string sign_name(Sign s);
Sign parse_sign(const std::string& name);

// +1 for defocusing, -1 for focusing: i u_t + Lap u - V u = mu |u|^alpha u.
inline double sign_factor(Sign s) { return s == Sign::Defocusing ? 1.0 : -1.0; }

// V on the nodes; node 0 carries 0 (it only enters with an r^2 weight).
std::vector<double> potential_on_grid(const PotentialSpec& spec, const RadialGrid& grid);

double mass(const FieldState& u);
double gradient_sq(const FieldState& u);                      // ||grad u||^2
double lp_integral(const FieldState& u, double p);            // int |u|^p
double potential_energy(const FieldState& u, const PotentialSpec& spec);  // int V |u|^2
double energy(const FieldState& u, const PotentialSpec& spec, Sign sign, double alpha);
double scattering_quantity(const FieldState& u, double alpha);

enum class Verdict { BelowThreshold, AtThreshold, AboveGradProduct, Indeterminate };
std::string verdict_name(Verdict v);

struct ThresholdReport {
  double energy = 0.0;
  double mass = 0.0;
  double energy_product = 0.0;
  double grad_product = 0.0;
  double scat_quantity = 0.0;
  double threshold_energy = 0.0;
  double threshold_grad = 0.0;
  double threshold_scat = 0.0;
  // (threshold - value) / threshold; positive means below.
  double energy_margin = 0.0;
  double grad_margin = 0.0;
  double scat_margin = 0.0;
  Verdict verdict = Verdict::Indeterminate;
  std::string note;
};

ThresholdReport classify_initial_data(const FieldState& u0, const GroundState& gs, const PotentialSpec& spec,
                                      double equality_tol = 1e-6, Sign sign = Sign::Focusing);

double variational_G(double lambda, const GroundState& gs);
double variational_H(double lambda_ratio, double alpha);
double coercivity_nu(double rho, double alpha);

double gn_ratio(const FieldState& f, double alpha);

struct RefinedGn {
  double lhs;
  double rhs;
};

RefinedGn refined_gn_check(const FieldState& f, double xi_magnitude, double alpha, const GroundState& gs);

}  // namespace nlsv
