#pragma once

#include <functional>
#include <string>
#include <vector>

#include "field.hpp"
#include "functionals.hpp"

namespace nlsv {

enum class Scheme { StrangSplit, CrankNicolsonRelaxed };
std::string scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

struct SolverConfig {
  RadialGrid grid;
  double dt = 1e-3;
  double t_end = 1.0;
  Scheme scheme = Scheme::StrangSplit;
  Sign sign = Sign::Focusing;
  double alpha = 2.0;
  double blowup_grad_factor = 1e3;
  double mass_drift_tol = 1e-8;
  double energy_drift_tol = 1e-2;
  std::size_t snapshot_stride = 0;  // steps between snapshots; 0 keeps first and last only
  bool nonlinear = true;            // false evolves the linear flow with V only
  double boundary_mass_fraction = 1e-6;
  // Grid-scale collapse trigger: peak |u| grown by this factor with a
  // half-width of at most collapse_cells grid cells.
  double collapse_peak_factor = 3.0;
  double collapse_cells = 6.0;
  int refinement_levels = 2;  // dt halvings tried before declaring blow-up
};

void check_solver_config(const SolverConfig& cfg);

enum class Outcome { Completed, BlowupDetected, ToleranceViolated };
std::string outcome_name(Outcome o);

struct SeriesRecord {
  double t;
  double mass;
  double energy;
  double grad_norm;           // ||grad u||
  double lp_norm;             // ||u||_{alpha+2}^{alpha+2}
  double scat_quantity;
  double potential_fraction;  // |int V|u|^2| share of the energy budget
  double variance;            // int r^2 |u|^2 / M
};

struct Trajectory {
  std::vector<FieldState> snapshots;
  std::vector<SeriesRecord> series;
  Outcome outcome = Outcome::Completed;
  std::string message;
  double dt_used = 0.0;
  std::size_t snapshot_stride = 0;
  int refinements = 0;
  double max_mass_drift = 0.0;
  double max_energy_drift = 0.0;
};

// One-step propagator; keeps the factorised kinetic matrix between steps.
class Stepper {
 public:
  Stepper(const SolverConfig& cfg, const PotentialSpec& spec);
  void advance(FieldState& u);
  double dt() const { return dt_; }

 private:
  void local_phase(FieldState& u, double tau) const;
  void kinetic(FieldState& u);
  void relaxed(FieldState& u);

  SolverConfig cfg_;
  double dt_;
  std::vector<double> vpot_;
  std::vector<cplx> lower_, diag_, upper_;  // Thomas factors of (I - i dt/2 L)
  std::vector<double> phi_half_;            // relaxation variable
  std::vector<cplx> rhs_, work_;
};

// Q re-solved by Newton for the solver's three-point Laplacian on gs.grid.
// It is a fixed point (up to phase) of the relaxation scheme, whereas the
// continuum profile seeds the unstable mode of the standing wave at O(h^2).
FieldState discrete_ground_state(const GroundState& gs, double tol = 1e-13);

FieldState step(const FieldState& u, const SolverConfig& cfg, const PotentialSpec& spec);

SeriesRecord measure(const FieldState& u, const SolverConfig& cfg, const PotentialSpec& spec);

Trajectory evolve(const FieldState& u0, const SolverConfig& cfg, const PotentialSpec& spec);

struct DecayFit {
  double exponent;
  double fit_residual;
  std::vector<double> times;
  std::vector<double> sup_norms;
};

// Slope of log ||u(t)||_inf against log t for the linear flow over [t1, t2].
DecayFit linear_decay_exponent(const FieldState& f, const PotentialSpec& spec, double t1, double t2,
                               const SolverConfig& cfg, std::size_t samples_per_decade = 12);

enum class ProxyHint { ScatterLike, SolitonLike, Undetermined };
std::string proxy_name(ProxyHint h);

struct ProxyReport {
  double decay_factor_lp = 0.0;
  double final_potential_fraction = 0.0;
  ProxyHint verdict_hint = ProxyHint::Undetermined;
};

inline constexpr double kScatterProxyThreshold = 0.2;

ProxyReport scattering_proxy(const Trajectory& traj);

}  // namespace nlsv
