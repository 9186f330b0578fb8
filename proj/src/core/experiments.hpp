#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "groundstate.hpp"
#include "morawetz.hpp"

namespace nlsv {

struct DiagnosticRow {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

enum class ExitCode : int { Ok = 0, RuntimeFailure = 1, ValidationFailure = 2, Usage = 64 };

struct RunSummary {
  ExperimentConfig config;
  Theorem theorem = Theorem::BelowThreshold;
  AssumptionReport assumptions;
  SharpConstants constants{};
  std::optional<ThresholdReport> threshold;
  bool evolved = false;
  Outcome outcome = Outcome::Completed;
  std::string outcome_message;
  double dt_used = 0.0;
  int refinements = 0;
  std::size_t steps = 0;
  std::size_t snapshots = 0;
  std::size_t snapshot_stride = 0;
  double mass_drift = 0.0;
  double energy_drift = 0.0;
  ProxyReport proxy;
  std::vector<DiagnosticRow> diagnostics;
  std::string branch_note;       // threshold-case report
  double amplitude_factor = 1.0;  // root-found amplitude of the threshold case
  std::vector<std::string> errors;
  double wall_seconds = 0.0;
  int exit_code = 0;
};

// Which hypothesis set the run is checked against.
Theorem theorem_for(const ExperimentConfig& cfg);

// Solves Q on the solver grid, reusing cfg.gs_cache_dir when set.
GroundState ground_state_for(const ExperimentConfig& cfg);
GroundState load_or_solve_ground_state(double alpha, const RadialGrid& grid, double tol, const std::string& cache_dir);

FieldState build_initial_data(const ExperimentConfig& cfg, const GroundState& gs);

// CSV with header r,re,im (or r,Q), linearly interpolated; zero outside the table.
FieldState load_field_csv(const std::string& path, const RadialGrid& grid);
void write_field_csv(const FieldState& u, const std::string& path);

void write_trajectory(const Trajectory& traj, const std::string& dir,
                      const std::vector<std::pair<double, MorawetzSeries>>& morawetz = {});
// Reads snapshots/index.csv and the snapshot files written by write_trajectory.
Trajectory load_trajectory(const std::string& dir, const RadialGrid& grid);

std::vector<DiagnosticRow> run_diagnostics(const ExperimentConfig& cfg, const Trajectory& traj, const GroundState& gs,
                                           std::vector<std::pair<double, MorawetzSeries>>* morawetz_out = nullptr);

RunSummary run_single(const ExperimentConfig& cfg, const GroundState* gs = nullptr);

struct SweepRow {
  double beta = 0.0;
  double energy_margin = 0.0;
  double grad_margin = 0.0;
  std::string verdict;
  std::string outcome;
  std::string proxy;
  int exit_code = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  int exit_code = 0;
};

inline constexpr const char* kDichotomyHeader = "beta,energy_margin,grad_margin,verdict,outcome,proxy";

SweepResult run_sweep(const ExperimentConfig& cfg);

// Amplitude factor b with E(bQ) M(bQ)^{sigma_c} equal to the V = 0 threshold.
double threshold_amplitude(const GroundState& gs, const PotentialSpec& spec);

RunSummary run_threshold_case(const ExperimentConfig& cfg);

// Linear-flow decay fit on the configured initial data. Checks only the
// hypotheses the dispersive estimate uses (Kato class, L^{3/2}, small V_-).
RunSummary run_decay_test(const ExperimentConfig& cfg);

// Morawetz suite on a trajectory saved by write_trajectory; writes diagnostics.json.
RunSummary run_diagnose(const ExperimentConfig& cfg, const std::string& trajectory_dir);

// Hypothesis check only; writes assumptions.json. Exit 2 when it fails.
RunSummary run_validation(const ExperimentConfig& cfg, std::optional<Theorem> theorem = std::nullopt);

// Dispatches on cfg.mode; returns the process exit code.
int run_experiment(const ExperimentConfig& cfg);

std::string summary_json(const RunSummary& s);
void write_summary(const RunSummary& s, const std::string& dir);

// Q.csv and constants.json.
void write_ground_state_artifacts(const GroundState& gs, const std::string& dir);
std::string constants_json(const GroundState& gs);
std::string assumption_json(const AssumptionReport& r);

}  // namespace nlsv
