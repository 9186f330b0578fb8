#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dynamics.hpp"
#include "potentials.hpp"

namespace nlsv {

enum class InitialKind { ScaledGroundState, Gaussian, FromFile };
std::string initial_kind_name(InitialKind k);
InitialKind parse_initial_kind(const std::string& name);

struct InitialData {
  InitialKind kind = InitialKind::ScaledGroundState;
  double beta = 1.0;        // ScaledGroundState: u0 = beta Q
  bool discrete_q = false;  // use the Newton-polished profile of the solver Laplacian
  double amplitude = 1.0;   // Gaussian: amplitude exp(-r^2/width^2)
  double width = 1.0;
  std::string path;         // FromFile: CSV r,re,im (or r,Q) interpolated onto the grid
};

struct DiagnosticsConfig {
  bool morawetz = false;
  std::vector<double> radii{10.0};
  double eta = 0.1;
  std::size_t cutoff_resolution = 1024;
  bool interaction = false;
  bool coercivity = false;
  double rho = 0.0;  // 0 takes the smallest scattering margin along the run
  std::size_t coercivity_samples = 10;
  bool decay_test = false;
  double decay_t1 = 1.0;
  double decay_t2 = 10.0;
};

struct SweepConfig {
  bool enabled = false;
  double beta_min = 0.2;
  double beta_max = 1.4;
  double beta_step = 0.2;
  std::size_t workers = 1;
};

enum class RunMode { Single, Sweep, ThresholdCase };
std::string run_mode_name(RunMode m);
RunMode parse_run_mode(const std::string& name);

struct ExperimentConfig {
  std::string name = "run";
  RunMode mode = RunMode::Single;
  double alpha = 2.0;
  Sign sign = Sign::Focusing;
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  PotentialSpec potential;
  InitialData initial;
  SolverConfig solver;  // grid, sign and alpha are kept in sync with the fields above
  double gs_tol = 1e-10;
  std::string gs_cache_dir;  // empty disables the on-disk cache
  DiagnosticsConfig diagnostics;
  SweepConfig sweep;
};

// Flat "key = value" text with [run], [potential], [initial_data], [solver],
// [diagnostics] and [sweep] sections; '#' starts a comment.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Canonical text with every key in a fixed order; parse(serialize(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

// Throws Config on structural inconsistencies (sweep with FromFile data, bad ranges).
void check_config(const ExperimentConfig& cfg);

std::vector<double> sweep_betas(const SweepConfig& s);

// Shortest text that parses back to the same double.
std::string format_double(double x);

}  // namespace nlsv
