#include "experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <boost/math/tools/roots.hpp>
#include "json.hpp"

#include "errors.hpp"

namespace nlsv {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create directory '" + dir + "': " + ec.message());
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

std::string join(const std::string& a, const std::string& b) { return (fs::path(a) / b).string(); }

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_num(const std::string& s, const std::string& where) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) fail(ErrorKind::Io, where + ": bad number '" + s + "'");
  return x;
}

// Finite doubles as numbers, the rest as null (JSON has no inf/nan).
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string fmt(double x) { return format_double(x); }

}  // namespace

Theorem theorem_for(const ExperimentConfig& cfg) {
  if (cfg.potential.family == PotentialFamily::InversePower) return Theorem::InversePowerTheorems;
  if (cfg.sign == Sign::Defocusing) return Theorem::ScatteringCriterionDefocusing;
  if (cfg.mode == RunMode::ThresholdCase) return Theorem::AtThreshold;
  return Theorem::BelowThreshold;
}

// ---------------------------------------------------------------- ground state

GroundState load_or_solve_ground_state(double alpha, const RadialGrid& grid, double tol, const std::string& cache_dir) {
  if (cache_dir.empty()) return solve_ground_state(alpha, grid, tol);
  const std::string name = "Q_a" + fmt(alpha) + "_r" + fmt(grid.r_max()) + "_n" + std::to_string(grid.n_points()) +
                           "_tol" + fmt(tol) + ".txt";
  const std::string path = join(cache_dir, name);
  if (std::ifstream in(path); in) {
    GroundState gs;
    gs.alpha = alpha;
    gs.grid = grid;
    double a = 0.0;
    in >> a >> gs.matching_radius;
    gs.q_values.resize(grid.size());
    gs.q_prime.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) in >> gs.q_values[i] >> gs.q_prime[i];
    if (in && a == alpha) {
      refresh_norms(gs);
      return gs;
    }
  }
  GroundState gs = solve_ground_state(alpha, grid, tol);
  ensure_dir(cache_dir);
  // Write to a private name first so concurrent readers never see a partial file.
  const std::string tmp = path + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    auto out = open_out(tmp);
    out << fmt(alpha) << " " << fmt(gs.matching_radius) << "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) out << fmt(gs.q_values[i]) << " " << fmt(gs.q_prime[i]) << "\n";
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
  return gs;
}

GroundState ground_state_for(const ExperimentConfig& cfg) {
  return load_or_solve_ground_state(cfg.alpha, cfg.solver.grid, cfg.gs_tol, cfg.gs_cache_dir);
}

// ---------------------------------------------------------------- fields

FieldState load_field_csv(const std::string& path, const RadialGrid& grid) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open field file '" + path + "'");
  std::string line;
  std::vector<double> r, re, im;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_csv(line);
    if (lineno == 1 && !cols.empty() && cols[0] == "r") continue;
    if (cols.size() < 2) fail(ErrorKind::Io, path + ":" + std::to_string(lineno) + ": expected at least 2 columns");
    const std::string where = path + ":" + std::to_string(lineno);
    r.push_back(parse_num(cols[0], where));
    re.push_back(parse_num(cols[1], where));
    im.push_back(cols.size() > 2 ? parse_num(cols[2], where) : 0.0);
    if (r.size() > 1 && !(r.back() > r[r.size() - 2])) fail(ErrorKind::Io, where + ": radii must increase");
  }
  if (r.size() < 2) fail(ErrorKind::Io, path + ": fewer than 2 rows");
  auto profile = [&](double x) -> cplx {
    if (x < r.front() || x > r.back()) return 0.0;
    auto it = std::upper_bound(r.begin(), r.end(), x);
    std::size_t j = it == r.end() ? r.size() - 1 : static_cast<std::size_t>(it - r.begin());
    if (j == 0) j = 1;
    const double t = (x - r[j - 1]) / (r[j] - r[j - 1]);
    return {re[j - 1] + t * (re[j] - re[j - 1]), im[j - 1] + t * (im[j] - im[j - 1])};
  };
  return make_field(grid, profile);
}

void write_field_csv(const FieldState& u, const std::string& path) {
  auto out = open_out(path);
  out << "r,re,im\n";
  for (std::size_t i = 0; i < u.values.size(); ++i)
    out << fmt(u.grid.r(i)) << "," << fmt(u.values[i].real()) << "," << fmt(u.values[i].imag()) << "\n";
}

FieldState build_initial_data(const ExperimentConfig& cfg, const GroundState& gs) {
  const auto& grid = cfg.solver.grid;
  switch (cfg.initial.kind) {
    case InitialKind::ScaledGroundState: {
      if (!(gs.grid == grid)) fail(ErrorKind::Config, "ground state grid differs from the solver grid");
      FieldState u = cfg.initial.discrete_q ? discrete_ground_state(gs) : FieldState{grid, {}, 0.0};
      if (!cfg.initial.discrete_q) {
        u.values.assign(gs.q_values.begin(), gs.q_values.end());
        u.values.back() = 0.0;
      }
      for (auto& v : u.values) v *= cfg.initial.beta;
      return u;
    }
    case InitialKind::Gaussian:
      return gaussian_field(grid, cfg.initial.amplitude, cfg.initial.width);
    case InitialKind::FromFile:
      return load_field_csv(cfg.initial.path, grid);
  }
  fail(ErrorKind::Config, "unknown initial data kind");
}

// ---------------------------------------------------------------- trajectories

void write_trajectory(const Trajectory& traj, const std::string& dir,
                      const std::vector<std::pair<double, MorawetzSeries>>& morawetz) {
  ensure_dir(dir);
  // Morawetz samples sit at snapshot times, which are exact series times.
  std::vector<std::map<double, const MorawetzSample*>> lookup(morawetz.size());
  for (std::size_t k = 0; k < morawetz.size(); ++k)
    for (const auto& s : morawetz[k].second.samples) lookup[k][s.t] = &s;

  std::vector<std::string> header = {"t", "mass", "energy", "grad_norm", "lp_norm", "scat_quantity",
                                     "potential_fraction"};
  for (const auto& [R, series] : morawetz) {
    const std::string p = "morawetz_R" + fmt(R) + "_";
    for (const char* c : {"action", "dmdt", "residual", "slack"}) header.push_back(p + c);
  }
  auto csv = open_out(join(dir, "trajectory.csv"));
  auto dat = open_out(join(dir, "trajectory.dat"));
  dat << "#";
  for (std::size_t i = 0; i < header.size(); ++i) {
    csv << (i ? "," : "") << header[i];
    dat << " " << header[i];
  }
  csv << "\n";
  dat << "\n";
  for (const auto& r : traj.series) {
    std::vector<std::string> row = {fmt(r.t),      fmt(r.mass),          fmt(r.energy),
                                    fmt(r.grad_norm), fmt(r.lp_norm),    fmt(r.scat_quantity),
                                    fmt(r.potential_fraction)};
    for (const auto& table : lookup) {
      const auto it = table.find(r.t);
      if (it == table.end()) {
        for (int c = 0; c < 4; ++c) row.emplace_back();
      } else {
        const auto& s = *it->second;
        row.push_back(fmt(s.action));
        row.push_back(fmt(s.dmdt));
        row.push_back(fmt(s.residual));
        row.push_back(fmt(s.slack));
      }
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      csv << (i ? "," : "") << row[i];
      dat << (i ? " " : "") << (row[i].empty() ? "nan" : row[i]);
    }
    csv << "\n";
    dat << "\n";
  }

  const std::string sdir = join(dir, "snapshots");
  ensure_dir(sdir);
  auto index = open_out(join(sdir, "index.csv"));
  index << "index,t,file\n";
  for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snap_%05zu.csv", k);
    write_field_csv(traj.snapshots[k], join(sdir, name));
    index << k << "," << fmt(traj.snapshots[k].time) << "," << name << "\n";
  }
}

Trajectory load_trajectory(const std::string& dir, const RadialGrid& grid) {
  const std::string sdir = join(dir, "snapshots");
  std::ifstream index(join(sdir, "index.csv"));
  if (!index) fail(ErrorKind::Io, "no snapshot index under '" + sdir + "'");
  Trajectory traj;
  std::string line;
  std::getline(index, line);
  while (std::getline(index, line)) {
    if (line.empty()) continue;
    auto cols = split_csv(line);
    if (cols.size() != 3) fail(ErrorKind::Io, "malformed snapshot index line '" + line + "'");
    const std::string path = join(sdir, cols[2]);
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Io, "missing snapshot '" + path + "'");
    FieldState u{grid, {}, parse_num(cols[1], path)};
    std::string row;
    std::getline(in, row);
    while (std::getline(in, row)) {
      auto v = split_csv(row);
      if (v.size() != 3) fail(ErrorKind::Io, path + ": expected r,re,im");
      u.values.emplace_back(parse_num(v[1], path), parse_num(v[2], path));
    }
    if (u.values.size() != grid.size())
      fail(ErrorKind::Config, path + ": snapshot has " + std::to_string(u.values.size()) +
                                  " nodes but the configured grid has " + std::to_string(grid.size()));
    traj.snapshots.push_back(std::move(u));
  }
  if (traj.snapshots.empty()) fail(ErrorKind::Io, "snapshot index under '" + sdir + "' is empty");
  return traj;
}

// ---------------------------------------------------------------- diagnostics

namespace {

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t want) {
  std::vector<std::size_t> idx;
  if (want == 0 || want >= n) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
  } else if (want == 1) {
    idx.push_back(n - 1);
  } else {
    for (std::size_t j = 0; j < want; ++j)
      idx.push_back(static_cast<std::size_t>(std::llround(static_cast<double>(j) * (n - 1) / (want - 1))));
  }
  return idx;
}

DiagnosticRow morawetz_row(const ExperimentConfig& cfg, const Trajectory& traj,
                           std::vector<std::pair<double, MorawetzSeries>>* out) {
  DiagnosticRow row{"morawetz", true, 0.0, 1e-2, ""};
  std::ostringstream d;
  for (double R : cfg.diagnostics.radii) {
    const auto p = build_cutoffs(cfg.diagnostics.eta, R, cfg.alpha, cfg.diagnostics.cutoff_resolution);
    auto series = morawetz_identity_residual(traj, p, cfg.potential, cfg.sign, cfg.alpha);
    row.value = std::max(row.value, series.max_residual);
    d << "R=" << fmt(R) << ": max residual " << fmt(series.max_residual) << ", min slack " << fmt(series.min_slack)
      << "; ";
    if (out) out->emplace_back(R, std::move(series));
  }
  row.passed = row.value <= row.tolerance;
  row.detail = d.str();
  return row;
}

DiagnosticRow interaction_row(const ExperimentConfig& cfg, const Trajectory& traj) {
  DiagnosticRow row{"interaction", true, 0.0, 1e-8, ""};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::ostringstream d;
  double worst_bound = 0.0;
  for (double R : cfg.diagnostics.radii) {
    const auto p = build_cutoffs(cfg.diagnostics.eta, R, cfg.alpha, cfg.diagnostics.cutoff_resolution);
    for (std::size_t k : sample_indices(traj.snapshots.size(), 3)) {
      const auto& u = traj.snapshots[k];
      const double m = interaction_action(u, p);
      const double bound = 4.0 * R * std::pow(mass(u), 1.5) * std::sqrt(gradient_sq(u));
      const double ratio = bound > 0.0 ? std::abs(m) / bound : 0.0;
      worst_bound = std::max(worst_bound, ratio);
      if (ratio > 1.0) row.passed = false;
    }
    const auto& u = traj.snapshots.back();
    const double z = 0.5 * R;
    const double base = interaction_integrand(u, p, z, {0.0, 0.0, 0.0}).value();
    for (int j = 0; j < 10; ++j) {
      const std::array<double, 3> xi{dist(rng), dist(rng), dist(rng)};
      const double v = interaction_integrand(u, p, z, xi).value();
      const double rel = base != 0.0 ? std::abs(v - base) / std::abs(base) : std::abs(v);
      row.value = std::max(row.value, rel);
    }
  }
  if (row.value > row.tolerance) row.passed = false;
  d << "max xi-shift deviation " << fmt(row.value) << "; max |M|/(4R M^{3/2} ||grad u||) " << fmt(worst_bound);
  row.detail = d.str();
  return row;
}

DiagnosticRow coercivity_row(const ExperimentConfig& cfg, const Trajectory& traj, const GroundState& gs) {
  DiagnosticRow row{"coercivity", true, INFINITY, 1e-8, ""};
  const auto sc = sharp_constants(gs);
  const auto idx = sample_indices(traj.snapshots.size(), cfg.diagnostics.coercivity_samples);
  double rho = cfg.diagnostics.rho;
  if (rho == 0.0) {
    rho = 1.0;
    for (std::size_t k : idx) rho = std::min(rho, 1.0 - scattering_quantity(traj.snapshots[k], cfg.alpha) / sc.threshold_scat);
  }
  if (!(rho > 0.0)) {
    row.passed = false;
    row.value = rho;
    row.detail = "scattering quantity not below the ground-state level (rho = " + fmt(rho) + ")";
    return row;
  }
  double worst_momentum = 0.0;
  std::size_t checks = 0;
  for (double R : cfg.diagnostics.radii) {
    const auto p = build_cutoffs(cfg.diagnostics.eta, R, cfg.alpha, cfg.diagnostics.cutoff_resolution);
    for (std::size_t k : idx) {
      const auto& u = traj.snapshots[k];
      const double scale = std::sqrt(mass(u) * gradient_sq(u));
      for (double z : {0.0, 0.5 * R}) {
        const auto c = coercivity_check(u, p, z, gs, rho);
        ++checks;
        row.value = std::min(row.value, c.lhs - c.rhs);
        if (!c.holds) row.passed = false;
        if (scale > 0.0) worst_momentum = std::max(worst_momentum, std::abs(localized_momentum(u, p, z, c.xi)) / scale);
      }
    }
  }
  if (worst_momentum > 1e-10) row.passed = false;
  row.tolerance = -1e-8;
  row.detail = "rho " + fmt(rho) + ", nu " + fmt(coercivity_nu(rho, cfg.alpha)) + ", " + std::to_string(checks) +
               " checks, min(lhs - rhs) " + fmt(row.value) + ", max localized momentum " + fmt(worst_momentum);
  return row;
}

DiagnosticRow decay_row(const ExperimentConfig& cfg, const FieldState& u0, DecayFit* fit_out) {
  DiagnosticRow row{"decay_test", false, 0.0, cfg.potential.is_zero() ? 0.1 : 0.15, ""};
  auto fit = linear_decay_exponent(u0, cfg.potential, cfg.diagnostics.decay_t1, cfg.diagnostics.decay_t2, cfg.solver);
  row.value = fit.exponent;
  row.passed = std::abs(fit.exponent + 1.5) <= row.tolerance;
  row.detail = "fitted exponent " + fmt(fit.exponent) + " (target -1.5), rms log residual " + fmt(fit.fit_residual);
  if (fit_out) *fit_out = std::move(fit);
  return row;
}

template <class F>
DiagnosticRow guarded(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return {name, false, NAN, NAN, std::string("error: ") + e.what()};
  }
}

}  // namespace

std::vector<DiagnosticRow> run_diagnostics(const ExperimentConfig& cfg, const Trajectory& traj, const GroundState& gs,
                                           std::vector<std::pair<double, MorawetzSeries>>* morawetz_out) {
  std::vector<DiagnosticRow> rows;
  const auto& dg = cfg.diagnostics;
  if (dg.morawetz) rows.push_back(guarded("morawetz", [&] { return morawetz_row(cfg, traj, morawetz_out); }));
  if (dg.interaction) rows.push_back(guarded("interaction", [&] { return interaction_row(cfg, traj); }));
  if (dg.coercivity) rows.push_back(guarded("coercivity", [&] { return coercivity_row(cfg, traj, gs); }));
  if (dg.decay_test)
    rows.push_back(guarded("decay_test", [&] { return decay_row(cfg, traj.snapshots.front(), nullptr); }));
  return rows;
}

// ---------------------------------------------------------------- runs

namespace {

using Clock = std::chrono::steady_clock;

void finish_exit_code(RunSummary& s) {
  if (s.exit_code != 0) return;
  bool bad = !s.errors.empty() || (s.evolved && s.outcome == Outcome::ToleranceViolated);
  for (const auto& r : s.diagnostics) bad = bad || !r.passed;
  s.exit_code = bad ? static_cast<int>(ExitCode::RuntimeFailure) : 0;
}

void write_cutoff_tables(const ExperimentConfig& cfg, const std::string& dir) {
  const auto& dg = cfg.diagnostics;
  if (!(dg.morawetz || dg.interaction || dg.coercivity)) return;
  for (double R : dg.radii)
    build_cutoffs(dg.eta, R, cfg.alpha, dg.cutoff_resolution).write_csv(join(dir, "cutoffs_R" + fmt(R) + ".csv"));
}

void write_timing(const RunSummary& s, const std::string& dir) {
  json j;
  j["schema_version"] = 1;
  j["wall_seconds"] = s.wall_seconds;
  auto out = open_out(join(dir, "timing.json"));
  out << j.dump(2) << "\n";
}

// Validation, evolution, diagnostics and artifacts for a prepared u0.
void execute(RunSummary& s, const GroundState& gs, const FieldState& u0) {
  const auto& cfg = s.config;
  s.constants = sharp_constants(gs);
  s.threshold = classify_initial_data(u0, gs, cfg.potential, 1e-6, cfg.sign);
  const Trajectory traj = evolve(u0, cfg.solver, cfg.potential);
  s.evolved = true;
  s.outcome = traj.outcome;
  s.outcome_message = traj.message;
  s.dt_used = traj.dt_used;
  s.refinements = traj.refinements;
  s.steps = traj.series.empty() ? 0 : traj.series.size() - 1;
  s.snapshots = traj.snapshots.size();
  s.snapshot_stride = traj.snapshot_stride;
  s.mass_drift = traj.max_mass_drift;
  s.energy_drift = traj.max_energy_drift;
  s.proxy = scattering_proxy(traj);
  std::vector<std::pair<double, MorawetzSeries>> mseries;
  s.diagnostics = run_diagnostics(cfg, traj, gs, &mseries);
  ensure_dir(cfg.output_dir);
  write_trajectory(traj, cfg.output_dir, mseries);
  write_cutoff_tables(cfg, cfg.output_dir);
}

RunSummary start_summary(const ExperimentConfig& cfg) {
  RunSummary s;
  s.config = cfg;
  s.theorem = theorem_for(cfg);
  return s;
}

bool validate_into(RunSummary& s) {
  s.assumptions = validate_assumptions(s.config.potential, s.theorem);
  if (!s.assumptions.passed) {
    s.exit_code = static_cast<int>(ExitCode::ValidationFailure);
    s.errors.push_back("potential fails the hypotheses of the selected result");
    return false;
  }
  return true;
}

void persist(RunSummary& s, Clock::time_point t0) {
  s.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  finish_exit_code(s);
  try {
    ensure_dir(s.config.output_dir);
    auto cfg_out = open_out(join(s.config.output_dir, "config.cfg"));
    cfg_out << serialize_config(s.config);
    write_summary(s, s.config.output_dir);
    write_timing(s, s.config.output_dir);
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    if (s.exit_code == 0) s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
}

}  // namespace

RunSummary run_single(const ExperimentConfig& cfg, const GroundState* gs_in) {
  const auto t0 = Clock::now();
  RunSummary s = start_summary(cfg);
  try {
    if (validate_into(s)) {
      const GroundState gs = gs_in ? *gs_in : ground_state_for(cfg);
      execute(s, gs, build_initial_data(cfg, gs));
    }
  } catch (const Error& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(e.kind() == ErrorKind::Validation ? ExitCode::ValidationFailure
                                                                       : ExitCode::RuntimeFailure);
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  persist(s, t0);
  return s;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  check_config(cfg);
  if (cfg.initial.kind == InitialKind::FromFile)
    fail(ErrorKind::Config, "sweeps need scaled_ground_state or gaussian initial data");
  const auto betas = sweep_betas(cfg.sweep);
  SweepResult result;
  result.rows.resize(betas.size());
  ensure_dir(cfg.output_dir);

  std::optional<GroundState> gs;
  try {
    gs = ground_state_for(cfg);
  } catch (const std::exception&) {
    // Each run records the failure itself.
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < betas.size(); i = next++) {
      ExperimentConfig run = cfg;
      run.mode = RunMode::Single;
      run.sweep.enabled = false;
      run.name = cfg.name + "_beta_" + fmt(betas[i]);
      run.output_dir = join(cfg.output_dir, "beta_" + fmt(betas[i]));
      if (run.initial.kind == InitialKind::ScaledGroundState)
        run.initial.beta = betas[i];
      else
        run.initial.amplitude = cfg.initial.amplitude * betas[i];
      const RunSummary s = run_single(run, gs ? &*gs : nullptr);
      SweepRow& row = result.rows[i];
      row.beta = betas[i];
      row.exit_code = s.exit_code;
      if (s.threshold) {
        row.energy_margin = s.threshold->energy_margin;
        row.grad_margin = s.threshold->grad_margin;
        row.verdict = verdict_name(s.threshold->verdict);
      } else {
        row.energy_margin = row.grad_margin = NAN;
        row.verdict = "none";
      }
      row.outcome = s.evolved ? outcome_name(s.outcome) : "error";
      row.proxy = s.evolved ? proxy_name(s.proxy.verdict_hint) : proxy_name(ProxyHint::Undetermined);
    }
  };
  const std::size_t nw = std::min<std::size_t>(cfg.sweep.workers, std::max<std::size_t>(betas.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < nw; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto csv = open_out(join(cfg.output_dir, "dichotomy.csv"));
  auto dat = open_out(join(cfg.output_dir, "dichotomy.dat"));
  csv << kDichotomyHeader << "\n";
  dat << "# beta energy_margin grad_margin verdict outcome proxy\n";
  for (const auto& r : result.rows) {
    csv << fmt(r.beta) << "," << fmt(r.energy_margin) << "," << fmt(r.grad_margin) << "," << r.verdict << ","
        << r.outcome << "," << r.proxy << "\n";
    dat << fmt(r.beta) << " " << fmt(r.energy_margin) << " " << fmt(r.grad_margin) << " " << r.verdict << " "
        << r.outcome << " " << r.proxy << "\n";
    // Blow-up or a below-threshold verdict are results; only crashed runs fail the sweep.
    if (r.outcome == "error") result.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  return result;
}

double threshold_amplitude(const GroundState& gs, const PotentialSpec& spec) {
  const double target = sharp_constants(gs).threshold_energy;
  const double sc = gs.sigma_c;
  FieldState q{gs.grid, {gs.q_values.begin(), gs.q_values.end()}, 0.0};
  q.values.back() = 0.0;
  const double m = mass(q);
  const double g = gradient_sq(q);
  const double lp = lp_integral(q, gs.alpha + 2.0);
  const double pv = potential_energy(q, spec);
  // E(bQ) M(bQ)^{sigma_c} - target, explicit in b.
  auto f = [&](double b) {
    const double e = 0.5 * b * b * (g + pv) - std::pow(b, gs.alpha + 2.0) * lp / (gs.alpha + 2.0);
    return e * std::pow(b * b * m, sc) - target;
  };
  if (spec.is_zero()) return 1.0;
  if (!(f(1.0) > 0.0))
    fail(ErrorKind::Solver, "threshold amplitude: E(Q) M(Q)^{sigma_c} is not above the threshold for this potential");
  double hi = 1.0, lo = 1.0;
  for (;;) {
    lo = hi - 0.005;
    if (lo <= 1e-3) fail(ErrorKind::Solver, "threshold amplitude: potential term too large, no root with b < 1");
    if (f(lo) < 0.0) break;
    hi = lo;
  }
  boost::uintmax_t iters = 200;
  auto tol = [](double a, double b) { return std::abs(a - b) <= 4e-16 * std::max(std::abs(a), std::abs(b)); };
  const auto br = boost::math::tools::toms748_solve(f, lo, hi, tol, iters);
  return 0.5 * (br.first + br.second);
}

RunSummary run_threshold_case(const ExperimentConfig& cfg_in) {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = cfg_in;
  cfg.mode = RunMode::ThresholdCase;
  RunSummary s = start_summary(cfg);
  try {
    if (cfg.initial.kind != InitialKind::ScaledGroundState)
      fail(ErrorKind::Config, "the threshold case builds its data from Q (initial_data kind = scaled_ground_state)");
    if (validate_into(s)) {
      const GroundState gs = ground_state_for(cfg);
      s.amplitude_factor = threshold_amplitude(gs, cfg.potential);
      ExperimentConfig scaled = cfg;
      scaled.initial.beta = cfg.initial.beta * s.amplitude_factor;
      const FieldState u0 = build_initial_data(scaled, gs);
      execute(s, gs, u0);
      const auto& th = *s.threshold;
      const std::string dyn = proxy_name(s.proxy.verdict_hint);
      if (th.verdict == Verdict::AtThreshold)
        s.branch_note = "at threshold; dynamics resemble " + dyn;
      else if (th.verdict == Verdict::BelowThreshold)
        s.branch_note = "below-threshold fallback; dynamics resemble " + dyn;
      else if (std::abs(th.energy_margin) <= 1e-6 && std::abs(th.grad_margin) <= 1e-6)
        s.branch_note = "standing-wave case (gradient product equals the threshold); dynamics resemble " + dyn;
      else
        s.branch_note = "data not at threshold (" + verdict_name(th.verdict) + "); dynamics resemble " + dyn;
    }
  } catch (const Error& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  persist(s, t0);
  return s;
}

RunSummary run_decay_test(const ExperimentConfig& cfg_in) {
  const auto t0 = Clock::now();
  ExperimentConfig cfg = cfg_in;
  cfg.diagnostics.decay_test = true;
  RunSummary s = start_summary(cfg);
  try {
    s.assumptions = validate_assumptions(cfg.potential, Theorem::ScatteringCriterionDefocusing);
    const auto& a = s.assumptions;
    if (!(a.family_range_ok && a.in_kato_class && a.in_L_3_2 && a.smallness_4pi_satisfied)) {
      s.exit_code = static_cast<int>(ExitCode::ValidationFailure);
      s.errors.push_back("dispersive estimate needs V in K and L^{3/2} with ||V_-||_K < 4 pi");
    } else {
      std::optional<GroundState> gs;
      if (cfg.initial.kind == InitialKind::ScaledGroundState) gs = ground_state_for(cfg);
      const FieldState u0 = build_initial_data(cfg, gs ? *gs : GroundState{});
      DecayFit fit;
      s.diagnostics.push_back(guarded("decay_test", [&] { return decay_row(cfg, u0, &fit); }));
      ensure_dir(cfg.output_dir);
      auto csv = open_out(join(cfg.output_dir, "decay.csv"));
      auto dat = open_out(join(cfg.output_dir, "decay.dat"));
      csv << "t,sup_norm\n";
      dat << "# t sup_norm\n";
      for (std::size_t i = 0; i < fit.times.size(); ++i) {
        csv << fmt(fit.times[i]) << "," << fmt(fit.sup_norms[i]) << "\n";
        dat << fmt(fit.times[i]) << " " << fmt(fit.sup_norms[i]) << "\n";
      }
    }
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  persist(s, t0);
  return s;
}

RunSummary run_diagnose(const ExperimentConfig& cfg, const std::string& trajectory_dir) {
  const auto t0 = Clock::now();
  RunSummary s = start_summary(cfg);
  try {
    s.assumptions = validate_assumptions(cfg.potential, s.theorem);
    const Trajectory traj = load_trajectory(trajectory_dir, cfg.solver.grid);
    s.snapshots = traj.snapshots.size();
    std::optional<GroundState> gs;
    if (cfg.diagnostics.coercivity) {
      gs = ground_state_for(cfg);
      s.constants = sharp_constants(*gs);
    }
    std::vector<std::pair<double, MorawetzSeries>> mseries;
    s.diagnostics = run_diagnostics(cfg, traj, gs ? *gs : GroundState{}, &mseries);
    if (s.diagnostics.empty()) s.errors.push_back("no diagnostics enabled in the [diagnostics] section");
    ensure_dir(cfg.output_dir);
    for (const auto& [R, series] : mseries) {
      auto out = open_out(join(cfg.output_dir, "morawetz_R" + fmt(R) + ".csv"));
      out << "t,action,dmdt,nonlinear,laplacian,kinetic,angular,potential,residual,inequality_lhs,inequality_rhs,slack\n";
      for (const auto& m : series.samples)
        out << fmt(m.t) << "," << fmt(m.action) << "," << fmt(m.dmdt) << "," << fmt(m.terms.nonlinear) << ","
            << fmt(m.terms.laplacian) << "," << fmt(m.terms.kinetic) << "," << fmt(m.terms.angular) << ","
            << fmt(m.terms.potential) << "," << fmt(m.residual) << "," << fmt(m.inequality_lhs) << ","
            << fmt(m.inequality_rhs) << "," << fmt(m.slack) << "\n";
    }
    write_cutoff_tables(cfg, cfg.output_dir);
  } catch (const Error& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(e.kind() == ErrorKind::Config ? ExitCode::ValidationFailure
                                                                   : ExitCode::RuntimeFailure);
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  s.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  finish_exit_code(s);
  try {
    ensure_dir(cfg.output_dir);
    auto out = open_out(join(cfg.output_dir, "diagnostics.json"));
    out << summary_json(s) << "\n";
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    if (s.exit_code == 0) s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  return s;
}

RunSummary run_validation(const ExperimentConfig& cfg, std::optional<Theorem> theorem) {
  RunSummary s = start_summary(cfg);
  if (theorem) s.theorem = *theorem;
  try {
    validate_into(s);
    ensure_dir(cfg.output_dir);
    auto out = open_out(join(cfg.output_dir, "assumptions.json"));
    out << assumption_json(s.assumptions) << "\n";
  } catch (const std::exception& e) {
    s.errors.push_back(e.what());
    if (s.exit_code == 0) s.exit_code = static_cast<int>(ExitCode::RuntimeFailure);
  }
  return s;
}

int run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.mode) {
    case RunMode::Sweep: return run_sweep(cfg).exit_code;
    case RunMode::ThresholdCase: return run_threshold_case(cfg).exit_code;
    case RunMode::Single:
      if (cfg.sweep.enabled) return run_sweep(cfg).exit_code;
      return run_single(cfg).exit_code;
  }
  return static_cast<int>(ExitCode::RuntimeFailure);
}

// ---------------------------------------------------------------- JSON

namespace {

json assumption_obj(const AssumptionReport& r) {
  json j;
  j["theorem"] = theorem_name(r.theorem);
  j["family_range_ok"] = r.family_range_ok;
  j["in_kato_class"] = r.in_kato_class;
  j["in_L_3_2"] = r.in_L_3_2;
  j["kato_norm_of_negative_part"] = num(r.kato_norm_of_negative_part);
  j["smallness_4pi_satisfied"] = r.smallness_4pi_satisfied;
  j["nonnegative"] = r.nonnegative;
  j["radially_symmetric"] = r.radially_symmetric;
  j["radial_derivative_nonpositive"] = r.radial_derivative_nonpositive;
  json range = json::array();
  for (const auto& [q, in] : r.radial_derivative_Lq_range)
    range.push_back({{"q", std::isinf(q) ? json("inf") : json(q)}, {"member", in}});
  j["radial_derivative_Lq_range"] = range;
  j["radial_derivative_Lq_relaxed"] = r.radial_derivative_Lq_relaxed;
  j["passed"] = r.passed;
  j["messages"] = r.messages;
  return j;
}

json threshold_obj(const ThresholdReport& t) {
  json j;
  j["energy"] = num(t.energy);
  j["mass"] = num(t.mass);
  j["energy_product"] = num(t.energy_product);
  j["grad_product"] = num(t.grad_product);
  j["scat_quantity"] = num(t.scat_quantity);
  j["threshold_energy"] = num(t.threshold_energy);
  j["threshold_grad"] = num(t.threshold_grad);
  j["threshold_scat"] = num(t.threshold_scat);
  j["energy_margin"] = num(t.energy_margin);
  j["grad_margin"] = num(t.grad_margin);
  j["scat_margin"] = num(t.scat_margin);
  j["verdict"] = verdict_name(t.verdict);
  j["note"] = t.note;
  return j;
}

json constants_obj(const GroundState& gs) {
  const auto sc = sharp_constants(gs);
  const auto pr = pohozaev_residuals(gs);
  json j;
  j["alpha"] = gs.alpha;
  j["sigma_c"] = gs.sigma_c;
  j["gamma_c"] = gs.gamma_c;
  j["q0"] = gs.q0;
  j["mass"] = gs.mass;
  j["grad_sq"] = gs.grad_sq;
  j["lp_norm"] = gs.lp_norm;
  j["c_opt"] = sc.c_opt;
  j["e0_q"] = sc.e0_q;
  j["threshold_energy"] = sc.threshold_energy;
  j["threshold_grad"] = sc.threshold_grad;
  j["threshold_scat"] = sc.threshold_scat;
  j["pohozaev_residual_1"] = pr.res1;
  j["pohozaev_residual_2"] = pr.res2;
  j["matching_radius"] = gs.matching_radius;
  j["r_max"] = gs.grid.r_max();
  j["n"] = gs.grid.n_points();
  return j;
}

}  // namespace

std::string assumption_json(const AssumptionReport& r) { return assumption_obj(r).dump(2); }

std::string constants_json(const GroundState& gs) {
  json j;
  j["schema_version"] = 1;
  j["constants"] = constants_obj(gs);
  return j.dump(2);
}

std::string summary_json(const RunSummary& s) {
  json j;
  j["schema_version"] = 1;
  j["name"] = s.config.name;
  j["mode"] = run_mode_name(s.config.mode);
  j["config"] = serialize_config(s.config);
  j["theorem"] = theorem_name(s.theorem);
  j["assumptions"] = assumption_obj(s.assumptions);
  if (s.evolved || s.threshold) {
    json c;
    c["c_opt"] = num(s.constants.c_opt);
    c["e0_q"] = num(s.constants.e0_q);
    c["threshold_energy"] = num(s.constants.threshold_energy);
    c["threshold_grad"] = num(s.constants.threshold_grad);
    c["threshold_scat"] = num(s.constants.threshold_scat);
    j["ground_state"] = c;
  } else {
    j["ground_state"] = nullptr;
  }
  j["threshold"] = s.threshold ? threshold_obj(*s.threshold) : json(nullptr);
  if (s.evolved) {
    json t;
    t["outcome"] = outcome_name(s.outcome);
    t["message"] = s.outcome_message;
    t["dt_used"] = num(s.dt_used);
    t["refinements"] = s.refinements;
    t["steps"] = s.steps;
    t["snapshots"] = s.snapshots;
    t["snapshot_stride"] = s.snapshot_stride;
    t["max_mass_drift"] = num(s.mass_drift);
    t["max_energy_drift"] = num(s.energy_drift);
    j["trajectory"] = t;
    json p;
    p["decay_factor_lp"] = num(s.proxy.decay_factor_lp);
    p["final_potential_fraction"] = num(s.proxy.final_potential_fraction);
    p["verdict_hint"] = proxy_name(s.proxy.verdict_hint);
    j["proxy"] = p;
  } else {
    j["trajectory"] = nullptr;
    j["proxy"] = nullptr;
  }
  json rows = json::array();
  for (const auto& r : s.diagnostics)
    rows.push_back({{"name", r.name},
                    {"passed", r.passed},
                    {"value", num(r.value)},
                    {"tolerance", num(r.tolerance)},
                    {"detail", r.detail}});
  j["diagnostics"] = rows;
  if (s.config.mode == RunMode::ThresholdCase) {
    j["threshold_case"] = {{"amplitude_factor", num(s.amplitude_factor)}, {"branch", s.branch_note}};
  }
  j["errors"] = s.errors;
  j["exit_code"] = s.exit_code;
  return j.dump(2);
}

void write_summary(const RunSummary& s, const std::string& dir) {
  ensure_dir(dir);
  auto out = open_out(join(dir, "summary.json"));
  out << summary_json(s) << "\n";
}

void write_ground_state_artifacts(const GroundState& gs, const std::string& dir) {
  ensure_dir(dir);
  write_ground_state_csv(gs, join(dir, "Q.csv"));
  auto out = open_out(join(dir, "constants.json"));
  out << constants_json(gs) << "\n";
}

}  // namespace nlsv
