#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace nlsv {

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::ScaledGroundState: return "scaled_ground_state";
    case InitialKind::Gaussian: return "gaussian";
    case InitialKind::FromFile: return "file";
  }
  return "?";
}

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "scaled_ground_state") return InitialKind::ScaledGroundState;
  if (name == "gaussian") return InitialKind::Gaussian;
  if (name == "file") return InitialKind::FromFile;
  fail(ErrorKind::Config, "unknown initial_data kind '" + name + "'");
}

std::string run_mode_name(RunMode m) {
  switch (m) {
    case RunMode::Single: return "single";
    case RunMode::Sweep: return "sweep";
    case RunMode::ThresholdCase: return "threshold_case";
  }
  return "?";
}

RunMode parse_run_mode(const std::string& name) {
  if (name == "single") return RunMode::Single;
  if (name == "sweep") return RunMode::Sweep;
  if (name == "threshold_case") return RunMode::ThresholdCase;
  fail(ErrorKind::Config, "unknown run mode '" + name + "'");
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  if (v == "inf") return INFINITY;
  if (v == "-inf") return -INFINITY;
  double x = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    fail(ErrorKind::Config, "key '" + key + "': expected a number, got '" + v + "'");
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), x);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size())
    fail(ErrorKind::Config, "key '" + key + "': expected a nonnegative integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(ErrorKind::Config, "key '" + key + "': expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) fail(ErrorKind::Config, "key '" + key + "': empty list");
  return out;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

struct Fields {
  std::size_t n = 2048;
  double r_max = 20.0;
};

using Setter = std::function<void(ExperimentConfig&, Fields&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"run.name", [](auto& c, auto&, auto&, auto& v) { c.name = v; }},
      {"run.mode", [](auto& c, auto&, auto&, auto& v) { c.mode = parse_run_mode(v); }},
      {"run.alpha", [](auto& c, auto&, auto& k, auto& v) { c.alpha = to_double(k, v); }},
      {"run.sign", [](auto& c, auto&, auto&, auto& v) { c.sign = parse_sign(v); }},
      {"run.seed", [](auto& c, auto&, auto& k, auto& v) { c.seed = to_uint(k, v); }},
      {"run.output_dir", [](auto& c, auto&, auto&, auto& v) { c.output_dir = v; }},
      {"run.gs_tol", [](auto& c, auto&, auto& k, auto& v) { c.gs_tol = to_double(k, v); }},
      {"run.gs_cache_dir", [](auto& c, auto&, auto&, auto& v) { c.gs_cache_dir = v; }},
      {"potential.family", [](auto& c, auto&, auto&, auto& v) { c.potential.family = parse_family(v); }},
      {"potential.c", [](auto& c, auto&, auto& k, auto& v) { c.potential.c = to_double(k, v); }},
      {"potential.sigma", [](auto& c, auto&, auto& k, auto& v) { c.potential.sigma = to_double(k, v); }},
      {"potential.a", [](auto& c, auto&, auto& k, auto& v) { c.potential.a = to_double(k, v); }},
      {"potential.radial", [](auto& c, auto&, auto& k, auto& v) { c.potential.radial = to_bool(k, v); }},
      {"initial_data.kind", [](auto& c, auto&, auto&, auto& v) { c.initial.kind = parse_initial_kind(v); }},
      {"initial_data.beta", [](auto& c, auto&, auto& k, auto& v) { c.initial.beta = to_double(k, v); }},
      {"initial_data.discrete_q", [](auto& c, auto&, auto& k, auto& v) { c.initial.discrete_q = to_bool(k, v); }},
      {"initial_data.amplitude", [](auto& c, auto&, auto& k, auto& v) { c.initial.amplitude = to_double(k, v); }},
      {"initial_data.width", [](auto& c, auto&, auto& k, auto& v) { c.initial.width = to_double(k, v); }},
      {"initial_data.path", [](auto& c, auto&, auto&, auto& v) { c.initial.path = v; }},
      {"solver.r_max", [](auto&, auto& f, auto& k, auto& v) { f.r_max = to_double(k, v); }},
      {"solver.n", [](auto&, auto& f, auto& k, auto& v) { f.n = to_uint(k, v); }},
      {"solver.dt", [](auto& c, auto&, auto& k, auto& v) { c.solver.dt = to_double(k, v); }},
      {"solver.t_end", [](auto& c, auto&, auto& k, auto& v) { c.solver.t_end = to_double(k, v); }},
      {"solver.scheme", [](auto& c, auto&, auto&, auto& v) { c.solver.scheme = parse_scheme(v); }},
      {"solver.snapshot_stride",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.snapshot_stride = to_uint(k, v); }},
      {"solver.nonlinear", [](auto& c, auto&, auto& k, auto& v) { c.solver.nonlinear = to_bool(k, v); }},
      {"solver.blowup_grad_factor",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.blowup_grad_factor = to_double(k, v); }},
      {"solver.mass_drift_tol", [](auto& c, auto&, auto& k, auto& v) { c.solver.mass_drift_tol = to_double(k, v); }},
      {"solver.energy_drift_tol",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.energy_drift_tol = to_double(k, v); }},
      {"solver.boundary_mass_fraction",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.boundary_mass_fraction = to_double(k, v); }},
      {"solver.collapse_peak_factor",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.collapse_peak_factor = to_double(k, v); }},
      {"solver.collapse_cells", [](auto& c, auto&, auto& k, auto& v) { c.solver.collapse_cells = to_double(k, v); }},
      {"solver.refinement_levels",
       [](auto& c, auto&, auto& k, auto& v) { c.solver.refinement_levels = static_cast<int>(to_uint(k, v)); }},
      {"diagnostics.morawetz", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.morawetz = to_bool(k, v); }},
      {"diagnostics.radii", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.radii = to_list(k, v); }},
      {"diagnostics.eta", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.eta = to_double(k, v); }},
      {"diagnostics.cutoff_resolution",
       [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.cutoff_resolution = to_uint(k, v); }},
      {"diagnostics.interaction",
       [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.interaction = to_bool(k, v); }},
      {"diagnostics.coercivity", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.coercivity = to_bool(k, v); }},
      {"diagnostics.rho", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.rho = to_double(k, v); }},
      {"diagnostics.coercivity_samples",
       [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.coercivity_samples = to_uint(k, v); }},
      {"diagnostics.decay_test", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.decay_test = to_bool(k, v); }},
      {"diagnostics.decay_t1", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.decay_t1 = to_double(k, v); }},
      {"diagnostics.decay_t2", [](auto& c, auto&, auto& k, auto& v) { c.diagnostics.decay_t2 = to_double(k, v); }},
      {"sweep.enabled", [](auto& c, auto&, auto& k, auto& v) { c.sweep.enabled = to_bool(k, v); }},
      {"sweep.beta_min", [](auto& c, auto&, auto& k, auto& v) { c.sweep.beta_min = to_double(k, v); }},
      {"sweep.beta_max", [](auto& c, auto&, auto& k, auto& v) { c.sweep.beta_max = to_double(k, v); }},
      {"sweep.beta_step", [](auto& c, auto&, auto& k, auto& v) { c.sweep.beta_step = to_double(k, v); }},
      {"sweep.workers", [](auto& c, auto&, auto& k, auto& v) { c.sweep.workers = to_uint(k, v); }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;
  Fields f;
  std::string section;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::map<std::string, std::size_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorKind::Config, where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"run", "potential", "initial_data", "solver", "diagnostics", "sweep"};
      bool ok = false;
      for (auto* k : known) ok = ok || section == k;
      if (!ok) fail(ErrorKind::Config, where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Config, where + "expected key = value");
    if (section.empty()) fail(ErrorKind::Config, where + "key outside any section");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) fail(ErrorKind::Config, where + "unknown key '" + key + "'");
    if (seen.count(key)) fail(ErrorKind::Config, where + "duplicate key '" + key + "'");
    seen[key] = lineno;
    try {
      it->second(cfg, f, key, value);
    } catch (const Error& e) {
      fail(ErrorKind::Config, where + e.what());
    }
  }
  if (f.n < 8 || !(f.r_max > 0.0)) fail(ErrorKind::Config, "solver grid needs n >= 8 and r_max > 0");
  cfg.solver.grid = RadialGrid(f.r_max, f.n);
  cfg.solver.sign = cfg.sign;
  cfg.solver.alpha = cfg.alpha;
  check_config(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream o;
  auto kv = [&](const char* k, const std::string& v) { o << k << " = " << v << "\n"; };
  auto num = [](double x) { return format_double(x); };
  o << "[run]\n";
  kv("name", c.name);
  kv("mode", run_mode_name(c.mode));
  kv("alpha", num(c.alpha));
  kv("sign", sign_name(c.sign));
  kv("seed", std::to_string(c.seed));
  kv("output_dir", c.output_dir);
  kv("gs_tol", num(c.gs_tol));
  kv("gs_cache_dir", c.gs_cache_dir);
  o << "\n[potential]\n";
  kv("family", family_name(c.potential.family));
  kv("c", num(c.potential.c));
  kv("sigma", num(c.potential.sigma));
  kv("a", num(c.potential.a));
  kv("radial", bool_text(c.potential.radial));
  o << "\n[initial_data]\n";
  kv("kind", initial_kind_name(c.initial.kind));
  kv("beta", num(c.initial.beta));
  kv("discrete_q", bool_text(c.initial.discrete_q));
  kv("amplitude", num(c.initial.amplitude));
  kv("width", num(c.initial.width));
  kv("path", c.initial.path);
  o << "\n[solver]\n";
  kv("r_max", num(c.solver.grid.r_max()));
  kv("n", std::to_string(c.solver.grid.n_points()));
  kv("dt", num(c.solver.dt));
  kv("t_end", num(c.solver.t_end));
  kv("scheme", scheme_name(c.solver.scheme));
  kv("snapshot_stride", std::to_string(c.solver.snapshot_stride));
  kv("nonlinear", bool_text(c.solver.nonlinear));
  kv("blowup_grad_factor", num(c.solver.blowup_grad_factor));
  kv("mass_drift_tol", num(c.solver.mass_drift_tol));
  kv("energy_drift_tol", num(c.solver.energy_drift_tol));
  kv("boundary_mass_fraction", num(c.solver.boundary_mass_fraction));
  kv("collapse_peak_factor", num(c.solver.collapse_peak_factor));
  kv("collapse_cells", num(c.solver.collapse_cells));
  kv("refinement_levels", std::to_string(c.solver.refinement_levels));
  o << "\n[diagnostics]\n";
  kv("morawetz", bool_text(c.diagnostics.morawetz));
  std::string radii;
  for (std::size_t i = 0; i < c.diagnostics.radii.size(); ++i)
    radii += (i ? ", " : "") + num(c.diagnostics.radii[i]);
  kv("radii", radii);
  kv("eta", num(c.diagnostics.eta));
  kv("cutoff_resolution", std::to_string(c.diagnostics.cutoff_resolution));
  kv("interaction", bool_text(c.diagnostics.interaction));
  kv("coercivity", bool_text(c.diagnostics.coercivity));
  kv("rho", num(c.diagnostics.rho));
  kv("coercivity_samples", std::to_string(c.diagnostics.coercivity_samples));
  kv("decay_test", bool_text(c.diagnostics.decay_test));
  kv("decay_t1", num(c.diagnostics.decay_t1));
  kv("decay_t2", num(c.diagnostics.decay_t2));
  o << "\n[sweep]\n";
  kv("enabled", bool_text(c.sweep.enabled));
  kv("beta_min", num(c.sweep.beta_min));
  kv("beta_max", num(c.sweep.beta_max));
  kv("beta_step", num(c.sweep.beta_step));
  kv("workers", std::to_string(c.sweep.workers));
  return o.str();
}

void check_config(const ExperimentConfig& c) {
  if (!(c.alpha > 4.0 / 3.0 && c.alpha < 4.0))
    fail(ErrorKind::Config, "alpha must lie in (4/3, 4), got " + format_double(c.alpha));
  check_solver_config(c.solver);
  if (c.initial.kind == InitialKind::FromFile && c.initial.path.empty())
    fail(ErrorKind::Config, "initial_data kind = file needs a path");
  if (c.initial.kind == InitialKind::Gaussian && !(c.initial.width > 0.0))
    fail(ErrorKind::Config, "gaussian width must be positive");
  const bool sweeping = c.sweep.enabled || c.mode == RunMode::Sweep;
  if (sweeping) {
    if (c.initial.kind == InitialKind::FromFile)
      fail(ErrorKind::Config, "sweeps need scaled_ground_state or gaussian initial data");
    if (!(c.sweep.beta_step > 0.0) || !(c.sweep.beta_max >= c.sweep.beta_min) || !(c.sweep.beta_min >= 0.0))
      fail(ErrorKind::Config, "sweep range needs 0 <= beta_min <= beta_max and beta_step > 0");
    if (c.sweep.workers == 0) fail(ErrorKind::Config, "sweep.workers must be at least 1");
  }
  if (c.diagnostics.morawetz || c.diagnostics.interaction || c.diagnostics.coercivity) {
    if (!(c.diagnostics.eta > 0.0 && c.diagnostics.eta < 1.0)) fail(ErrorKind::Config, "diagnostics.eta must lie in (0, 1)");
    for (double R : c.diagnostics.radii)
      if (!(R > 0.0)) fail(ErrorKind::Config, "diagnostics.radii must be positive");
    if (c.diagnostics.cutoff_resolution < 128) fail(ErrorKind::Config, "diagnostics.cutoff_resolution below 128");
  }
  if (c.diagnostics.coercivity && !(c.diagnostics.rho >= 0.0 && c.diagnostics.rho <= 1.0))
    fail(ErrorKind::Config, "diagnostics.rho must lie in [0, 1] (0 derives it from the run)");
}

std::vector<double> sweep_betas(const SweepConfig& s) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((s.beta_max - s.beta_min) / s.beta_step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double b = s.beta_min + static_cast<double>(i) * s.beta_step;
    out.push_back(std::round(b * 1e12) / 1e12);  // 0.2 + 2 * 0.2 prints as 0.6
  }
  return out;
}

}  // namespace nlsv
