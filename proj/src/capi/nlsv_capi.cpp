#include "nlsv/nlsv.h"

#include <cstring>
#include <new>
#include <string>

#include "cutoffs.hpp"
#include "errors.hpp"
#include "experiments.hpp"

struct nlsv_ground_state {
  nlsv::GroundState gs;
};
struct nlsv_config {
  nlsv::ExperimentConfig cfg;
};
struct nlsv_cutoffs {
  nlsv::CutoffProfile p;
};

namespace {

thread_local std::string g_last_error;

nlsv_status from_kind(nlsv::ErrorKind k) {
  switch (k) {
    case nlsv::ErrorKind::Domain: return NLSV_ERR_DOMAIN;
    case nlsv::ErrorKind::Divergence: return NLSV_ERR_DIVERGENCE;
    case nlsv::ErrorKind::Config: return NLSV_ERR_CONFIG;
    case nlsv::ErrorKind::Solver: return NLSV_ERR_SOLVER;
    case nlsv::ErrorKind::Io: return NLSV_ERR_IO;
    case nlsv::ErrorKind::Validation: return NLSV_ERR_VALIDATION;
  }
  return NLSV_ERR_INTERNAL;
}

template <class F>
nlsv_status guard(F&& f) {
  try {
    return f();
  } catch (const nlsv::Error& e) {
    g_last_error = e.what();
    return from_kind(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NLSV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NLSV_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return NLSV_ERR_INTERNAL;
  }
}

nlsv_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return NLSV_ERR_NULL_ARGUMENT;
}

nlsv::PotentialSpec to_spec(const nlsv_potential* v) {
  switch (v->family) {
    case NLSV_FAMILY_ZERO: return nlsv::PotentialSpec::zero();
    case NLSV_FAMILY_YUKAWA: return nlsv::PotentialSpec::yukawa(v->c, v->sigma, v->a);
    case NLSV_FAMILY_INVERSE_POWER: return nlsv::PotentialSpec::inverse_power(v->c, v->sigma);
    default: nlsv::fail(nlsv::ErrorKind::Config, "unknown potential family " + std::to_string(v->family));
  }
}

nlsv::Theorem to_theorem(int t) {
  switch (t) {
    case NLSV_THEOREM_SCATTERING_FOCUSING: return nlsv::Theorem::ScatteringCriterionFocusing;
    case NLSV_THEOREM_SCATTERING_DEFOCUSING: return nlsv::Theorem::ScatteringCriterionDefocusing;
    case NLSV_THEOREM_BELOW_THRESHOLD: return nlsv::Theorem::BelowThreshold;
    case NLSV_THEOREM_AT_THRESHOLD: return nlsv::Theorem::AtThreshold;
    case NLSV_THEOREM_INVERSE_POWER: return nlsv::Theorem::InversePowerTheorems;
    default: nlsv::fail(nlsv::ErrorKind::Config, "unknown theorem id " + std::to_string(t));
  }
}

// Copies text into buf when it fits; needed is the size with the terminator.
nlsv_status copy_out(const std::string& text, char* buf, size_t len, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf) return NLSV_OK;
  if (len < text.size() + 1) {
    g_last_error = "buffer too small: need " + std::to_string(text.size() + 1) + " bytes";
    return NLSV_ERR_BUFFER_TOO_SMALL;
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return NLSV_OK;
}

template <class Run>
nlsv_status run_with(const nlsv_config* cfg, int* exit_code, Run&& run) {
  if (!cfg) return null_arg("cfg");
  if (!exit_code) return null_arg("exit_code");
  return guard([&] {
    *exit_code = run(cfg->cfg);
    return NLSV_OK;
  });
}

}  // namespace

extern "C" {

const char* nlsv_version(void) { return "1.0.0"; }

const char* nlsv_last_error(void) { return g_last_error.c_str(); }

const char* nlsv_status_name(nlsv_status s) {
  switch (s) {
    case NLSV_OK: return "ok";
    case NLSV_ERR_DOMAIN: return "domain error";
    case NLSV_ERR_DIVERGENCE: return "divergence";
    case NLSV_ERR_CONFIG: return "configuration error";
    case NLSV_ERR_SOLVER: return "solver failure";
    case NLSV_ERR_IO: return "i/o error";
    case NLSV_ERR_VALIDATION: return "validation failure";
    case NLSV_ERR_NULL_ARGUMENT: return "null argument";
    case NLSV_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case NLSV_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

nlsv_status nlsv_potential_eval(const nlsv_potential* v, double r, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::eval_potential(to_spec(v), r);
    return NLSV_OK;
  });
}

nlsv_status nlsv_potential_radial_derivative(const nlsv_potential* v, double r, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::radial_derivative(to_spec(v), r);
    return NLSV_OK;
  });
}

nlsv_status nlsv_yukawa_lq_norm(const nlsv_potential* v, double q, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::yukawa_lq_norm_closed(to_spec(v), q);
    return NLSV_OK;
  });
}

nlsv_status nlsv_yukawa_kato_norm(const nlsv_potential* v, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::yukawa_kato_norm_closed(to_spec(v));
    return NLSV_OK;
  });
}

nlsv_status nlsv_lq_norm_numeric(const nlsv_potential* v, double q, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::lq_norm_numeric(to_spec(v), q);
    return NLSV_OK;
  });
}

nlsv_status nlsv_kato_norm_numeric(const nlsv_potential* v, double* out) {
  if (!v || !out) return null_arg("potential/out");
  return guard([&] {
    *out = nlsv::kato_norm_numeric(to_spec(v)).norm;
    return NLSV_OK;
  });
}

nlsv_status nlsv_validate_potential(const nlsv_potential* v, int theorem, int* passed, char* buf, size_t len,
                                    size_t* needed) {
  if (!v || !passed) return null_arg("potential/passed");
  return guard([&] {
    const auto rep = nlsv::validate_assumptions(to_spec(v), to_theorem(theorem));
    *passed = rep.passed ? 1 : 0;
    return copy_out(nlsv::assumption_json(rep), buf, len, needed);
  });
}

nlsv_status nlsv_ground_state_solve(double alpha, double r_max, size_t n, double tol, nlsv_ground_state** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    if (n < 8 || !(r_max > 0.0)) nlsv::fail(nlsv::ErrorKind::Config, "grid needs n >= 8 and r_max > 0");
    auto* h = new nlsv_ground_state{nlsv::solve_ground_state(alpha, nlsv::RadialGrid(r_max, n), tol)};
    *out = h;
    return NLSV_OK;
  });
}

void nlsv_ground_state_free(nlsv_ground_state* gs) { delete gs; }

nlsv_status nlsv_ground_state_constants(const nlsv_ground_state* h, nlsv_gs_constants* out) {
  if (!h || !out) return null_arg("gs/out");
  return guard([&] {
    const auto& g = h->gs;
    const auto sc = nlsv::sharp_constants(g);
    const auto pr = nlsv::pohozaev_residuals(g);
    *out = nlsv_gs_constants{g.alpha,   g.sigma_c,           g.gamma_c,         g.q0,
                             g.mass,    g.grad_sq,           g.lp_norm,         sc.c_opt,
                             g.e0,      sc.threshold_energy, sc.threshold_grad, sc.threshold_scat,
                             pr.res1,   pr.res2};
    return NLSV_OK;
  });
}

nlsv_status nlsv_ground_state_size(const nlsv_ground_state* h, size_t* nodes) {
  if (!h || !nodes) return null_arg("gs/nodes");
  *nodes = h->gs.grid.size();
  return NLSV_OK;
}

nlsv_status nlsv_ground_state_profile(const nlsv_ground_state* h, double* r, double* q, size_t len) {
  if (!h || !r || !q) return null_arg("gs/r/q");
  if (len < h->gs.grid.size()) {
    g_last_error = "profile arrays need " + std::to_string(h->gs.grid.size()) + " entries";
    return NLSV_ERR_BUFFER_TOO_SMALL;
  }
  for (size_t i = 0; i < h->gs.grid.size(); ++i) {
    r[i] = h->gs.grid.r(i);
    q[i] = h->gs.q_values[i];
  }
  return NLSV_OK;
}

nlsv_status nlsv_ground_state_write(const nlsv_ground_state* h, const char* dir) {
  if (!h || !dir) return null_arg("gs/dir");
  return guard([&] {
    nlsv::write_ground_state_artifacts(h->gs, dir);
    return NLSV_OK;
  });
}

nlsv_status nlsv_cutoffs_build(double eta, double radius, double alpha, size_t resolution, nlsv_cutoffs** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guard([&] {
    *out = new nlsv_cutoffs{nlsv::build_cutoffs(eta, radius, alpha, resolution)};
    return NLSV_OK;
  });
}

void nlsv_cutoffs_free(nlsv_cutoffs* p) { delete p; }

nlsv_status nlsv_cutoffs_eval(const nlsv_cutoffs* h, double r, double* chi, double* phi, double* phi1, double* psi) {
  if (!h) return null_arg("cutoffs");
  return guard([&] {
    if (chi) *chi = h->p.chi(r);
    if (phi) *phi = h->p.phi(r);
    if (phi1) *phi1 = h->p.phi1(r);
    if (psi) *psi = h->p.psi(r);
    return NLSV_OK;
  });
}

nlsv_status nlsv_cutoffs_write_csv(const nlsv_cutoffs* h, const char* path) {
  if (!h || !path) return null_arg("cutoffs/path");
  return guard([&] {
    h->p.write_csv(path);
    return NLSV_OK;
  });
}

nlsv_status nlsv_config_load(const char* path, nlsv_config** out) {
  if (!path || !out) return null_arg("path/out");
  *out = nullptr;
  return guard([&] {
    *out = new nlsv_config{nlsv::load_config(path)};
    return NLSV_OK;
  });
}

nlsv_status nlsv_config_parse(const char* text, nlsv_config** out) {
  if (!text || !out) return null_arg("text/out");
  *out = nullptr;
  return guard([&] {
    *out = new nlsv_config{nlsv::parse_config(text)};
    return NLSV_OK;
  });
}

void nlsv_config_free(nlsv_config* cfg) { delete cfg; }

nlsv_status nlsv_config_set_output_dir(nlsv_config* cfg, const char* dir) {
  if (!cfg || !dir) return null_arg("cfg/dir");
  cfg->cfg.output_dir = dir;
  return NLSV_OK;
}

nlsv_status nlsv_config_output_dir(const nlsv_config* cfg, char* buf, size_t len, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return copy_out(cfg->cfg.output_dir, buf, len, needed);
}

nlsv_status nlsv_config_set_workers(nlsv_config* cfg, size_t workers) {
  if (!cfg) return null_arg("cfg");
  if (workers == 0) {
    g_last_error = "workers must be at least 1";
    return NLSV_ERR_CONFIG;
  }
  cfg->cfg.sweep.workers = workers;
  return NLSV_OK;
}

nlsv_status nlsv_config_serialize(const nlsv_config* cfg, char* buf, size_t len, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return guard([&] { return copy_out(nlsv::serialize_config(cfg->cfg), buf, len, needed); });
}

nlsv_status nlsv_run(const nlsv_config* cfg, int* exit_code) {
  return run_with(cfg, exit_code, [](const nlsv::ExperimentConfig& c) { return nlsv::run_experiment(c); });
}

nlsv_status nlsv_run_single(const nlsv_config* cfg, int* exit_code) {
  return run_with(cfg, exit_code, [](const nlsv::ExperimentConfig& c) { return nlsv::run_single(c).exit_code; });
}

nlsv_status nlsv_run_sweep(const nlsv_config* cfg, int* exit_code) {
  return run_with(cfg, exit_code, [](const nlsv::ExperimentConfig& c) { return nlsv::run_sweep(c).exit_code; });
}

nlsv_status nlsv_run_threshold_case(const nlsv_config* cfg, int* exit_code) {
  return run_with(cfg, exit_code,
                  [](const nlsv::ExperimentConfig& c) { return nlsv::run_threshold_case(c).exit_code; });
}

nlsv_status nlsv_run_decay_test(const nlsv_config* cfg, int* exit_code) {
  return run_with(cfg, exit_code, [](const nlsv::ExperimentConfig& c) { return nlsv::run_decay_test(c).exit_code; });
}

nlsv_status nlsv_run_diagnose(const nlsv_config* cfg, const char* trajectory_dir, int* exit_code) {
  if (!trajectory_dir) return null_arg("trajectory_dir");
  return run_with(cfg, exit_code, [&](const nlsv::ExperimentConfig& c) {
    return nlsv::run_diagnose(c, trajectory_dir).exit_code;
  });
}

nlsv_status nlsv_run_validation(const nlsv_config* cfg, int theorem, int* exit_code, char* buf, size_t len,
                                size_t* needed) {
  if (!cfg) return null_arg("cfg");
  if (!exit_code) return null_arg("exit_code");
  return guard([&] {
    std::optional<nlsv::Theorem> t;
    if (theorem >= 0) t = to_theorem(theorem);
    const auto s = nlsv::run_validation(cfg->cfg, t);
    *exit_code = s.exit_code;
    return copy_out(nlsv::assumption_json(s.assumptions), buf, len, needed);
  });
}

}  // extern "C"
