// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlsv/nlsv.h"

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kValidation = 2;
constexpr int kUsage = 64;

int status_exit(nlsv_status s) {
  if (s == NLSV_OK) return kOk;
  std::fprintf(stderr, "error: %s: %s\n", nlsv_status_name(s), nlsv_last_error());
  return (s == NLSV_ERR_CONFIG || s == NLSV_ERR_VALIDATION) ? kValidation : kRuntime;
}

struct ConfigHandle {
  nlsv_config* p = nullptr;
  ~ConfigHandle() { nlsv_config_free(p); }
};

// Loads the config and applies --out; returns an exit code on failure.
std::optional<int> load(ConfigHandle& h, const std::string& path, const std::string& out) {
  if (auto s = nlsv_config_load(path.c_str(), &h.p); s != NLSV_OK) return status_exit(s);
  if (!out.empty()) nlsv_config_set_output_dir(h.p, out.c_str());
  return std::nullopt;
}

int report(const char* what, nlsv_status s, const int* code) {
  if (s != NLSV_OK) return status_exit(s);
  std::printf("%s finished with exit code %d\n", what, *code);
  return *code;
}

int theorem_id(const std::string& name) {
  if (name.empty()) return -1;
  if (name == "scattering_criterion_focusing") return NLSV_THEOREM_SCATTERING_FOCUSING;
  if (name == "scattering_criterion_defocusing") return NLSV_THEOREM_SCATTERING_DEFOCUSING;
  if (name == "below_threshold") return NLSV_THEOREM_BELOW_THRESHOLD;
  if (name == "at_threshold") return NLSV_THEOREM_AT_THRESHOLD;
  return NLSV_THEOREM_INVERSE_POWER;  // "inverse_power"; anything else is rejected by CLI11
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial NLS with potential: ground states, dynamics and Morawetz diagnostics"};
  app.require_subcommand(1);

  std::string config, out, trajectory, theorem;
  double alpha = 2.0, r_max = 30.0, tol = 1e-10;
  std::size_t n = 4096, workers = 0;

  auto* gs = app.add_subcommand("ground-state", "solve for Q and write Q.csv and constants.json");
  gs->add_option("--alpha", alpha, "nonlinearity exponent in (4/3, 4)")->required();
  gs->add_option("--r-max", r_max, "outer radius of the grid");
  gs->add_option("--n", n, "number of grid intervals");
  gs->add_option("--tol", tol, "shooting tolerance");
  gs->add_option("--out", out, "output directory (default: current directory)");

  auto* vp = app.add_subcommand("validate-potential", "check the potential hypotheses");
  vp->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
  vp->add_option("--theorem", theorem, "hypothesis set (default: implied by the configuration)")
      ->check(CLI::IsMember({"scattering_criterion_focusing", "scattering_criterion_defocusing", "below_threshold",
                             "at_threshold", "inverse_power"}));
  vp->add_option("--out", out, "output directory for assumptions.json");

  auto* ev = app.add_subcommand("evolve", "single run (or the threshold case when mode = threshold_case)");
  ev->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
  ev->add_option("--out", out, "output directory");

  auto* sw = app.add_subcommand("sweep", "beta sweep writing dichotomy.csv");
  sw->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
  sw->add_option("--out", out, "output directory");
  sw->add_option("--workers", workers, "parallel runs")->check(CLI::PositiveNumber);

  auto* dg = app.add_subcommand("diagnose", "Morawetz suite on a saved trajectory");
  dg->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
  dg->add_option("--trajectory", trajectory, "run directory holding snapshots/ (default: output_dir)");
  dg->add_option("--out", out, "output directory");

  auto* dt = app.add_subcommand("decay-test", "linear-flow L^inf decay fit");
  dt->add_option("--config", config, "configuration file")->required()->check(CLI::ExistingFile);
  dt->add_option("--out", out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "%s\n\n%s", e.what(), app.help().c_str());
    return kUsage;
  }

  if (*gs) {
    nlsv_ground_state* h = nullptr;
    if (auto s = nlsv_ground_state_solve(alpha, r_max, n, tol, &h); s != NLSV_OK) return status_exit(s);
    const auto s = nlsv_ground_state_write(h, out.empty() ? "." : out.c_str());
    nlsv_gs_constants c{};
    nlsv_ground_state_constants(h, &c);
    nlsv_ground_state_free(h);
    if (s != NLSV_OK) return status_exit(s);
    std::printf("Q(0) = %.12g  C_opt = %.12g  E0(Q) = %.12g\n", c.q0, c.c_opt, c.e0);
    return kOk;
  }

  ConfigHandle cfg;
  if (auto fail = load(cfg, config, out)) return *fail;
  int code = kRuntime;

  if (*vp) {
    size_t need = 0;
    auto s = nlsv_run_validation(cfg.p, theorem_id(theorem), &code, nullptr, 0, &need);
    if (s != NLSV_OK) return status_exit(s);
    std::vector<char> buf(need);
    s = nlsv_run_validation(cfg.p, theorem_id(theorem), &code, buf.data(), buf.size(), &need);
    if (s != NLSV_OK) return status_exit(s);
    std::printf("%s\n", buf.data());
    return code;
  }
  if (*ev) return report("evolve", nlsv_run(cfg.p, &code), &code);
  if (*sw) {
    if (workers > 0) nlsv_config_set_workers(cfg.p, workers);
    return report("sweep", nlsv_run_sweep(cfg.p, &code), &code);
  }
  if (*dg) {
    if (trajectory.empty()) {
      // Default to the configured output_dir, ignoring --out.
      ConfigHandle orig;
      if (auto fail = load(orig, config, "")) return *fail;
      size_t need = 0;
      nlsv_config_output_dir(orig.p, nullptr, 0, &need);
      std::vector<char> text(need);
      nlsv_config_output_dir(orig.p, text.data(), text.size(), &need);
      trajectory = text.data();
    }
    return report("diagnose", nlsv_run_diagnose(cfg.p, trajectory.c_str(), &code), &code);
  }
  if (*dt) return report("decay-test", nlsv_run_decay_test(cfg.p, &code), &code);
  return kUsage;
}
