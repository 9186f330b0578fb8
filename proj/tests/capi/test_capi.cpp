// Exercises the shared library through its C header only.
#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "nlsv/nlsv.h"

namespace fs = std::filesystem;

TEST_CASE("status names and version") {
  CHECK(std::string(nlsv_version()).size() > 0);
  CHECK(std::string(nlsv_status_name(NLSV_OK)) != std::string(nlsv_status_name(NLSV_ERR_DIVERGENCE)));
}

TEST_CASE("potential calls and error codes") {
  nlsv_potential v{NLSV_FAMILY_YUKAWA, 1.0, 1.0, 1.0};
  double out = 0;
  REQUIRE(nlsv_potential_eval(&v, 1.0, &out) == NLSV_OK);
  CHECK(out == doctest::Approx(std::exp(-1.0)));
  REQUIRE(nlsv_yukawa_kato_norm(&v, &out) == NLSV_OK);
  CHECK(out == doctest::Approx(4 * M_PI));
  CHECK(nlsv_yukawa_lq_norm(&v, 3.0, &out) == NLSV_ERR_DIVERGENCE);
  CHECK(std::strlen(nlsv_last_error()) > 0);
  CHECK(nlsv_potential_eval(&v, 0.0, &out) == NLSV_ERR_DOMAIN);
  CHECK(nlsv_potential_eval(nullptr, 1.0, &out) == NLSV_ERR_NULL_ARGUMENT);
  nlsv_potential ip{NLSV_FAMILY_INVERSE_POWER, 1.0, 1.0, 0.0};
  CHECK(nlsv_kato_norm_numeric(&ip, &out) == NLSV_ERR_DIVERGENCE);
}

TEST_CASE("validation report with buffer negotiation") {
  nlsv_potential v{NLSV_FAMILY_YUKAWA, 1.0, 0.5, 1.0};
  int passed = -1;
  std::size_t needed = 0;
  char small[4];
  CHECK(nlsv_validate_potential(&v, NLSV_THEOREM_BELOW_THRESHOLD, &passed, small, sizeof small, &needed) ==
        NLSV_ERR_BUFFER_TOO_SMALL);
  REQUIRE(needed > sizeof small);
  std::vector<char> buf(needed);
  CHECK(nlsv_validate_potential(&v, NLSV_THEOREM_BELOW_THRESHOLD, &passed, buf.data(), buf.size(), &needed) == NLSV_OK);
  CHECK(passed == 1);
  CHECK(std::string(buf.data()).find("\"passed\"") != std::string::npos);
}

TEST_CASE("ground state handle") {
  nlsv_ground_state* gs = nullptr;
  REQUIRE(nlsv_ground_state_solve(2.0, 20.0, 2048, 1e-9, &gs) == NLSV_OK);
  nlsv_gs_constants c{};
  REQUIRE(nlsv_ground_state_constants(gs, &c) == NLSV_OK);
  CHECK(c.grad_sq / c.mass == doctest::Approx(3.0).epsilon(1e-5));
  CHECK(std::abs(c.pohozaev_residual_1) < 1e-5);
  std::size_t n = 0;
  REQUIRE(nlsv_ground_state_size(gs, &n) == NLSV_OK);
  CHECK(n == 2049);
  std::vector<double> r(n), q(n);
  CHECK(nlsv_ground_state_profile(gs, r.data(), q.data(), n - 1) == NLSV_ERR_BUFFER_TOO_SMALL);
  REQUIRE(nlsv_ground_state_profile(gs, r.data(), q.data(), n) == NLSV_OK);
  CHECK(q[0] == c.q0);
  const auto dir = fs::temp_directory_path() / "nlsv_capi_gs";
  fs::remove_all(dir);
  fs::create_directories(dir);
  CHECK(nlsv_ground_state_write(gs, dir.c_str()) == NLSV_OK);
  CHECK(fs::exists(dir / "Q.csv"));
  CHECK(fs::exists(dir / "constants.json"));
  nlsv_ground_state_free(gs);
  nlsv_ground_state_free(nullptr);

  CHECK(nlsv_ground_state_solve(5.0, 20.0, 2048, 1e-9, &gs) == NLSV_ERR_DOMAIN);
}

TEST_CASE("cutoffs handle") {
  nlsv_cutoffs* p = nullptr;
  REQUIRE(nlsv_cutoffs_build(0.1, 10.0, 2.0, 512, &p) == NLSV_OK);
  double chi, phi, phi1, psi;
  REQUIRE(nlsv_cutoffs_eval(p, 25.0, &chi, &phi, &phi1, &psi) == NLSV_OK);
  CHECK(chi == 0.0);
  CHECK(phi == 0.0);
  CHECK(psi > 0.0);
  nlsv_cutoffs_free(p);
}

TEST_CASE("config handle") {
  nlsv_config* cfg = nullptr;
  CHECK(nlsv_config_parse("[run]\nnope = 1\n", &cfg) == NLSV_ERR_CONFIG);
  REQUIRE(nlsv_config_parse("[run]\nname = t\n[potential]\nfamily = yukawa\nc = 1\nsigma = 2.5\na = 1\n", &cfg) ==
          NLSV_OK);
  const auto dir = fs::temp_directory_path() / "nlsv_capi_cfg";
  fs::remove_all(dir);
  REQUIRE(nlsv_config_set_output_dir(cfg, dir.c_str()) == NLSV_OK);
  std::size_t needed = 0;
  CHECK(nlsv_config_output_dir(cfg, nullptr, 0, &needed) == NLSV_OK);  // size query
  char one[1];
  CHECK(nlsv_config_output_dir(cfg, one, 1, &needed) == NLSV_ERR_BUFFER_TOO_SMALL);
  std::vector<char> buf(needed);
  REQUIRE(nlsv_config_output_dir(cfg, buf.data(), buf.size(), &needed) == NLSV_OK);
  CHECK(std::string(buf.data()) == dir.string());
  REQUIRE(nlsv_config_serialize(cfg, nullptr, 0, &needed) == NLSV_OK);
  std::vector<char> text(needed);
  REQUIRE(nlsv_config_serialize(cfg, text.data(), text.size(), &needed) == NLSV_OK);
  CHECK(std::string(text.data()).find("sigma = 2.5") != std::string::npos);

  int exit_code = -1;
  CHECK(nlsv_run_single(cfg, &exit_code) == NLSV_OK);
  CHECK(exit_code == 2);
  CHECK(fs::exists(dir / "summary.json"));
  nlsv_config_free(cfg);
  CHECK(nlsv_config_load("/nonexistent.cfg", &cfg) == NLSV_ERR_IO);
}
