/* C interface to the radial NLS-with-potential laboratory.
 *
 * Every call returns an nlsv_status. On failure the message is kept per
 * thread and can be read with nlsv_last_error() until the next failing call.
 * Handles are opaque and owned by the caller once returned. */
#ifndef NLSV_NLSV_H
#define NLSV_NLSV_H

#include <stddef.h>

#if defined(NLSV_BUILDING_LIBRARY)
#define NLSV_API __attribute__((visibility("default")))
#else
#define NLSV_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlsv_status {
  NLSV_OK = 0,
  NLSV_ERR_DOMAIN = 1,
  NLSV_ERR_DIVERGENCE = 2,
  NLSV_ERR_CONFIG = 3,
  NLSV_ERR_SOLVER = 4,
  NLSV_ERR_IO = 5,
  NLSV_ERR_VALIDATION = 6,
  NLSV_ERR_NULL_ARGUMENT = 7,
  NLSV_ERR_BUFFER_TOO_SMALL = 8,
  NLSV_ERR_INTERNAL = 9
} nlsv_status;

typedef enum nlsv_family { NLSV_FAMILY_ZERO = 0, NLSV_FAMILY_YUKAWA = 1, NLSV_FAMILY_INVERSE_POWER = 2 } nlsv_family;

typedef enum nlsv_theorem {
  NLSV_THEOREM_SCATTERING_FOCUSING = 0,
  NLSV_THEOREM_SCATTERING_DEFOCUSING = 1,
  NLSV_THEOREM_BELOW_THRESHOLD = 2,
  NLSV_THEOREM_AT_THRESHOLD = 3,
  NLSV_THEOREM_INVERSE_POWER = 4
} nlsv_theorem;

typedef struct nlsv_potential {
  int family; /* nlsv_family */
  double c;
  double sigma;
  double a;
} nlsv_potential;

typedef struct nlsv_ground_state nlsv_ground_state;
typedef struct nlsv_config nlsv_config;
typedef struct nlsv_cutoffs nlsv_cutoffs;

typedef struct nlsv_gs_constants {
  double alpha;
  double sigma_c;
  double gamma_c;
  double q0;
  double mass;
  double grad_sq;
  double lp_norm;
  double c_opt;
  double e0;
  double threshold_energy;
  double threshold_grad;
  double threshold_scat;
  double pohozaev_residual_1;
  double pohozaev_residual_2;
} nlsv_gs_constants;

NLSV_API const char* nlsv_version(void);
NLSV_API const char* nlsv_last_error(void);
NLSV_API const char* nlsv_status_name(nlsv_status s);

/* Potentials. */
NLSV_API nlsv_status nlsv_potential_eval(const nlsv_potential* v, double r, double* out);
NLSV_API nlsv_status nlsv_potential_radial_derivative(const nlsv_potential* v, double r, double* out);
NLSV_API nlsv_status nlsv_yukawa_lq_norm(const nlsv_potential* v, double q, double* out);
NLSV_API nlsv_status nlsv_yukawa_kato_norm(const nlsv_potential* v, double* out);
NLSV_API nlsv_status nlsv_lq_norm_numeric(const nlsv_potential* v, double q, double* out);
NLSV_API nlsv_status nlsv_kato_norm_numeric(const nlsv_potential* v, double* out);
/* passed receives 0/1; the JSON report is copied into buf when it fits
 * (needed always receives the size including the terminator). */
NLSV_API nlsv_status nlsv_validate_potential(const nlsv_potential* v, int theorem, int* passed, char* buf, size_t len,
                                             size_t* needed);

/* Ground state on the grid r_i = i r_max / n, i = 0..n. */
NLSV_API nlsv_status nlsv_ground_state_solve(double alpha, double r_max, size_t n, double tol, nlsv_ground_state** out);
NLSV_API void nlsv_ground_state_free(nlsv_ground_state* gs);
NLSV_API nlsv_status nlsv_ground_state_constants(const nlsv_ground_state* gs, nlsv_gs_constants* out);
NLSV_API nlsv_status nlsv_ground_state_size(const nlsv_ground_state* gs, size_t* nodes);
/* Copies r and Q; both arrays must hold nlsv_ground_state_size nodes. */
NLSV_API nlsv_status nlsv_ground_state_profile(const nlsv_ground_state* gs, double* r, double* q, size_t len);
/* Q.csv and constants.json under dir. */
NLSV_API nlsv_status nlsv_ground_state_write(const nlsv_ground_state* gs, const char* dir);

/* Cutoffs. */
NLSV_API nlsv_status nlsv_cutoffs_build(double eta, double radius, double alpha, size_t resolution, nlsv_cutoffs** out);
NLSV_API void nlsv_cutoffs_free(nlsv_cutoffs* p);
NLSV_API nlsv_status nlsv_cutoffs_eval(const nlsv_cutoffs* p, double r, double* chi, double* phi, double* phi1,
                                       double* psi);
NLSV_API nlsv_status nlsv_cutoffs_write_csv(const nlsv_cutoffs* p, const char* path);

/* Experiment configuration. */
NLSV_API nlsv_status nlsv_config_load(const char* path, nlsv_config** out);
NLSV_API nlsv_status nlsv_config_parse(const char* text, nlsv_config** out);
NLSV_API void nlsv_config_free(nlsv_config* cfg);
NLSV_API nlsv_status nlsv_config_set_output_dir(nlsv_config* cfg, const char* dir);
NLSV_API nlsv_status nlsv_config_output_dir(const nlsv_config* cfg, char* buf, size_t len, size_t* needed);
NLSV_API nlsv_status nlsv_config_set_workers(nlsv_config* cfg, size_t workers);
NLSV_API nlsv_status nlsv_config_serialize(const nlsv_config* cfg, char* buf, size_t len, size_t* needed);

/* Runs. exit_code receives 0 (success), 1 (runtime failure) or
 * 2 (validation failure); the status is NLSV_OK whenever artifacts were written. */
NLSV_API nlsv_status nlsv_run(const nlsv_config* cfg, int* exit_code);
NLSV_API nlsv_status nlsv_run_single(const nlsv_config* cfg, int* exit_code);
NLSV_API nlsv_status nlsv_run_sweep(const nlsv_config* cfg, int* exit_code);
NLSV_API nlsv_status nlsv_run_threshold_case(const nlsv_config* cfg, int* exit_code);
NLSV_API nlsv_status nlsv_run_decay_test(const nlsv_config* cfg, int* exit_code);
NLSV_API nlsv_status nlsv_run_diagnose(const nlsv_config* cfg, const char* trajectory_dir, int* exit_code);
/* theorem < 0 picks the set implied by the configuration. */
NLSV_API nlsv_status nlsv_run_validation(const nlsv_config* cfg, int theorem, int* exit_code, char* buf, size_t len,
                                         size_t* needed);

#ifdef __cplusplus
}
#endif

#endif
