/* C interface to the degenpde core: opaque handles + status codes.
 * Every function returns DGP_OK on success; on failure the returned status
 * identifies the error class and dgp_last_error() carries the message
 * (thread-local).  Handles are freed with the matching *_free call. */
#ifndef DEGENPDE_H
#define DEGENPDE_H

#include <stddef.h>

#if defined(_WIN32)
#define DGP_API __declspec(dllexport)
#else
#define DGP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dgp_status {
  DGP_OK = 0,
  DGP_ERR_NONPOSITIVE_PARAMETER,
  DGP_ERR_INVALID_REGIME,
  DGP_ERR_EXCLUDED_CASE,
  DGP_ERR_WRONG_REGIME,
  DGP_ERR_OUT_OF_RANGE,
  DGP_ERR_DOMAIN,
  DGP_ERR_MISSING_DEPENDENCY,
  DGP_ERR_CONVERGENCE,
  DGP_ERR_SHOOTING_DIVERGED,
  DGP_ERR_FRONT_NOT_BRACKETED,
  DGP_ERR_GRID_TOO_COARSE,
  DGP_ERR_STABILITY,
  DGP_ERR_NONFINITE,
  DGP_ERR_INTERFACE_LEFT_DOMAIN,
  DGP_ERR_INSUFFICIENT_DATA,
  DGP_ERR_INSUFFICIENT_RANGE,
  DGP_ERR_SHAPE_MISSING,
  DGP_ERR_UNKNOWN_BARRIER,
  DGP_ERR_MISSING_CONSTANT,
  DGP_ERR_INVALID_ARGUMENT,
  DGP_ERR_INTERNAL
} dgp_status;

typedef struct dgp_params {
  double m;
  double p;
  double b;
  double beta;
  double alpha;
  double C;
} dgp_params;

/* classification record; enum fields are decoded with the *_name helpers */
typedef enum dgp_case {
  DGP_CASE_I = 0,
  DGP_CASE_II_SUPER,
  DGP_CASE_II_STATIONARY,
  DGP_CASE_II_SUB,
  DGP_CASE_III,
  DGP_CASE_IV,
  DGP_CASE_V
} dgp_case;

typedef enum dgp_interface_kind {
  DGP_IFACE_EXPANDS = 0,
  DGP_IFACE_SHRINKS,
  DGP_IFACE_STATIONARY,
  DGP_IFACE_INFINITE_SPEED
} dgp_interface_kind;

typedef enum dgp_decay_law {
  DGP_DECAY_NONE = 0,
  DGP_DECAY_EXPONENTIAL_GAMMA,
  DGP_DECAY_POWER_FAST_DIFFUSION,
  DGP_DECAY_POWER_C_STAR
} dgp_decay_law;

typedef struct dgp_regime {
  int case_id;        /* dgp_case */
  int interface_kind; /* dgp_interface_kind */
  int decay_law;      /* dgp_decay_law */
  int has_exponent;
  double exponent;
  int has_coeff_bounds;
  double coeff_lo;
  double coeff_hi;
} dgp_regime;

DGP_API const char* dgp_status_name(dgp_status s);
DGP_API const char* dgp_last_error(void);
DGP_API const char* dgp_case_name(int case_id);
DGP_API const char* dgp_interface_kind_name(int kind);
DGP_API const char* dgp_decay_law_name(int law);

DGP_API dgp_status dgp_validate(const dgp_params* prm);
DGP_API dgp_status dgp_classify(const dgp_params* prm, dgp_regime* out);
DGP_API dgp_status dgp_c_star(const dgp_params* prm, double* out);
DGP_API dgp_status dgp_big_d(const dgp_params* prm, double* out);
DGP_API dgp_status dgp_gamma_decay(const dgp_params* prm, double* out);
DGP_API dgp_status dgp_ell_star(const dgp_params* prm, double* out);

/* ---- reports: named constants plus predicted/measured checks ---- */
typedef struct dgp_report dgp_report;

DGP_API size_t dgp_report_constant_count(const dgp_report* rep);
DGP_API const char* dgp_report_constant_name(const dgp_report* rep, size_t i);
DGP_API double dgp_report_constant_value(const dgp_report* rep, size_t i);
DGP_API size_t dgp_report_check_count(const dgp_report* rep);
DGP_API const char* dgp_report_check_name(const dgp_report* rep, size_t i);
DGP_API dgp_status dgp_report_check(const dgp_report* rep, size_t i, double* predicted,
                                    double* measured, double* rel_error, int* pass);
DGP_API int dgp_report_all_pass(const dgp_report* rep);
DGP_API void dgp_report_free(dgp_report* rep);

/* optional inputs passed as NULL-able pointers */
DGP_API dgp_status dgp_appendix_constants(const dgp_params* prm, double epsilon,
                                          const double* a0, const double* a1,
                                          const double* lambda, const double* ell1,
                                          dgp_report** out);

/* ---- tabulated profiles ---- */
typedef struct dgp_profile dgp_profile;

typedef struct dgp_shooting_config {
  double xi_left;   /* NaN = automatic */
  double xi_right;  /* NaN = automatic */
  double tolerance; /* <= 0 = default */
  double ode_rel_tol;
  int output_nodes; /* <= 0 = default */
} dgp_shooting_config;

DGP_API dgp_status dgp_stationary_profile(const dgp_params* prm, double z_min, int nodes,
                                          dgp_profile** out);
DGP_API dgp_status dgp_stationary_decay_check(const dgp_params* prm, const dgp_profile* profile,
                                              double gamma_prime_factor, dgp_report** out);
DGP_API dgp_status dgp_selfsim_f(const dgp_params* prm, const dgp_shooting_config* cfg,
                                 dgp_profile** out);
DGP_API dgp_status dgp_selfsim_f1(const dgp_params* prm, const dgp_shooting_config* cfg,
                                  dgp_profile** out);

DGP_API size_t dgp_profile_size(const dgp_profile* profile);
DGP_API dgp_status dgp_profile_node(const dgp_profile* profile, size_t i, double* x, double* v);
DGP_API dgp_status dgp_profile_eval(const dgp_profile* profile, double x, double* v);
DGP_API dgp_status dgp_profile_value_at_zero(const dgp_profile* profile, double* v);
/* front location for balance profiles; DGP_ERR_FRONT_NOT_BRACKETED if none */
DGP_API dgp_status dgp_profile_front(const dgp_profile* profile, double* zeta_star);
DGP_API void dgp_profile_free(dgp_profile* profile);

/* ---- simulation ---- */
typedef struct dgp_sim dgp_sim;

typedef struct dgp_solver_config {
  double x_left;
  double x_right;
  double dx;
  double t_end;
  double cfl_safety;
  double floor;       /* 0 = floor_scale * max(u0) */
  double threshold;   /* 0 = 10 * floor */
  double floor_scale; /* used when floor == 0 */
  int left_bc;        /* 0 frozen, 1 exact absorption, 2 reflecting */
  int right_bc;       /* 0 zero, 1 floor, 2 reflecting */
  const double* sample_times;
  size_t n_samples;
} dgp_solver_config;

DGP_API dgp_status dgp_simulate(const dgp_params* prm, const dgp_solver_config* cfg,
                                dgp_sim** out);
DGP_API size_t dgp_sim_grid_size(const dgp_sim* sim);
DGP_API dgp_status dgp_sim_grid(const dgp_sim* sim, double* xs);
DGP_API size_t dgp_sim_snapshot_count(const dgp_sim* sim);
DGP_API dgp_status dgp_sim_snapshot_time(const dgp_sim* sim, size_t i, double* t);
DGP_API dgp_status dgp_sim_snapshot_values(const dgp_sim* sim, size_t i, double* us);
DGP_API size_t dgp_sim_trace_size(const dgp_sim* sim);
DGP_API dgp_status dgp_sim_trace_point(const dgp_sim* sim, size_t i, double* t, double* eta);
DGP_API double dgp_sim_clipped_mass(const dgp_sim* sim);
DGP_API double dgp_sim_floor(const dgp_sim* sim);
DGP_API double dgp_sim_threshold(const dgp_sim* sim);
DGP_API int dgp_sim_right_tail_resolved(const dgp_sim* sim);
DGP_API void dgp_sim_free(dgp_sim* sim);

/* ---- analysis ---- */
DGP_API dgp_status dgp_fit_power_law(const double* t, const double* eta, size_t n, double t_lo,
                                     double t_hi, double min_abs_eta, double* exponent,
                                     double* coefficient, double* rms_log_residual);
DGP_API dgp_status dgp_verify_interface_law(const dgp_params* prm, const dgp_sim* sim,
                                            double t_lo, double t_hi, dgp_report** out);
/* shape_a = f (cases I/V) or f1 (case II); phi for case IV; both NULL-able */
DGP_API dgp_status dgp_verify_local_solution(const dgp_params* prm, const dgp_sim* sim,
                                             const dgp_profile* shape_a,
                                             const dgp_profile* phi, double epsilon,
                                             dgp_report** out);
DGP_API dgp_status dgp_solver_vs_barriers(const dgp_params* prm, const dgp_sim* sim,
                                          double epsilon, const double* a0, const double* a1,
                                          const double* lambda, const double* ell1,
                                          dgp_report** out);
DGP_API dgp_status dgp_barrier_residual_scan(const dgp_params* prm, const char* barrier_id,
                                             double epsilon, const double* a0, const double* a1,
                                             const double* lambda, const double* ell1,
                                             dgp_report** out);
DGP_API dgp_status dgp_constant_identity_suite(const dgp_params* prm, double epsilon, double a0,
                                               dgp_report** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DEGENPDE_H */
