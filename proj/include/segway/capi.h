#ifndef SEGWAY_CAPI_H
#define SEGWAY_CAPI_H

/* C interface to the segway control-synthesis and simulation library.
 *
 * Conventions:
 *  - every fallible call returns sgw_status; outputs are written only on
 *    SGW_OK, and sgw_last_error() carries a message for the calling thread
 *  - handles (sgw_model, sgw_trajectory) are opaque; free with the matching
 *    *_free, which accepts NULL
 *  - state order everywhere is (x, v, theta, omega); gain vectors follow it
 *  - polynomial coefficient arrays passed in are descending (s^4 first,
 *    leading 1); those returned in sgw_placement are also descending
 */

#include <stddef.h>

#if defined(_WIN32)
#define SGW_API __declspec(dllexport)
#else
#define SGW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sgw_status {
    SGW_OK = 0,
    SGW_ERR_INVALID_ARGUMENT = 1,
    SGW_ERR_SINGULAR_MATRIX = 2,
    SGW_ERR_NO_CONVERGENCE = 3,
    SGW_ERR_UNCONTROLLABLE = 4,
    SGW_ERR_VERIFICATION_FAILED = 5,
    SGW_ERR_NONFINITE = 6,
    SGW_ERR_IO = 7,
    SGW_ERR_CONFIG = 8
} sgw_status;

typedef enum sgw_plant_source { SGW_PLANT_DERIVED = 0, SGW_PLANT_PAPER = 1 } sgw_plant_source;
typedef enum sgw_model_kind { SGW_MODEL_NONLINEAR = 0, SGW_MODEL_LINEAR = 1 } sgw_model_kind;
typedef enum sgw_mode {
    SGW_MODE_HOLD = 0,
    SGW_MODE_FREE = 1,
    SGW_MODE_SETTLED = 2,
    SGW_MODE_OPEN = 3
} sgw_mode;

/* Sample flag bits. */
#define SGW_FLAG_DIVERGED 1u
#define SGW_FLAG_SATURATED 2u

SGW_API const char* sgw_status_name(sgw_status status);

/* Message describing the calling thread's most recent failure. Never NULL;
 * overwritten by the next failing call on the same thread. */
SGW_API const char* sgw_last_error(void);

/* Physical parameters. Figure-1 defaults via sgw_params_default(). */
typedef struct sgw_params {
    double m;    /* rod mass, kg */
    double M;    /* wheel assembly mass, kg */
    double I_r;  /* rod inertia, kg m^2 */
    double I_w;  /* wheel inertia, kg m^2 */
    double l;    /* pivot to rod center of mass, m */
    double R;    /* wheel radius, m */
    double g;    /* gravity, m/s^2 */
    double K;    /* reaction torque ratio */
} sgw_params;

SGW_API sgw_params sgw_params_default(void);

/* A plant: parameters plus the chosen linear source. */
typedef struct sgw_model sgw_model;

SGW_API sgw_status sgw_model_create(const sgw_params* params, sgw_plant_source source,
                                    sgw_model** out);
SGW_API void sgw_model_free(sgw_model* model);

/* k1..k6 into k_out[0..5], determinant bound into delta_out. */
SGW_API sgw_status sgw_model_constants(const sgw_model* model, double k_out[6],
                                       double* delta_out);
/* Row-major A into a_out, input column into b_out. */
SGW_API sgw_status sgw_model_state_space(const sgw_model* model, double a_out[16],
                                         double b_out[4]);
/* Row-major [B, AB, A^2B, A^3B] and its numerical rank. */
SGW_API sgw_status sgw_model_controllability(const sgw_model* model, double c_out[16],
                                             int* rank_out);

typedef struct sgw_placement {
    double desired[5];   /* descending monic target polynomial */
    double k_canon[4];   /* canonical-coordinate feedback, ascending s^0..s^3 */
    double gains[4];     /* physical feedback: x, v, theta, omega */
    double poles_re[4];  /* achieved closed-loop poles, sorted by (re, im) */
    double poles_im[4];
    double max_pole_error;
} sgw_placement;

/* desired_descending[0] must be 1 (monic degree 4). */
SGW_API sgw_status sgw_place_poles_coeffs(const sgw_model* model,
                                          const double desired_descending[5],
                                          sgw_placement* out);
SGW_API sgw_status sgw_place_poles_roots(const sgw_model* model, const double roots_re[4],
                                         const double roots_im[4], sgw_placement* out);
/* k_canon ascending: desired coefficients minus open-loop coefficients. */
SGW_API sgw_status sgw_place_poles_kcanon(const sgw_model* model, const double k_canon[4],
                                          sgw_placement* out);
/* The fixed two-mode design targets synthesized for this model's plant. */
SGW_API sgw_status sgw_default_gains(const sgw_model* model, double mode1_out[4],
                                     double mode2_out[4]);

/* Reports are heap strings; release with sgw_string_free. */
SGW_API sgw_status sgw_analyze_report(const sgw_model* model, char** text_out);
SGW_API sgw_status sgw_placement_report(const sgw_model* model, const sgw_placement* placement,
                                        char** text_out);
SGW_API void sgw_string_free(char* text);

typedef struct sgw_scenario {
    double theta_i;         /* commanded tilt, |theta_i| < pi/2 */
    double t_hold;          /* >= 0 */
    double dt;              /* 0 < dt <= 0.01 */
    double t_max;           /* > t_hold */
    sgw_model_kind model;
    int use_default_gains;  /* nonzero: ignore the gain fields below */
    double gains_mode1[4];
    double gains_mode2[4];
    int has_torque_limit;
    double torque_limit;
    double control_period;  /* <= 0 means one refresh per step */
    int run_to_t_max;       /* nonzero: keep integrating after settle */
} sgw_scenario;

SGW_API sgw_scenario sgw_scenario_default(void);

typedef struct sgw_trajectory sgw_trajectory;

SGW_API sgw_status sgw_run_scenario(const sgw_model* model, const sgw_scenario* scenario,
                                    sgw_trajectory** out);
SGW_API sgw_status sgw_run_open_loop(const sgw_model* model, sgw_model_kind kind,
                                     double torque_step, double t_max, double dt,
                                     sgw_trajectory** out);

SGW_API size_t sgw_trajectory_size(const sgw_trajectory* traj);
/* state_out receives (x, v, theta, omega) at sample index i. */
SGW_API sgw_status sgw_trajectory_sample(const sgw_trajectory* traj, size_t i, double* t_out,
                                         double state_out[4], double* torque_out, int* mode_out,
                                         unsigned* flags_out);
SGW_API int sgw_trajectory_diverged(const sgw_trajectory* traj);
SGW_API int sgw_trajectory_settled(const sgw_trajectory* traj);
SGW_API sgw_status sgw_trajectory_write_csv(const sgw_trajectory* traj, const char* path);
/* CSV text in memory; release with sgw_string_free. */
SGW_API sgw_status sgw_trajectory_csv(const sgw_trajectory* traj, char** text_out);
/* Scenario metrics report; fails for open-loop trajectories. */
SGW_API sgw_status sgw_metrics_report(const sgw_trajectory* traj, char** text_out);
/* Open-loop summary; fails for scenario trajectories. */
SGW_API sgw_status sgw_open_loop_report(const sgw_trajectory* traj, char** text_out);
SGW_API void sgw_trajectory_free(sgw_trajectory* traj);

#ifdef __cplusplus
}
#endif

#endif /* SEGWAY_CAPI_H */
