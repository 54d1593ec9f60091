/*
 * pdclab C API.
 *
 * Every fallible call returns a pdclab_status; on failure a message is kept
 * per thread and can be read with pdclab_last_error(). Objects are opaque
 * handles released with the matching *_destroy function (NULL is accepted).
 * Angles cross this boundary in degrees.
 */
#ifndef PDCLAB_H
#define PDCLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PDCLAB_BUILDING)
#    define PDCLAB_API __declspec(dllexport)
#  else
#    define PDCLAB_API __declspec(dllimport)
#  endif
#else
#  define PDCLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdclab_status {
    PDCLAB_OK = 0,
    PDCLAB_ERR_CONFIG = 1,
    PDCLAB_ERR_IO = 2,
    PDCLAB_ERR_TOLERANCE = 3,
    PDCLAB_ERR_PRECONDITION = 4,
    PDCLAB_ERR_ESTIMATE = 5,
    PDCLAB_ERR_INVALID_ARG = 6,
    PDCLAB_ERR_INTERNAL = 7
} pdclab_status;

typedef enum pdclab_format { PDCLAB_FORMAT_CSV = 0, PDCLAB_FORMAT_JSON = 1 } pdclab_format;

/* Warning bits carried by estimates and sweep rows. */
#define PDCLAB_WARN_K_ABOVE_ONE 0x1u
#define PDCLAB_WARN_K_BELOW_ZERO 0x2u
#define PDCLAB_WARN_INFINITE_SIGMA 0x4u
#define PDCLAB_WARN_HIGH_PROBABILITY 0x8u
#define PDCLAB_WARN_UNDEFINED_ESTIMATE 0x10u

typedef struct pdclab_state pdclab_state;
typedef struct pdclab_sweep_spec pdclab_sweep_spec;
typedef struct pdclab_sweep_result pdclab_sweep_result;
typedef struct pdclab_identity_report pdclab_identity_report;

typedef struct pdclab_detection_config {
    double eta_a1;
    double eta_a2;
    double rep_rate_hz;
    double pump_amplitude;
    double duration_s;
    uint64_t seed;
} pdclab_detection_config;

/* Seconds. */
typedef struct pdclab_timing_budget {
    double delta_t_pulse_sep;
    double tau_pump;
    double tau_corr;
    double coincidence_window;
} pdclab_timing_budget;

typedef struct pdclab_timing_condition {
    char name[64];
    double ratio;
    double threshold;
    int passed;
} pdclab_timing_condition;

typedef struct pdclab_timing_report {
    pdclab_timing_condition conditions[3];
    size_t count;
    int all_passed;
} pdclab_timing_report;

typedef struct pdclab_count_record {
    uint64_t n_a1;
    uint64_t n_a2;
    uint64_t n_coinc;
    double duration_s;
    double rep_rate_hz;
} pdclab_count_record;

typedef struct pdclab_estimate {
    double k_hat;
    double k_sigma;
    double c_hat;
    double c_sigma;
    uint32_t flags;
} pdclab_estimate;

typedef struct pdclab_sweep_row {
    double theta1_deg;
    double theta2_deg;
    double k_theory;
    double c_theory;
    double c12_theory;
    uint64_t n_a1;
    uint64_t n_a2;
    uint64_t n_coinc;
    double k_est;
    double k_sigma;
    double c_est;
    double c_sigma;
    uint32_t warn_flags;
} pdclab_sweep_row;

PDCLAB_API const char* pdclab_version(void);
PDCLAB_API const char* pdclab_last_error(void);
PDCLAB_API const char* pdclab_status_string(pdclab_status status);

/* ---- states ---------------------------------------------------------- */

PDCLAB_API pdclab_status pdclab_state_psi2(const double* weights, size_t d, pdclab_state** out);
PDCLAB_API pdclab_status pdclab_state_psi4(const double* weights, size_t d, pdclab_state** out);
PDCLAB_API pdclab_status pdclab_state_truncated_source(const double* weights, size_t d, double pump_amplitude,
                                                       int truncation_order, pdclab_state** out);
PDCLAB_API pdclab_status pdclab_state_split(const pdclab_state* state, pdclab_state** out);
PDCLAB_API pdclab_status pdclab_state_coincidence(const pdclab_state* state, pdclab_state** out);
PDCLAB_API pdclab_status pdclab_state_norm2(const pdclab_state* state, double* out);
PDCLAB_API pdclab_status pdclab_state_inner(const pdclab_state* x, const pdclab_state* y, double* re, double* im);
PDCLAB_API pdclab_status pdclab_state_size(const pdclab_state* state, size_t* out);
PDCLAB_API void pdclab_state_destroy(pdclab_state* state);

/* ---- entanglement measures ------------------------------------------- */

/* out_weights receives 4 values ordered (V T1, H T1, V T2, H T2). */
PDCLAB_API pdclab_status pdclab_schmidt_from_angles_deg(double theta1_deg, double theta2_deg, double* out_weights);
PDCLAB_API pdclab_status pdclab_i_concurrence(const double* weights, size_t d, double* out);
PDCLAB_API pdclab_status pdclab_concurrence_via_projector(const double* weights, size_t d, double* out);
PDCLAB_API pdclab_status pdclab_max_i_concurrence(int d1, int d2, double* out);
PDCLAB_API pdclab_status pdclab_eq4_check(const double* weights, size_t d, double* two_copy, double* four_photon);
PDCLAB_API pdclab_status pdclab_sub_concurrence_c12_deg(double theta1_deg, double theta2_deg, double* out);

/* ---- counting model -------------------------------------------------- */

PDCLAB_API void pdclab_detection_config_default(pdclab_detection_config* out);
PDCLAB_API void pdclab_timing_budget_default(pdclab_timing_budget* out);
PDCLAB_API pdclab_status pdclab_coincidence_probability(const double* weights, size_t d,
                                                        const pdclab_detection_config* cfg, double* out);
PDCLAB_API pdclab_status pdclab_simulate_counts(const double* weights, size_t d, const pdclab_detection_config* cfg,
                                                pdclab_count_record* out);
PDCLAB_API pdclab_status pdclab_estimate_counts(const pdclab_count_record* record, pdclab_estimate* out);
PDCLAB_API pdclab_status pdclab_check_timing(const pdclab_timing_budget* budget, double separation_factor,
                                             pdclab_timing_report* out);

/* ---- sweeps ---------------------------------------------------------- */

PDCLAB_API pdclab_status pdclab_sweep_spec_create_default(pdclab_sweep_spec** out);
PDCLAB_API pdclab_status pdclab_sweep_spec_load(const char* path, pdclab_sweep_spec** out);
PDCLAB_API pdclab_status pdclab_sweep_spec_parse(const char* json_text, pdclab_sweep_spec** out);
PDCLAB_API pdclab_status pdclab_sweep_spec_set_seed(pdclab_sweep_spec* spec, uint64_t seed);
PDCLAB_API pdclab_status pdclab_sweep_spec_set_theta1_deg(pdclab_sweep_spec* spec, const double* angles, size_t n);
PDCLAB_API pdclab_status pdclab_sweep_spec_set_theta2_deg(pdclab_sweep_spec* spec, const double* angles, size_t n);
PDCLAB_API pdclab_status pdclab_sweep_spec_set_format(pdclab_sweep_spec* spec, pdclab_format format);
PDCLAB_API pdclab_status pdclab_sweep_spec_set_output_path(pdclab_sweep_spec* spec, const char* path);
/* *path points into the spec and is "" when unset. */
PDCLAB_API pdclab_status pdclab_sweep_spec_get_output(const pdclab_sweep_spec* spec, const char** path,
                                                      pdclab_format* format);
PDCLAB_API pdclab_status pdclab_sweep_spec_get_detection(const pdclab_sweep_spec* spec, pdclab_detection_config* out);
PDCLAB_API pdclab_status pdclab_sweep_spec_get_timing(const pdclab_sweep_spec* spec, pdclab_timing_budget* out);
PDCLAB_API void pdclab_sweep_spec_destroy(pdclab_sweep_spec* spec);

PDCLAB_API pdclab_status pdclab_sweep_run(const pdclab_sweep_spec* spec, pdclab_sweep_result** out);
PDCLAB_API pdclab_status pdclab_sweep_result_size(const pdclab_sweep_result* result, size_t* out);
PDCLAB_API pdclab_status pdclab_sweep_result_row(const pdclab_sweep_result* result, size_t index,
                                                 pdclab_sweep_row* out);
/* *text stays valid until the next render call on this result or its destruction. */
PDCLAB_API pdclab_status pdclab_sweep_result_render(pdclab_sweep_result* result, pdclab_format format,
                                                    const char** text);
PDCLAB_API pdclab_status pdclab_sweep_result_write(const pdclab_sweep_result* result, pdclab_format format,
                                                   const char* path);
PDCLAB_API void pdclab_sweep_result_destroy(pdclab_sweep_result* result);

/* ---- identity suite -------------------------------------------------- */

PDCLAB_API pdclab_status pdclab_identity_run(int max_d, uint64_t trials, uint64_t seed, pdclab_identity_report** out);
PDCLAB_API pdclab_status pdclab_identity_report_passed(const pdclab_identity_report* report, int* passed);
PDCLAB_API pdclab_status pdclab_identity_report_deviations(const pdclab_identity_report* report, double* eq4,
                                                           double* projector, double* coincidence);
/* *text points into the report. */
PDCLAB_API pdclab_status pdclab_identity_report_json(const pdclab_identity_report* report, const char** text);
PDCLAB_API void pdclab_identity_report_destroy(pdclab_identity_report* report);

PDCLAB_API pdclab_status pdclab_write_text(const char* path, const char* text);

#ifdef __cplusplus
}
#endif

#endif /* PDCLAB_H */
