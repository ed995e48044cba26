/* C interface to the GKP state-preparation library.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function. Functions report failure through a
 * gkp_status and leave a thread-local message for gkp_last_error_message().
 * Strings returned through char** must be released with gkp_string_free().
 */
#ifndef GKP_GKP_H
#define GKP_GKP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GKP_BUILDING_LIBRARY)
#    define GKP_API __declspec(dllexport)
#  else
#    define GKP_API __declspec(dllimport)
#  endif
#else
#  define GKP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gkp_status {
    GKP_OK = 0,
    GKP_ERR_DOMAIN = 1,
    GKP_ERR_ALIGNMENT = 2,
    GKP_ERR_TRUNCATION = 3,
    GKP_ERR_DEGENERATE = 4,
    GKP_ERR_INVALID_ARGUMENT = 5,
    GKP_ERR_PARSE = 6,
    GKP_ERR_INTERNAL = 7
} gkp_status;

typedef enum gkp_axis { GKP_POSITION = 0, GKP_MOMENTUM = 1 } gkp_axis;
typedef enum gkp_mode { GKP_POSTSELECT = 0, GKP_DETERMINISTIC = 1, GKP_SAMPLE = 2 } gkp_mode;
typedef enum gkp_format { GKP_FORMAT_JSON = 0, GKP_FORMAT_TEXT = 1 } gkp_format;

typedef struct gkp_comb gkp_comb;
typedef struct gkp_grid gkp_grid;
typedef struct gkp_records gkp_records;
typedef struct gkp_schedule gkp_schedule;
typedef struct gkp_rng gkp_rng;

typedef struct gkp_prep_config {
    double alpha;
    double delta;
    int iterations;
    int bit;
    gkp_axis axis;
    gkp_mode mode;
    uint64_t seed;
} gkp_prep_config;

typedef struct gkp_grid_spec {
    gkp_axis axis;
    double origin;
    double spacing;
    size_t size;
} gkp_grid_spec;

typedef struct gkp_error_report {
    double alpha;
    double delta;
    int iterations;
    double position_error;
    double position_bound;
    double momentum_error;
    double momentum_bound;
    double overlap01;
    double mean_energy;
} gkp_error_report;

typedef struct gkp_recovery_config {
    double alpha;
    double delta;          /* width of prepared ancillas */
    gkp_axis quadrature;   /* which shift is corrected */
    int cells_per_alpha;
    size_t encoded_size;   /* 0 picks the smallest window that fits */
    size_t ancilla_size;
} gkp_recovery_config;

typedef struct gkp_recovery_result {
    double measured;
    double estimate;
    double correction;
    double fidelity;
    double true_shift;
    double residual_shift;
    int logical_failure;
} gkp_recovery_result;

/* Library and error reporting */
GKP_API const char* gkp_version(void);
GKP_API const char* gkp_last_error_message(void);
GKP_API void gkp_string_free(char* text);

/* "sqrt(pi/2)", "sqrt(pi)" or a decimal number. */
GKP_API gkp_status gkp_parse_alpha(const char* text, double* out);

/* Protocol */
GKP_API void gkp_prep_config_default(gkp_prep_config* config);
/* Postselect and sample modes give one record, deterministic mode all 2^n. */
GKP_API gkp_status gkp_prepare(const gkp_prep_config* config, gkp_records** out);
GKP_API gkp_status gkp_run_outcomes(const gkp_prep_config* config, const int* bits, size_t count,
                                    gkp_records** out);
GKP_API size_t gkp_records_count(const gkp_records* records);
GKP_API gkp_status gkp_records_info(const gkp_records* records, size_t index, double* probability,
                                    double* normalization, int* bits, size_t bits_capacity, size_t* bit_count);
GKP_API gkp_status gkp_records_state(const gkp_records* records, size_t index, gkp_comb** out);
GKP_API void gkp_records_free(gkp_records* records);

/* Comb states */
GKP_API gkp_status gkp_squeezed_vacuum(double width, gkp_axis axis, gkp_comb** out);
GKP_API gkp_status gkp_comb_displace(const gkp_comb* comb, double amount, gkp_axis axis, gkp_comb** out);
GKP_API size_t gkp_comb_peak_count(const gkp_comb* comb);
GKP_API gkp_status gkp_comb_peaks(const gkp_comb* comb, double* centers, double* re, double* im, size_t capacity);
GKP_API double gkp_comb_width(const gkp_comb* comb);
GKP_API gkp_status gkp_comb_overlap(const gkp_comb* a, const gkp_comb* b, double* re, double* im);
GKP_API gkp_status gkp_comb_eval(const gkp_comb* comb, double x, gkp_axis axis, double* re, double* im);
GKP_API gkp_status gkp_comb_to_json(const gkp_comb* comb, char** out);
GKP_API gkp_status gkp_comb_from_json(const char* json, gkp_comb** out);
GKP_API gkp_status gkp_encode_superposition(double re0, double im0, double re1, double im1,
                                            const gkp_prep_config* config, gkp_comb** out);
GKP_API void gkp_comb_free(gkp_comb* comb);

/* Grids */
GKP_API gkp_status gkp_default_grid(double alpha, int iterations, gkp_axis axis, gkp_grid_spec* out);
GKP_API gkp_status gkp_comb_to_grid(const gkp_comb* comb, const gkp_grid_spec* spec, gkp_grid** out);
/* Dual grid with the default origin. */
GKP_API gkp_status gkp_grid_fourier(const gkp_grid* grid, gkp_grid** out);
GKP_API gkp_status gkp_grid_spec_of(const gkp_grid* grid, gkp_grid_spec* out);
GKP_API gkp_status gkp_grid_amplitudes(const gkp_grid* grid, double* re, double* im, size_t capacity);
GKP_API gkp_status gkp_grid_to_csv(const gkp_grid* grid, char** out);
GKP_API gkp_status gkp_grid_to_json(const gkp_grid* grid, char** out);
GKP_API void gkp_grid_free(gkp_grid* grid);

/* Analysis */
GKP_API gkp_status gkp_analyze(double alpha, double delta, int iterations, gkp_error_report* out);
GKP_API gkp_status gkp_erf_tail(double x, double* exact, double* asymptotic, double* fitted_c);

/* Recovery */
GKP_API gkp_status gkp_rng_create(uint64_t seed, gkp_rng** out);
/* Uniform on [0, 1) with 53 random bits. */
GKP_API double gkp_rng_uniform(gkp_rng* rng);
GKP_API void gkp_rng_free(gkp_rng* rng);
GKP_API void gkp_recovery_config_default(gkp_recovery_config* config);
/* ancilla: "ideal" or "bits:<pattern>". corrected may be NULL. */
GKP_API gkp_status gkp_recover(const gkp_comb* encoded, double shift_q, double shift_p, const char* ancilla,
                               const gkp_recovery_config* config, gkp_rng* rng, gkp_recovery_result* out,
                               gkp_grid** corrected);

/* Ion-trap schedules */
GKP_API gkp_status gkp_compile(const gkp_prep_config* config, gkp_schedule** out);
GKP_API size_t gkp_schedule_op_count(const gkp_schedule* schedule);
/* Violations joined by newlines; empty string when valid. */
GKP_API gkp_status gkp_schedule_validate(const gkp_schedule* schedule, char** violations, size_t* count);
GKP_API gkp_status gkp_schedule_emit(const gkp_schedule* schedule, gkp_format format, char** out);
GKP_API gkp_status gkp_schedule_parse(const char* json, gkp_schedule** out);
GKP_API gkp_status gkp_schedule_interpret(const gkp_schedule* schedule, const int* bits, size_t count,
                                          gkp_records** out);
GKP_API void gkp_schedule_free(gkp_schedule* schedule);

#ifdef __cplusplus
}
#endif

#endif /* GKP_GKP_H */
