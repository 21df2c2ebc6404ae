/*
 * qcoh: C interface to the coherence toolkit.
 *
 * Objects are opaque handles created by qcoh_*_create/load/run calls and
 * released with the matching qcoh_*_free. Every fallible call returns a
 * qcoh_status; on failure qcoh_last_error() describes the problem (the text
 * is per thread and valid until the next failing call on that thread).
 * Output pointers are written only on success.
 */
#ifndef QCOH_H
#define QCOH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QCOH_BUILDING)
#    define QCOH_API __declspec(dllexport)
#  else
#    define QCOH_API __declspec(dllimport)
#  endif
#else
#  define QCOH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcoh_status {
  QCOH_OK = 0,
  QCOH_ERR_NOT_HERMITIAN = 1,
  QCOH_ERR_TRACE_NOT_ONE = 2,
  QCOH_ERR_NOT_PSD = 3,
  QCOH_ERR_NOT_NORMALIZED = 4,
  QCOH_ERR_DIMENSION_NOT_2 = 5,
  QCOH_ERR_DIMENSION_MISMATCH = 6,
  QCOH_ERR_NOT_ISOMETRY = 7,
  QCOH_ERR_RANK_MISMATCH = 8,
  QCOH_ERR_NOT_A_PARTITION = 9,
  QCOH_ERR_NON_EXACT_MEASURE = 10,
  QCOH_ERR_TOO_LARGE = 11,
  QCOH_ERR_RATE_OUT_OF_RANGE = 12,
  QCOH_ERR_INVALID_ARGUMENT = 13,
  QCOH_ERR_PARSE = 14,
  QCOH_ERR_IO = 15,
  QCOH_ERR_NULL_POINTER = 16,
  QCOH_ERR_INTERNAL = 17
} qcoh_status;

QCOH_API const char* qcoh_status_name(qcoh_status status);
QCOH_API const char* qcoh_last_error(void);
QCOH_API const char* qcoh_version(void);
QCOH_API void qcoh_string_free(char* s);

/* ---- states ------------------------------------------------------------ */

typedef struct qcoh_state qcoh_state;

/* re_im holds 2*dim*dim doubles, row-major (re, im) pairs. */
QCOH_API qcoh_status qcoh_state_from_entries(size_t dim, const double* re_im, double tol, qcoh_state** out);
/* re_im holds 2*dim doubles. */
QCOH_API qcoh_status qcoh_state_from_amplitudes(size_t dim, const double* re_im, double tol, qcoh_state** out);
QCOH_API qcoh_status qcoh_state_from_bloch(double nx, double ny, double nz, qcoh_state** out);
/* Reads a JSON state file (entries, amplitudes or bloch form). */
QCOH_API qcoh_status qcoh_state_load(const char* path, double tol, qcoh_state** out);
QCOH_API qcoh_status qcoh_state_random(size_t dim, size_t rank, uint64_t seed, qcoh_state** out);
QCOH_API void qcoh_state_free(qcoh_state* state);

QCOH_API size_t qcoh_state_dim(const qcoh_state* state);
/* Nonzero when the state was given by amplitudes. */
QCOH_API int qcoh_state_is_pure(const qcoh_state* state);
QCOH_API qcoh_status qcoh_state_entries(const qcoh_state* state, double* re_im_out);
QCOH_API qcoh_status qcoh_state_bloch(const qcoh_state* state, double out[3]);
/* Caller frees *json_out with qcoh_string_free. */
QCOH_API qcoh_status qcoh_state_to_json(const qcoh_state* state, char** json_out);

/* ---- measures ---------------------------------------------------------- */

typedef enum qcoh_measure {
  QCOH_MEASURE_REL_ENT = 0,
  QCOH_MEASURE_L1 = 1,
  QCOH_MEASURE_ROOF = 2,           /* closed form on qubits, optimizer above */
  QCOH_MEASURE_QUBIT_ANALYTIC = 3
} qcoh_measure;

QCOH_API const char* qcoh_measure_name(qcoh_measure measure);
QCOH_API qcoh_status qcoh_measure_value(const qcoh_state* state, qcoh_measure measure, double* out);
QCOH_API qcoh_status qcoh_von_neumann_entropy(const qcoh_state* state, double* out);
/* Entropy of the diagonal; for pure states this is the randomness measure. */
QCOH_API qcoh_status qcoh_diagonal_entropy(const qcoh_state* state, double* out);
/* Qubit only: eigenvalue route and Bloch route. */
QCOH_API qcoh_status qcoh_concurrence(const qcoh_state* state, double* via_eigenvalues, double* via_bloch);

/* ---- convex roof ------------------------------------------------------- */

typedef struct qcoh_roof_config {
  size_t ensemble_size; /* 0 selects rank^2 */
  size_t restarts;
  size_t max_iterations;
  double tolerance;
  uint64_t seed;
} qcoh_roof_config;

typedef struct qcoh_roof_result qcoh_roof_result;

QCOH_API void qcoh_roof_config_default(qcoh_roof_config* config);
QCOH_API qcoh_status qcoh_roof_optimize(const qcoh_state* state, const qcoh_roof_config* config, qcoh_roof_result** out);
QCOH_API double qcoh_roof_value(const qcoh_roof_result* result);
QCOH_API int qcoh_roof_converged(const qcoh_roof_result* result);
QCOH_API size_t qcoh_roof_restarts_used(const qcoh_roof_result* result);
QCOH_API size_t qcoh_roof_element_count(const qcoh_roof_result* result);
/* amplitudes_re_im receives 2*dim doubles. */
QCOH_API qcoh_status qcoh_roof_element(const qcoh_roof_result* result, size_t index, double* weight, double* amplitudes_re_im);
QCOH_API qcoh_status qcoh_roof_decomposition_json(const qcoh_roof_result* result, char** json_out);
QCOH_API void qcoh_roof_result_free(qcoh_roof_result* result);

QCOH_API qcoh_status qcoh_roof_brute_force_qubit(const qcoh_state* state, size_t grid_n, double* out);
QCOH_API qcoh_status qcoh_regularized_roof(const qcoh_state* state, size_t copies, const qcoh_roof_config* config, double* out);

/* ---- property suite ---------------------------------------------------- */

typedef struct qcoh_verify_config {
  size_t max_dim;
  size_t samples;
  uint64_t seed;
  unsigned measure_mask; /* bit (1u << qcoh_measure) per measure */
} qcoh_verify_config;

typedef struct qcoh_property_report {
  const char* property; /* "C1", "C1'", "C2a", "C2b", "C3" */
  qcoh_measure measure;
  int passed;
  double worst_slack;
  size_t cases;
  const char* witness; /* empty on pass */
} qcoh_property_report;

typedef struct qcoh_property_suite qcoh_property_suite;

QCOH_API void qcoh_verify_config_default(qcoh_verify_config* config);
QCOH_API qcoh_status qcoh_verify_run(const qcoh_verify_config* config, qcoh_property_suite** out);
QCOH_API size_t qcoh_property_suite_count(const qcoh_property_suite* suite);
/* Strings in *out stay valid until the suite is freed. */
QCOH_API qcoh_status qcoh_property_suite_get(const qcoh_property_suite* suite, size_t index, qcoh_property_report* out);
QCOH_API int qcoh_property_suite_passed(const qcoh_property_suite* suite);
QCOH_API void qcoh_property_suite_free(qcoh_property_suite* suite);

/* ---- distillation ------------------------------------------------------ */

typedef struct qcoh_distill_summary {
  size_t n;
  size_t m;
  double input_randomness;
  double total_log2_dim;
  size_t extracted;
  double yield;
  double loss_actual;
  double loss_bound;
  int loss_within_bound;
  int exact;                           /* state-vector mode */
  double exact_probability_deviation;  /* exact mode only */
  double exact_flatness_deviation;     /* exact mode only */
} qcoh_distill_summary;

typedef struct qcoh_distill_report qcoh_distill_report;

QCOH_API qcoh_status qcoh_binomial_outcomes(size_t n, double p0, double* probabilities, double* log2_dims);
QCOH_API qcoh_status qcoh_distill_simulate(const qcoh_state* psi, size_t n, size_t m, uint64_t seed, qcoh_distill_report** out);
/* State-vector mode; fails with QCOH_ERR_TOO_LARGE when n > 20. */
QCOH_API qcoh_status qcoh_distill_exact(const qcoh_state* psi, size_t n, size_t m, uint64_t seed, qcoh_distill_report** out);
QCOH_API qcoh_status qcoh_distill_summary_get(const qcoh_distill_report* report, qcoh_distill_summary* out);
QCOH_API size_t qcoh_distill_group_count(const qcoh_distill_report* report);
QCOH_API qcoh_status qcoh_distill_group(const qcoh_distill_report* report, size_t index, size_t* k, double* probability, double* log2_dim);
QCOH_API void qcoh_distill_report_free(qcoh_distill_report* report);

/* ---- randomness pipeline ----------------------------------------------- */

typedef struct qcoh_stream qcoh_stream;

typedef struct qcoh_extraction_report {
  size_t input_length;
  size_t output_length;
  double target_rate;
  double monobit_z;
} qcoh_extraction_report;

typedef struct qcoh_pipeline_options {
  double margin;
  int use_min_entropy;
} qcoh_pipeline_options;

typedef struct qcoh_pipeline_record {
  size_t input_symbols;
  double target_entropy;
  double extraction_rate;
  size_t extract_bits;
  double extract_monobit_z;
  size_t distill_bits;
  double distill_monobit_z;
  double relative_gap;
  int lengths_agree;
} qcoh_pipeline_record;

QCOH_API qcoh_status qcoh_sample_measurement(const qcoh_state* psi, size_t n, uint64_t seed, qcoh_stream** out);
/* Path "-" reads stdin / writes stdout. */
QCOH_API qcoh_status qcoh_stream_read(const char* path, qcoh_stream** out);
QCOH_API qcoh_status qcoh_stream_write(const qcoh_stream* stream, const char* path);
QCOH_API size_t qcoh_stream_length(const qcoh_stream* stream);
QCOH_API size_t qcoh_stream_dim(const qcoh_stream* stream);
QCOH_API uint64_t qcoh_stream_seed(const qcoh_stream* stream);
QCOH_API qcoh_status qcoh_stream_symbols(const qcoh_stream* stream, uint32_t* out);
QCOH_API qcoh_status qcoh_stream_entropy(const qcoh_stream* stream, double* out);
QCOH_API qcoh_status qcoh_toeplitz_extract(const qcoh_stream* bits, double rate, uint64_t seed, qcoh_stream** out,
                                           qcoh_extraction_report* report);
QCOH_API void qcoh_stream_free(qcoh_stream* stream);

QCOH_API void qcoh_pipeline_options_default(qcoh_pipeline_options* options);
QCOH_API qcoh_status qcoh_pipeline_compare(const qcoh_state* psi, size_t n_groups, size_t group_n, uint64_t seed,
                                           const qcoh_pipeline_options* options, qcoh_pipeline_record* out);

#ifdef __cplusplus
}
#endif

#endif /* QCOH_H */
