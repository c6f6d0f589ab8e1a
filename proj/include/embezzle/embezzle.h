/*
 * embezzle: C interface to the embezzlement library.
 *
 * Every call returns an emb_status. On failure a human-readable message is
 * available from emb_last_error() on the same thread until the next call.
 * Objects are opaque handles released with the matching *_free function;
 * passing NULL to a *_free function is a no-op.
 */
#ifndef EMBEZZLE_H
#define EMBEZZLE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EMBEZZLE_BUILDING)
#    define EMB_API __declspec(dllexport)
#  else
#    define EMB_API __declspec(dllimport)
#  endif
#else
#  define EMB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum emb_status {
  EMB_OK = 0,
  EMB_ERR_INVALID_ARGUMENT = 1,
  EMB_ERR_NORMALIZATION = 2,
  EMB_ERR_SIZE_LIMIT = 3,
  EMB_ERR_UNDEFINED_BOUND = 4,
  EMB_ERR_PARSE = 5,
  EMB_ERR_IO = 6,
  EMB_ERR_INVARIANT = 7,
  EMB_ERR_NULL_POINTER = 8,
  EMB_ERR_BUFFER_TOO_SMALL = 9,
  EMB_ERR_INTERNAL = 10
} emb_status;

typedef enum emb_format { EMB_FORMAT_CSV = 0, EMB_FORMAT_JSONL = 1 } emb_format;

/* A bipartite pure state in Schmidt form, plus its reduced spectrum. */
typedef struct emb_state emb_state;
typedef struct emb_selftest emb_selftest;

typedef struct emb_report {
  uint64_t n;
  uint64_t m;
  int exact; /* 0: n above the exact limit, stream fields are NaN */
  double fidelity;
  double eq4_bound;
  double sum_omega_sq;
  double delta;
  double eq6_bound;
  double fannes_floor;
  int fannes_saturated;
  double target_entropy_bits;
  double epsilon_implied;
} emb_report;

typedef struct emb_trump_result {
  int trumped;   /* y (x) c majorizes x (x) c */
  int majorized; /* y majorizes x without a catalyst */
  size_t majorization_witness; /* first failing prefix (1-based), 0 if none */
  size_t trumping_witness;     /* same for the catalysed comparison */
} emb_trump_result;

typedef struct emb_min_rank {
  int fits;         /* 0 when n does not fit in 63 bits */
  uint64_t n;       /* smallest n > m^(1/epsilon) */
  uint64_t qubit_pairs;
} emb_min_rank;

EMB_API const char* emb_version(void);
EMB_API const char* emb_last_error(void);
EMB_API const char* emb_status_name(emb_status status);

/* ---- states ---------------------------------------------------------- */

EMB_API emb_status emb_state_from_coeffs(const double* coeffs, size_t len, emb_state** out);
EMB_API emb_status emb_state_from_probabilities(const double* probs, size_t len, emb_state** out);
/* entries: rows*cols interleaved (re, im) pairs, row-major. */
EMB_API emb_status emb_state_from_amplitudes(size_t rows, size_t cols, const double* entries,
                                             emb_state** out);
/* renormalized (may be NULL) is set to 1 when the file was rescaled. */
EMB_API emb_status emb_state_load(const char* path, emb_state** out, int* renormalized);
EMB_API emb_status emb_state_save(const emb_state* state, const char* path);
EMB_API emb_status emb_maximally_entangled(uint64_t m, emb_state** out);
EMB_API emb_status emb_build_embezzler(uint64_t n, emb_state** out);
EMB_API emb_status emb_tensor(const emb_state* a, const emb_state* b, emb_state** out);
EMB_API void emb_state_free(emb_state* state);

EMB_API size_t emb_state_rank(const emb_state* state);
/* Copies min(cap, rank) values; *len receives the rank. */
EMB_API emb_status emb_state_coeffs(const emb_state* state, double* out, size_t cap, size_t* len);
EMB_API emb_status emb_state_spectrum(const emb_state* state, double* out, size_t cap,
                                      size_t* len);

EMB_API emb_status emb_overlap_fidelity(const emb_state* a, const emb_state* b, double* out);
EMB_API emb_status emb_entropy_bits(const emb_state* state, double* out);
EMB_API emb_status emb_trace_distance(const emb_state* p, const emb_state* q, double* out);
EMB_API emb_status emb_majorizes(const emb_state* x, const emb_state* y, int* out);
EMB_API emb_status emb_trump(const emb_state* x, const emb_state* y, const emb_state* catalyst,
                             emb_trump_result* out);

/* ---- embezzlement ---------------------------------------------------- */

EMB_API emb_status emb_harmonic_number(uint64_t n, double* out);
/* Writes the k largest coefficients of mu(n) (x) target into out[0..k). */
EMB_API emb_status emb_omega_top_k(uint64_t n, const emb_state* target, uint64_t k, double* out);
EMB_API emb_status emb_protocol_fidelity(uint64_t n, const emb_state* target, double* out);
EMB_API emb_status emb_sum_omega_sq(uint64_t n, const emb_state* target, double* out);
EMB_API emb_status emb_protocol_delta(uint64_t n, const emb_state* target, double* out);
EMB_API emb_status emb_fidelity_lower_bound(uint64_t n, uint64_t m, double* out);
EMB_API emb_status emb_delta_upper_bound(uint64_t n, uint64_t m, double* out);
EMB_API emb_status emb_min_rank_for(double epsilon, uint64_t m, emb_min_rank* out);
EMB_API emb_status emb_eta(double delta, double* out);
EMB_API emb_status emb_fannes_min_delta(double entropy_bits, uint64_t m, uint64_t n, double* out,
                                        int* saturated);

EMB_API emb_status emb_bound_report(uint64_t n, const emb_state* target, emb_report* out);
/* EMB_ERR_INVARIANT when a report invariant fails; the violated names are
 * written comma-separated into names (may be NULL). */
EMB_API emb_status emb_report_check(const emb_report* report, char* names, size_t cap);
/* JSON object for the report, NUL-terminated. *len receives the length
 * without the terminator even when cap is too small. */
EMB_API emb_status emb_report_json(const emb_report* report, char* out, size_t cap, size_t* len);

/* ---- sweeps ---------------------------------------------------------- */

EMB_API emb_status emb_geometric_n_values(uint64_t start, uint64_t factor, uint64_t count,
                                          uint64_t* out);
/* threads = 0 uses every hardware thread. No file remains on failure. */
EMB_API emb_status emb_sweep_write(const emb_state* target, const uint64_t* n_values,
                                   size_t count, emb_format format, const char* path,
                                   unsigned threads);
/* rows receives the data-row count; first failure is reported via
 * emb_last_error() with EMB_ERR_INVARIANT. */
EMB_API emb_status emb_sweep_validate_csv(const char* path, size_t* rows);

/* ---- self-test ------------------------------------------------------- */

EMB_API uint64_t emb_selftest_default_seed(void);
/* fault_omega_scale must be 1.0 outside fault-injection tests. */
EMB_API emb_status emb_selftest_run(uint64_t seed, double fault_omega_scale, emb_selftest** out);
EMB_API size_t emb_selftest_count(const emb_selftest* st);
EMB_API emb_status emb_selftest_entry(const emb_selftest* st, size_t index, const char** name,
                                      uint64_t* checks, uint64_t* failures,
                                      const char** first_failure);
EMB_API int emb_selftest_passed(const emb_selftest* st);
EMB_API void emb_selftest_free(emb_selftest* st);

#ifdef __cplusplus
}
#endif

#endif
