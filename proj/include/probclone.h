/*
 * probclone C API.
 *
 * Opaque handles own C++ objects; every handle returned through an out
 * parameter must be released with the matching *_free function.  Functions
 * return a pclone_status; on failure pclone_last_error() describes the
 * problem (the message is thread-local and valid until the next call on the
 * same thread).
 *
 * Complex data crosses the boundary as interleaved (re, im) doubles, so a
 * vector of dimension n occupies 2n doubles and an R x C matrix 2RC doubles
 * in row-major order.
 */
#ifndef PROBCLONE_H
#define PROBCLONE_H

#include <stddef.h>
#include <stdint.h>

#if defined(PROBCLONE_BUILDING_LIBRARY)
#define PROBCLONE_API __attribute__((visibility("default")))
#else
#define PROBCLONE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as process exit codes for the command-line tool. */
typedef enum pclone_status {
  PCLONE_OK = 0,
  PCLONE_ERR_USAGE = 1,     /* malformed input or invalid argument */
  PCLONE_ERR_DOMAIN = 2,    /* mathematical precondition violated */
  PCLONE_ERR_VERIFY = 3,    /* a verification check failed */
  PCLONE_ERR_DIMENSION = 4, /* operand dimensions disagree */
  PCLONE_ERR_INTERNAL = 5   /* numerical failure or unexpected error */
} pclone_status;

typedef struct pclone_state pclone_state;
typedef struct pclone_machine pclone_machine;

PROBCLONE_API const char* pclone_version(void);
PROBCLONE_API const char* pclone_generator_id(void);
PROBCLONE_API const char* pclone_last_error(void);
PROBCLONE_API const char* pclone_status_name(pclone_status status);
PROBCLONE_API void pclone_string_free(char* text);

/* ---- states ------------------------------------------------------------ */

/* renormalize != 0 rescales any nonzero vector; otherwise the amplitudes
 * must already have unit norm within 1e-12. */
PROBCLONE_API pclone_status pclone_state_create(const double* re_im, size_t dim, int renormalize,
                                                pclone_state** out);
/* State-file JSON.  *warning (optional) receives a message to free with
 * pclone_string_free when the amplitudes were renormalized, else NULL. */
PROBCLONE_API pclone_status pclone_state_parse_json(const char* text, pclone_state** out,
                                                    char** warning);
PROBCLONE_API pclone_status pclone_state_read_file(const char* path, pclone_state** out,
                                                   char** warning);
PROBCLONE_API size_t pclone_state_dim(const pclone_state* state);
PROBCLONE_API pclone_status pclone_state_amplitudes(const pclone_state* state, double* re_im,
                                                    size_t capacity);
PROBCLONE_API void pclone_state_free(pclone_state* state);

/* ---- machines ---------------------------------------------------------- */

/* sigma and phi_ab may be NULL for the defaults |0> and |00>. */
PROBCLONE_API pclone_status pclone_machine_build(const pclone_state* psi0, const pclone_state* psi1,
                                                 const pclone_state* sigma,
                                                 const pclone_state* phi_ab, pclone_machine** out);
PROBCLONE_API pclone_status pclone_machine_parse_json(const char* text, pclone_machine** out);
PROBCLONE_API pclone_status pclone_machine_read_file(const char* path, pclone_machine** out);
PROBCLONE_API pclone_status pclone_machine_to_json(const pclone_machine* machine, char** out);
PROBCLONE_API void pclone_machine_free(pclone_machine* machine);

typedef struct pclone_machine_info {
  size_t system_dim; /* n; the operator acts on n*n*2 levels */
  size_t total_dim;
  double overlap_s;
  double rephase_angle;
  double eta;
  double a00, a01, a10, a11;
  double unitarity_residual;
} pclone_machine_info;

PROBCLONE_API pclone_status pclone_machine_get_info(const pclone_machine* machine,
                                                    pclone_machine_info* out);
/* Copies the operator (total_dim^2 complex entries, row-major). */
PROBCLONE_API pclone_status pclone_machine_unitary(const pclone_machine* machine, double* re_im,
                                                   size_t capacity);
/* 0 -> psi0, 1 -> psi1 (rephased).  Caller frees the returned state. */
PROBCLONE_API pclone_status pclone_machine_designated(const pclone_machine* machine, int label,
                                                      pclone_state** out);

typedef struct pclone_clone_outcome {
  double probability;    /* probability of the success flag */
  double clone_fidelity; /* |<in in|post>| on success, 0 if impossible */
} pclone_clone_outcome;

PROBCLONE_API pclone_status pclone_machine_postselect(const pclone_machine* machine,
                                                      const pclone_state* input,
                                                      pclone_clone_outcome* out);

/* ---- simulation -------------------------------------------------------- */

typedef struct pclone_sim_report {
  uint64_t seed;
  uint64_t shots;
  int input_label;
  uint64_t successes;
  double empirical_eta;
  double analytic_eta;
  double z_score;
  double mean_clone_fidelity;
} pclone_sim_report;

/* threads == 0 is treated as 1.  The report does not depend on threads. */
PROBCLONE_API pclone_status pclone_simulate(const pclone_machine* machine, int input_label,
                                            uint64_t shots, uint64_t seed, unsigned threads,
                                            pclone_sim_report* out);

typedef struct pclone_filter_report {
  double fidelity_before;
  double fidelity_after;
  double keep_probability_psi0;
  double keep_probability_psi1;
  int monotonicity_violated;
} pclone_filter_report;

PROBCLONE_API pclone_status pclone_filter_demo(pclone_filter_report* out);

/* ---- bounds ------------------------------------------------------------ */

PROBCLONE_API pclone_status pclone_universal_bound(double overlap_s, double* out);
PROBCLONE_API pclone_status pclone_mean_efficiency_bound(double overlap_s, double flag_overlap,
                                                         double* out);
PROBCLONE_API pclone_status pclone_check_no_perfect_cloning(double overlap_s, double eta0,
                                                            double eta1, double flag_overlap,
                                                            int* out);

typedef struct pclone_bound_analysis {
  double eta0, eta1;
  double flag_overlap_re, flag_overlap_im;
  double overlap_re, overlap_im;
  double residual0, residual1;
  double orthogonality_violation;
  double residual_overlap_re, residual_overlap_im;
  double inner_product_lhs, inner_product_lhs_imag, inner_product_rhs;
  double mean_eta, mean_bound, universal_limit;
  int saturated;
} pclone_bound_analysis;

/* ---- verification ------------------------------------------------------ */

typedef struct pclone_verify_tolerances {
  double unitarity;     /* 1e-10 */
  double gram;          /* 1e-9 */
  double mapping;       /* 1e-9 */
  double eta;           /* 1e-10 */
  double orthogonality; /* 1e-9 */
  double saturation;    /* 1e-9 */
  double golden;        /* 1e-10 */
} pclone_verify_tolerances;

typedef struct pclone_verify_report {
  double unitarity_residual;
  double gram_norm0_delta, gram_norm1_delta, gram_cross_delta;
  double mapping_residual;
  double eta_deviation;
  pclone_bound_analysis bounds;
  int golden_checked;
  double golden_residual;
  int passed;
  /* comma-separated names of failing checks, empty when passed */
  char failed_checks[256];
} pclone_verify_report;

PROBCLONE_API void pclone_verify_default_tolerances(pclone_verify_tolerances* out);
/* Returns PCLONE_ERR_VERIFY (with *out filled) when any check fails.
 * tolerances may be NULL for the defaults. */
PROBCLONE_API pclone_status pclone_verify(const pclone_machine* machine,
                                          const pclone_verify_tolerances* tolerances,
                                          pclone_verify_report* out);

#ifdef __cplusplus
}
#endif

#endif /* PROBCLONE_H */
