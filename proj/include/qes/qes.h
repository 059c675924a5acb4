#ifndef QES_QES_H
#define QES_QES_H

#include <stddef.h>
#include <stdint.h>

#if defined(QES_BUILDING_LIBRARY)
#define QES_API __attribute__((visibility("default")))
#else
#define QES_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qes_status {
  QES_OK = 0,
  QES_INVALID_ARGUMENT = 1,
  QES_DIVISION_BY_ZERO = 2,
  QES_INCOMPATIBLE_FIELD = 3,
  QES_SPACE_NOT_PRESERVED = 4,
  QES_NOT_HEUN_OPERATOR = 5,
  QES_NOT_ALGEBRAIZABLE = 6,
  QES_WRONG_LEADING_SHAPE = 7,
  QES_DECOUPLED_MODEL = 8,
  QES_COUPLING_OUT_OF_RANGE = 9,
  QES_ZERO_COUPLING = 10,
  QES_NOT_AN_EIGENVALUE = 11,
  QES_TRUNCATION_TOO_SMALL = 12,
  QES_NUMERICAL_FAILURE = 13,
  QES_INPUT_OUT_OF_VALIDATED_RANGE = 14,
  QES_INVALID_RANGE = 15,
  QES_BUFFER_TOO_SMALL = 100,
  QES_INTERNAL_ERROR = 101
} qes_status;

typedef enum qes_model_kind { QES_MODEL_RABI = 0, QES_MODEL_TWO_PHOTON = 1, QES_MODEL_TWO_MODE = 2 } qes_model_kind;

/* Gauge branch e^{-gz/omega} (MINUS) or e^{+gz/omega} (PLUS); only Rabi has PLUS. */
typedef enum qes_branch { QES_BRANCH_MINUS = 0, QES_BRANCH_PLUS = 1 } qes_branch;

/* Parameters as decimal or p/q strings ("3/10", "0.3"), read exactly unless
 * `floating` is set. NULL means omega = 1, the others 0, and no Bargmann index. */
typedef struct qes_model_spec {
  qes_model_kind kind;
  qes_branch branch;
  const char* omega;
  const char* coupling;
  const char* level_splitting;
  const char* drive;
  const char* bargmann_index;
  int floating;
} qes_model_spec;

typedef struct qes_model qes_model;
typedef struct qes_constraint qes_constraint;
typedef struct qes_sweep qes_sweep;

QES_API const char* qes_version(void);
QES_API const char* qes_status_name(qes_status status);
/* Message of the last failure on the calling thread; empty after success. */
QES_API const char* qes_last_error(void);
/* Frees strings returned through char** out-parameters. */
QES_API void qes_string_free(char* s);

QES_API qes_status qes_model_create(const qes_model_spec* spec, qes_model** out);
QES_API void qes_model_destroy(qes_model* model);

/* E_n as canonical exact text (NULL allowed) and as a double (NULL allowed). */
QES_API qes_status qes_exceptional_energy(const qes_model* model, unsigned n, char** exact, double* value);

/* Monic characteristic polynomial of the restricted model operator at E_n. */
QES_API qes_status qes_constraint_create(const qes_model* model, unsigned n, qes_constraint** out);
QES_API void qes_constraint_destroy(qes_constraint* c);
QES_API size_t qes_constraint_degree(const qes_constraint* c);
/* +1 when the roots are Delta^2, -1 when they are -Delta^2. */
QES_API int qes_constraint_target_sign(const qes_constraint* c);
QES_API qes_status qes_constraint_coefficient(const qes_constraint* c, size_t k, char** exact, double* value);

typedef struct qes_root {
  double re;
  double im;
  unsigned multiplicity;
  int is_exact;
} qes_root;

QES_API size_t qes_constraint_root_count(const qes_constraint* c);
/* `exact` receives the canonical text of exact roots, NULL otherwise. */
QES_API qes_status qes_constraint_root(const qes_constraint* c, size_t i, qes_root* out, char** exact);
/* First eigenpolynomial for exact root i, and the companion component when
 * Delta != 0 is representable (else *companion = NULL). */
QES_API qes_status qes_constraint_eigenpolynomial(const qes_constraint* c, size_t i, char** phi, char** companion,
                                                  unsigned* kernel_dim);
/* Runs the eigenpolynomial construction for every exact root; *all_zero is 1
 * when every residual is the zero polynomial. */
QES_API qes_status qes_constraint_verify_roots(const qes_constraint* c, int* all_zero, size_t* solutions);

typedef struct qes_point {
  double g;
  double energy;
} qes_point;

/* Couplings in [lo, hi] with an eigenfunction of degree n at this Delta. The
 * model's own coupling is ignored. QES_BUFFER_TOO_SMALL sets *count to the
 * required size. */
QES_API qes_status qes_exceptional_points(const qes_model* model, unsigned n, double delta, double lo, double hi,
                                          unsigned grid, unsigned jobs, qes_point* out, size_t capacity,
                                          size_t* count);

typedef enum qes_verdict { QES_CONVERGED = 0, QES_NOT_FOUND = 1, QES_NOT_CONVERGED = 2 } qes_verdict;

typedef struct qes_oracle_result {
  qes_verdict verdict;
  double energy;
  unsigned truncation;
} qes_oracle_result;

typedef struct qes_oracle_step {
  unsigned truncation;
  double nearest;
  double distance;
} qes_oracle_step;

/* `steps` may be NULL, otherwise it receives `length` entries. */
QES_API qes_status qes_oracle_locate(const qes_model* model, double target, const unsigned* schedule, size_t length,
                                     double tol, unsigned jobs, qes_oracle_result* result, qes_oracle_step* steps);

QES_API qes_status qes_fock_spectrum(const qes_model* model, unsigned truncation, double* out, size_t capacity,
                                     size_t* count);
QES_API qes_status qes_fock_dump(const qes_model* model, unsigned truncation, const char* path);

typedef struct qes_sweep_spec {
  double g_min;
  double g_max;
  unsigned points;
  unsigned truncation;
  unsigned levels;
  unsigned n_min;
  unsigned n_max;
  unsigned marker_grid;
  unsigned jobs;
} qes_sweep_spec;

QES_API qes_status qes_sweep_run(const qes_model* model, const qes_sweep_spec* spec, qes_sweep** out);
QES_API void qes_sweep_destroy(qes_sweep* s);
QES_API size_t qes_sweep_level_count(const qes_sweep* s);
QES_API qes_status qes_sweep_level(const qes_sweep* s, size_t i, double* g, unsigned* level, double* energy);
QES_API size_t qes_sweep_marker_count(const qes_sweep* s);
QES_API qes_status qes_sweep_marker(const qes_sweep* s, size_t i, double* g, unsigned* n, double* energy);

/* Suite: sl2, proposition, identities, elimination, quartic, su11,
 * algebraization or all. `models` may be NULL when count is 0. The report is a
 * JSON array of {suite, identity, params, passed, counterexample, note}. */
QES_API qes_status qes_verify(const char* suite, const qes_model* const* models, size_t model_count, unsigned n_min,
                              unsigned n_max, uint64_t seed, char** report_json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
