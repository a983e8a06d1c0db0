#ifndef QDEFORM_H
#define QDEFORM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdStatus {
  QD_STATUS_OK = 0,
  QD_STATUS_NULL_POINTER = 1,
  QD_STATUS_INVALID_UTF8 = 2,
  QD_STATUS_PARSE = 3,
  QD_STATUS_INVALID_ARGUMENT = 4,
  QD_STATUS_STRUCTURAL = 5,
  QD_STATUS_NUMERIC = 6,
  QD_STATUS_PANIC = 7,
} QdStatus;

typedef enum QdStateKind {
  QD_STATE_KIND_FOCK = 0,
  QD_STATE_KIND_GAUSSIAN = 1,
  QD_STATE_KIND_TEMPERATURE = 2,
} QdStateKind;

typedef enum QdDispersion {
  QD_DISPERSION_LINEAR = 0,
  QD_DISPERSION_QUADRATIC = 1,
} QdDispersion;

typedef enum QdRoute {
  // Diagram sum at finite λ.
  QD_ROUTE_FINITE = 0,
  // Non-crossing diagrams in the λ → 0 limit.
  QD_ROUTE_LIMIT = 1,
  // Free master-field algebra.
  QD_ROUTE_FREE = 2,
  // q-deformed rewriting, Fock state only.
  QD_ROUTE_ORACLE_FOCK = 3,
  // Bogoliubov-doubled normal ordering, non-Fock states.
  QD_ROUTE_ORACLE_DOUBLE = 4,
} QdRoute;

// Canonical scalar sum with the label names used for rendering.
typedef struct QdSum QdSum;

// Parsed operator word.
typedef struct QdWord QdWord;

// Field state. `beta` and `dispersion` are read only for `Temperature`.
typedef struct QdState {
  enum QdStateKind kind;
  double beta;
  enum QdDispersion dispersion;
} QdState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Owned by the
// library.
const char *qd_last_error(void);

// Library version as a static string.
const char *qd_version(void);

// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum QdStatus qd_word_parse(const char *text, struct QdWord **out);

// # Safety
// `word` must be NULL or a handle from [`qd_word_parse`].
size_t qd_word_len(const struct QdWord *word);

// # Safety
// `word` must be NULL or a handle from [`qd_word_parse`], not used afterwards.
void qd_word_free(struct QdWord *word);

// Computes the correlator of `word` in `state` along `route`.
//
// # Safety
// `word` must be a valid handle and `out` a valid pointer.
enum QdStatus qd_correlator(const struct QdWord *word,
                            struct QdState state,
                            enum QdRoute route,
                            struct QdSum **out);

// Term-by-term λ → 0 limit of a finite-λ sum.
//
// # Safety
// `sum` must be a valid handle and `out` a valid pointer.
enum QdStatus qd_take_limit(const struct QdSum *sum, struct QdSum **out);

// # Safety
// `sum` must be NULL or a valid handle.
size_t qd_sum_len(const struct QdSum *sum);

// 1 if the sums are structurally equal, 0 if not, -1 if either is NULL.
//
// # Safety
// Both arguments must be NULL or valid handles.
int qd_sum_equal(const struct QdSum *a, const struct QdSum *b);

// Canonical text rendering; release with [`qd_string_free`].
//
// # Safety
// `sum` must be a valid handle and `out` a valid pointer.
enum QdStatus qd_sum_render(const struct QdSum *sum, char **out);

// JSON serialization; release with [`qd_string_free`].
//
// # Safety
// `sum` must be a valid handle and `out` a valid pointer.
enum QdStatus qd_sum_to_json(const struct QdSum *sum, char **out);

// # Safety
// `sum` must be NULL or a valid handle, not used afterwards.
void qd_sum_free(struct QdSum *sum);

// # Safety
// `s` must be NULL or a string returned by this library, not used afterwards.
void qd_string_free(char *s);

// Writes 1 to `equal` if the diagrammatic limit and the free algebra agree.
//
// # Safety
// `word` must be a valid handle and `equal` a valid pointer.
enum QdStatus qd_theorem2_check(const struct QdWord *word, struct QdState state, int *equal);

// Number of non-crossing pair partitions of the word's pattern.
//
// # Safety
// `word` must be NULL or a valid handle.
size_t qd_count_non_crossing(const struct QdWord *word);

// `∬ e^{-(t²+x²)/2} λ⁻² e^{-itx/λ²} dt dx`.
//
// # Safety
// `re` and `im` must be valid pointers.
enum QdStatus qd_oscillation_quadrature(double lambda, double *re, double *im);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDEFORM_H */
