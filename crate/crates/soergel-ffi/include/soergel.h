/* C interface to the Coxeter/Hecke/Kazhdan-Lusztig workbench. */

#ifndef SOERGEL_H
#define SOERGEL_H

/* Generated by cbindgen from the soergel-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every FFI entry point.
typedef enum SglStatus {
  // The call succeeded.
  SGL_STATUS_OK = 0,
  // A pointer argument was null or a string was not valid UTF-8.
  SGL_STATUS_BAD_ARGUMENT = 1,
  // The input parsed but was rejected (unknown type, bad word, ...).
  SGL_STATUS_INVALID_INPUT = 2,
  // Group enumeration exceeded the element cap.
  SGL_STATUS_TOO_LARGE = 3,
  // A verification subroutine ran and reported violations.
  SGL_STATUS_CHECK_FAILED = 4,
  // An internal invariant failed (a panic was caught at the boundary).
  SGL_STATUS_INTERNAL = 5,
} SglStatus;

// One enumerated group with its lazily built KL table.
typedef struct SglWorkbench SglWorkbench;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a workbench from a named type such as "A3", "B3", "H4", or
// "I2(7)". `max_elements` caps the enumeration (0 means the default cap).
// On success writes a handle that must be released with
// `sgl_workbench_free`.
//
// # Safety
// `name` must point to a NUL-terminated string and `out` to writable space
// for one pointer.
enum SglStatus sgl_workbench_new_named(const char *name,
                                       size_t max_elements,
                                       struct SglWorkbench **out);

// Builds a workbench from a Coxeter matrix in JSON form
// (`{"rank":2,"m":[[1,5],[5,1]]}`, with 0 standing for an infinite bond).
//
// # Safety
// `json` must point to a NUL-terminated string and `out` to writable space
// for one pointer.
enum SglStatus sgl_workbench_new_json(const char *json,
                                      size_t max_elements,
                                      struct SglWorkbench **out);

// Releases a workbench handle. Null is ignored.
//
// # Safety
// `ptr` must be null or a handle produced by a constructor, not yet freed.
void sgl_workbench_free(struct SglWorkbench *ptr);

// Number of group elements.
//
// # Safety
// `wb` must be a live workbench handle; `out` must be writable.
enum SglStatus sgl_group_size(const struct SglWorkbench *wb, uint64_t *out);

// Number of simple generators.
//
// # Safety
// `wb` must be a live workbench handle; `out` must be writable.
enum SglStatus sgl_group_rank(const struct SglWorkbench *wb, uint64_t *out);

// Length of the longest element.
//
// # Safety
// `wb` must be a live workbench handle; `out` must be writable.
enum SglStatus sgl_longest_length(const struct SglWorkbench *wb, uint64_t *out);

// The KL coefficient polynomial of a pair of words, as a JSON object
// `{"y":...,"x":...,"poly":{"coeffs":{...}},"mu":...}`. Words are
// comma-separated 1-based generator indices ("2,1,3,2"); "" or "e" is the
// identity. The string must be released with `sgl_string_free`.
//
// # Safety
// `wb` must be a live workbench handle; `y_word` and `x_word` must be
// NUL-terminated strings; `out` must be writable.
enum SglStatus sgl_kl_poly_json(const struct SglWorkbench *wb,
                                const char *y_word,
                                const char *x_word,
                                char **out);

// The full KL table as CSV with header `y_word,x_word,poly_json,mu`,
// released with `sgl_string_free`.
//
// # Safety
// `wb` must be a live workbench handle; `out` must be writable.
enum SglStatus sgl_kl_table_csv(const struct SglWorkbench *wb, char **out);

// Decomposition of the Bott-Samelson class of a word into shifted
// indecomposables, as JSON `{"word":[...],"summands":[...]}`; released with
// `sgl_string_free`.
//
// # Safety
// `wb` must be a live workbench handle; `word` must be a NUL-terminated
// string; `out` must be writable.
enum SglStatus sgl_bs_decompose_json(const struct SglWorkbench *wb, const char *word, char **out);

// Verifies the KL inversion identity over all pairs under the named sign
// convention ("paper" or "corrected"). Returns `SGL_STATUS_OK` when the
// defect vanishes identically and `SGL_STATUS_CHECK_FAILED` when it does
// not; the verdict JSON is written either way.
//
// # Safety
// `wb` must be a live workbench handle; `convention` must be a
// NUL-terminated string; `out` must be writable.
enum SglStatus sgl_inversion_verify_json(const struct SglWorkbench *wb,
                                         const char *convention,
                                         char **out);

// Releases a string produced by this library. Null is ignored.
//
// # Safety
// `ptr` must be null or a string returned by this library, not yet freed.
void sgl_string_free(char *ptr);

// Message of the most recent failure on the calling thread, or null when
// the last call succeeded. The pointer is valid until the next FFI call on
// the same thread; do not free it.
const char *sgl_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SOERGEL_H */
