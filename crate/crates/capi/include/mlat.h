#ifndef MLAT_H
#define MLAT_H

/* Generated by cbindgen from the mlat-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by fallible entry points.
 */
typedef enum MlatStatus {
  MLAT_STATUS_OK = 0,
  MLAT_STATUS_NULL_ARGUMENT = 1,
  MLAT_STATUS_INVALID_UTF8 = 2,
  MLAT_STATUS_UNKNOWN_NAME = 3,
  MLAT_STATUS_VERIFY_FAILED = 4,
} MlatStatus;

/**
 * Opaque handle over the fully built analysis.
 */
typedef struct MlatAnalysis MlatAnalysis;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the loop, enumerates the subloop lattice and the automorphism
 * orbits, and returns an owned handle. Never returns null; release with
 * `mlat_analysis_free`.
 */
struct MlatAnalysis *mlat_analysis_new(void);

/**
 * Releases a handle returned by `mlat_analysis_new`. Null is a no-op.
 *
 * # Safety
 * `analysis` must be null or a pointer previously returned by
 * `mlat_analysis_new` that has not been freed.
 */
void mlat_analysis_free(struct MlatAnalysis *analysis);

/**
 * Number of elements of the ambient loop (120), or -1 on null input.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
int32_t mlat_loop_order(const struct MlatAnalysis *analysis);

/**
 * Total number of enumerated subloops (1045), or -1 on null input.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
int64_t mlat_subloop_count(const struct MlatAnalysis *analysis);

/**
 * Census count: copies of the named type in the ambient loop. Type names
 * are `1`, `C2`, `C3`, `E4`, `S3`, `E8`, `A4`, `M(S3)`/`MS3`,
 * `M(A4)`/`MA4`, `C`.
 *
 * # Safety
 * `analysis` must be a live handle; `sup` a NUL-terminated string; `out`
 * a valid pointer.
 */
enum MlatStatus mlat_copies(const struct MlatAnalysis *analysis, const char *sup, int64_t *out);

/**
 * Copies of the `sup` type containing the representative of the `sub`
 * orbit (orbit labels as printed by the CLI, e.g. `C2`, `E4+`, `E4-`).
 *
 * # Safety
 * `analysis` must be a live handle; both names NUL-terminated strings;
 * `out` a valid pointer.
 */
enum MlatStatus mlat_copies_above(const struct MlatAnalysis *analysis,
                                  const char *sub_orbit,
                                  const char *sup,
                                  int64_t *out);

/**
 * Runs the verification suite (`section` may be null for all sections);
 * writes the number of failing checks to `failures` when non-null.
 * Returns `VerifyFailed` when any check fails.
 *
 * # Safety
 * `analysis` must be a live handle; `section` null or a NUL-terminated
 * string; `failures` null or a valid pointer.
 */
enum MlatStatus mlat_verify(const struct MlatAnalysis *analysis,
                            const char *section,
                            int32_t *failures);

/**
 * The orbit-level lattice graph as a JSON document.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
char *mlat_lattice_json(const struct MlatAnalysis *analysis);

/**
 * The orbit-level lattice graph in DOT format.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
char *mlat_lattice_dot(const struct MlatAnalysis *analysis);

/**
 * The involution relation table as CSV.
 *
 * # Safety
 * `analysis` must be null or a live handle.
 */
char *mlat_table1_csv(const struct MlatAnalysis *analysis);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a pointer returned by one of the export functions
 * that has not been freed.
 */
void mlat_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MLAT_H */
