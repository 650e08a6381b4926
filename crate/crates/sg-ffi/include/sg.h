#ifndef SG_FFI_H
#define SG_FFI_H

/* Generated by cbindgen from the sg-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every FFI call.
 */
typedef enum SgStatus {
  SG_STATUS_OK = 0,
  SG_STATUS_NULL_POINTER = 1,
  SG_STATUS_INVALID_ARGUMENT = 2,
  SG_STATUS_STAGE_BOUND = 3,
  SG_STATUS_PARSE_ERROR = 4,
  SG_STATUS_INTERNAL = 5,
} SgStatus;

/**
 * Exact per-vertex degree table of one gasket stage (opaque).
 */
typedef struct SgTable SgTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a heap string; free with [`sg_string_free`].
 */
char *sg_version(void);

/**
 * Release a string produced by this library.
 *
 * # Safety
 * `s` must come from this library and must not have been freed already.
 */
void sg_string_free(char *s);

/**
 * Spanning-tree and forest counts of `SG(n)` as a JSON object
 * `{"n":..,"f":..,"g":..,"h":..,"f_factored":{..}}`.
 *
 * # Safety
 * `out_json` must be a valid out-pointer.
 */
enum SgStatus sg_counts_json(uint32_t n, char **out_json);

/**
 * Degree distribution at one address of `SG(n)` as a JSON object with
 * fraction strings.
 *
 * # Safety
 * `address` must be a NUL-terminated UTF-8 string; `out_json` a valid
 * out-pointer.
 */
enum SgStatus sg_vertex_json(uint32_t n, const char *address, char **out_json);

/**
 * Limiting degree distribution as a JSON array of four fraction strings.
 *
 * # Safety
 * `out_json` must be a valid out-pointer.
 */
enum SgStatus sg_phi_limit_json(char **out_json);

/**
 * Per-stage averages `phi_j(n)` as a JSON array of four fraction strings.
 *
 * # Safety
 * `out_json` must be a valid out-pointer.
 */
enum SgStatus sg_phi_json(uint32_t n, char **out_json);

/**
 * Build the full exact degree table of `SG(n)`.
 *
 * # Safety
 * `out_table` must be a valid out-pointer; release the handle with
 * [`sg_table_free`].
 */
enum SgStatus sg_table_new(uint32_t n, struct SgTable **out_table);

/**
 * Release a table handle.
 *
 * # Safety
 * `table` must come from [`sg_table_new`] and not be freed twice.
 */
void sg_table_free(struct SgTable *table);

/**
 * Number of rows (vertices) in the table; 0 for a null handle.
 *
 * # Safety
 * `table` must be a live handle or null.
 */
uintptr_t sg_table_len(const struct SgTable *table);

/**
 * Stage of the table; `u32::MAX` for a null handle.
 *
 * # Safety
 * `table` must be a live handle or null.
 */
uint32_t sg_table_stage(const struct SgTable *table);

/**
 * Canonical address of one row.
 *
 * # Safety
 * `table` must be a live handle; `out` a valid out-pointer.
 */
enum SgStatus sg_table_address(const struct SgTable *table, uintptr_t row, char **out);

/**
 * Lattice coordinates of one row.
 *
 * # Safety
 * `table` must be a live handle; `out_p`, `out_q` valid out-pointers.
 */
enum SgStatus sg_table_coord(const struct SgTable *table,
                             uintptr_t row,
                             int64_t *out_p,
                             int64_t *out_q);

/**
 * Exact probability that the row's vertex has the given degree (1..=4),
 * as a fraction string `"num/den"`.
 *
 * # Safety
 * `table` must be a live handle; `out` a valid out-pointer.
 */
enum SgStatus sg_table_fraction(const struct SgTable *table,
                                uintptr_t row,
                                uint32_t degree,
                                char **out);

/**
 * Same probability as a rounded decimal with `digits` significant digits.
 *
 * # Safety
 * `table` must be a live handle; `out` a valid out-pointer.
 */
enum SgStatus sg_table_decimal(const struct SgTable *table,
                               uintptr_t row,
                               uint32_t degree,
                               uint32_t digits,
                               char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SG_FFI_H */
