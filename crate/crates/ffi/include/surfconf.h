#ifndef SURFCONF_H
#define SURFCONF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum ScStatus {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_UTF8 = 2,
  SC_STATUS_PARSE = 3,
  SC_STATUS_UNKNOWN_GENERATOR = 4,
  SC_STATUS_INVALID_CELL = 5,
  SC_STATUS_GUARDRAIL = 6,
  SC_STATUS_DIMENSION = 7,
  // A self-check failed (differential, chain map) or an invariant broke.
  SC_STATUS_INTERNAL = 8,
  SC_STATUS_OUT_OF_RANGE = 9,
  SC_STATUS_PANIC = 10,
} ScStatus;

// Cell complex of `F_n` of a genus-`g` surface with one boundary component,
// with its cohomology computed on construction.
typedef struct ScComplex ScComplex;

// A parsed mapping class.
typedef struct ScMappingClass ScMappingClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *sc_version(void);

// Message for the last failed call on this thread; valid until the next call.
const char *sc_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must be null or a pointer obtained from this library, freed once.
void sc_string_free(char *s);

// Builds the cell complex and its cohomology.
//
// # Safety
// `out_complex` must be a valid pointer to writable storage.
enum ScStatus sc_complex_new(size_t genus, size_t points, struct ScComplex **out_complex);

// # Safety
// `c` must be null or a handle from `sc_complex_new`, freed once.
void sc_complex_free(struct ScComplex *c);

// Number of cells in homological degree `degree`.
//
// # Safety
// `c` must be a live handle and `out_count` writable.
enum ScStatus sc_complex_cell_count(const struct ScComplex *c, size_t degree, size_t *out_count);

// Rank and number of torsion summands of `H^i(F_n)`.
//
// # Safety
// `c` must be a live handle and both outputs writable.
enum ScStatus sc_complex_cohomology(const struct ScComplex *c,
                                    size_t i,
                                    size_t *out_betti,
                                    size_t *out_torsion_count);

// Bases and differential triplets as JSON.
//
// # Safety
// `c` must be a live handle and `out_json` writable.
enum ScStatus sc_complex_export_json(const struct ScComplex *c, char **out_json);

// Parses a mapping class (`Ta1 Tb2^-1 Td`, or `endo: a1-> ...; ...`).
//
// # Safety
// `text` must be a NUL-terminated string and `out_class` writable.
enum ScStatus sc_mapping_class_parse(size_t genus,
                                     const char *text,
                                     struct ScMappingClass **out_class);

// # Safety
// `m` must be null or a handle from `sc_mapping_class_parse`, freed once.
void sc_mapping_class_free(struct ScMappingClass *m);

// Normal form of the parsed class.
//
// # Safety
// `m` must be a live handle and `out_text` writable.
enum ScStatus sc_mapping_class_normal_form(const struct ScMappingClass *m, char **out_text);

// Largest `i <= bound` such that the class acts trivially on `pi / gamma_i`.
//
// # Safety
// `m` must be a live handle and `out_depth` writable.
enum ScStatus sc_johnson_depth(const struct ScMappingClass *m, size_t bound, size_t *out_depth);

// Rank of the Moriyama module, `(2g)(2g+1)...(2g+n-1)`.
//
// # Safety
// `out_rank` must be writable.
enum ScStatus sc_mor_rank(size_t genus, size_t points, size_t *out_rank);

// Whether the class acts as the identity on `H^i(F_n)`.
//
// # Safety
// Both handles must be live and `out_identity` writable.
enum ScStatus sc_action_is_identity(const struct ScComplex *c,
                                    const struct ScMappingClass *m,
                                    size_t i,
                                    bool *out_identity);

// Matrices of the action on every `H^i`, as JSON `{"<i>": [[..], ..], ..}`
// (entries as decimal strings).
//
// # Safety
// Both handles must be live and `out_json` writable.
enum ScStatus sc_action_json(const struct ScComplex *c,
                             const struct ScMappingClass *m,
                             char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SURFCONF_H */
