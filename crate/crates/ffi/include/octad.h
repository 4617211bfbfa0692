#ifndef OCTAD_H
#define OCTAD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OctadClassification {
  OCTAD_CLASSIFICATION_REGULAR_CANDIDATE = 0,
  OCTAD_CLASSIFICATION_FOUR_COLLISION_WALL = 1,
  OCTAD_CLASSIFICATION_INVALID = 2,
} OctadClassification;

typedef enum OctadStatus {
  OCTAD_STATUS_OK = 0,
  OCTAD_STATUS_NULL_POINTER = 1,
  OCTAD_STATUS_INVALID_UTF8 = 2,
  OCTAD_STATUS_BAD_INPUT = 3,
  OCTAD_STATUS_PARSE = 4,
  OCTAD_STATUS_DEGENERATE_INPUT = 5,
  OCTAD_STATUS_NOT_ZERO_DIMENSIONAL = 6,
  OCTAD_STATUS_MULTIPLE_POINT = 7,
  OCTAD_STATUS_NOT_ON_BASE = 8,
  OCTAD_STATUS_DEGENERATE = 9,
  OCTAD_STATUS_NOT_SKEW = 10,
  OCTAD_STATUS_NOT_SIMPLE = 11,
  OCTAD_STATUS_NOT_REGULAR = 12,
  OCTAD_STATUS_INCONSISTENT = 13,
  OCTAD_STATUS_ODD_DIAGRAM = 14,
  OCTAD_STATUS_PANIC = 99,
} OctadStatus;

// Opaque list of projective points.
typedef struct OctadConfig OctadConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. The caller
// releases it with `octad_string_free`.
char *octad_last_error(void);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void octad_string_free(char *s);

// Parses configuration text (one point per line, `#` comments).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum OctadStatus octad_config_parse(const char *text, struct OctadConfig **out);

// # Safety
// `cfg` must be null or a handle from this library that was not yet freed.
void octad_config_free(struct OctadConfig *cfg);

// Number of points, 0 for a null handle.
//
// # Safety
// `cfg` must be null or a live handle.
size_t octad_config_len(const struct OctadConfig *cfg);

// The configuration in text form; released with `octad_string_free`.
//
// # Safety
// `cfg` must be a live handle.
char *octad_config_to_string(const struct OctadConfig *cfg);

// Classifies an 8-point configuration.
//
// # Safety
// `cfg` must be a live handle and `out` a valid pointer.
enum OctadStatus octad_config_verify(const struct OctadConfig *cfg, enum OctadClassification *out);

// Common sign of a regular octad, `+1` or `-1`.
//
// # Safety
// `cfg` must be a live handle and `out` a valid pointer.
enum OctadStatus octad_config_chirality(const struct OctadConfig *cfg, int8_t *out);

// Completes 7 points to the octad of their net; `out` receives a new
// handle with 8 points.
//
// # Safety
// `cfg` must be a live handle and `out` a valid pointer.
enum OctadStatus octad_config_complete(const struct OctadConfig *cfg, struct OctadConfig **out);

// Oval count of the Hessian of the net through the first 7 points.
//
// # Safety
// `cfg` must be a live handle; `count` and `stabilized` valid pointers.
enum OctadStatus octad_config_ovals(const struct OctadConfig *cfg,
                                    uint32_t depth,
                                    size_t *count,
                                    bool *stabilized);

// Class `(alpha, beta)` and parity of a diagram given as 6 bits.
//
// # Safety
// `bits` must be a NUL-terminated string; outputs valid pointers.
enum OctadStatus octad_diagram_class(const char *bits, uint8_t *alpha, uint8_t *beta, bool *even);

// Runs a command line such as `"tables"` or `"octad verify x.cfg"` and
// returns its JSON report; `exit_code` receives the process exit status.
//
// # Safety
// `args` must be a NUL-terminated string and `exit_code` a valid pointer.
char *octad_run_json(const char *args, int32_t *exit_code);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* OCTAD_H */
