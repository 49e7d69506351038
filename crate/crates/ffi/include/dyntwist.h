#ifndef DYNTWIST_H
#define DYNTWIST_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DtStatus {
  DT_STATUS_OK = 0,
  DT_STATUS_NULL_ARGUMENT = 1,
  DT_STATUS_PARSE = 2,
  DT_STATUS_INVALID_INPUT = 3,
  DT_STATUS_HYPOTHESIS = 4,
  DT_STATUS_CONSISTENCY = 5,
  DT_STATUS_SIZE_CAP = 6,
  DT_STATUS_INTERNAL = 7,
} DtStatus;

/*
 A left comodule algebra over a [`DtHopf`].
 */
typedef struct DtComodule DtComodule;

/*
 A dynamical datum (K, T) of the monomial family.
 */
typedef struct DtDatum DtDatum;

/*
 A Hopf algebra.
 */
typedef struct DtHopf DtHopf;

/*
 A dynamical twist J ∈ H⊗H⊗S.
 */
typedef struct DtTwist DtTwist;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or null. Owned by the library.
 */
const char *dt_last_error(void);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void dt_string_free(char *s);

/*
 Parses a Hopf algebra file.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum DtStatus dt_hopf_from_json(const char *json, struct DtHopf **out);

/*
 Canonical JSON of a Hopf algebra.

 # Safety
 `h` must be a live handle; `out` must be writable.
 */
enum DtStatus dt_hopf_to_json(const struct DtHopf *h, char **out);

/*
 Dimension of H, or 0 for a null handle.

 # Safety
 `h` must be null or a live handle.
 */
uintptr_t dt_hopf_dim(const struct DtHopf *h);

/*
 Runs the Hopf axiom checks; `all_pass` receives 1 or 0 and `report` the JSON report.

 # Safety
 `h` must be a live handle; the output pointers must be writable.
 */
enum DtStatus dt_hopf_verify(const struct DtHopf *h, int32_t *all_pass, char **report);

/*
 # Safety
 `h` must be null or a handle from this library, freed once.
 */
void dt_hopf_free(struct DtHopf *h);

/*
 Parses a comodule algebra file; its `hopf` reference must match `h`.

 # Safety
 `h` must be a live handle, `json` NUL-terminated, `out` writable.
 */
enum DtStatus dt_comodule_from_json(const struct DtHopf *h,
                                    const char *json,
                                    struct DtComodule **out);

/*
 # Safety
 `k` must be null or a handle from this library, freed once.
 */
void dt_comodule_free(struct DtComodule *k);

/*
 Built-in datum by name: "E0" or "E1".

 # Safety
 `name` must be NUL-terminated; `out` writable.
 */
enum DtStatus dt_datum_example(const char *name, struct DtDatum **out);

/*
 Parses and validates a datum file.

 # Safety
 `json` must be NUL-terminated; `out` writable.
 */
enum DtStatus dt_datum_from_json(const char *json, struct DtDatum **out);

/*
 The ambient Hopf algebra of a datum as a new handle.

 # Safety
 `d` must be a live handle; `out` writable.
 */
enum DtStatus dt_datum_hopf(const struct DtDatum *d, struct DtHopf **out);

/*
 # Safety
 `d` must be null or a handle from this library, freed once.
 */
void dt_datum_free(struct DtDatum *d);

/*
 Runs the twist pipeline on a datum.

 # Safety
 `d` must be a live handle; `out` writable.
 */
enum DtStatus dt_compute_twist(const struct DtDatum *d, struct DtTwist **out);

/*
 Parses a twist file over the given H and S.

 # Safety
 Handles must be live, `json` NUL-terminated, `out` writable.
 */
enum DtStatus dt_twist_from_json(const struct DtHopf *h,
                                 const struct DtComodule *s,
                                 const char *json,
                                 struct DtTwist **out);

/*
 Canonical JSON of a twist, with references to its H and S.

 # Safety
 `j` must be a live handle; `out` writable.
 */
enum DtStatus dt_twist_to_json(const struct DtTwist *j, char **out);

/*
 Number of coefficients of J (dim H · dim H · dim S), or 0 for null.

 # Safety
 `j` must be null or a live handle.
 */
uintptr_t dt_twist_len(const struct DtTwist *j);

/*
 Runs the twist verifier.

 # Safety
 `j` must be a live handle; `all_pass` writable; `report` null or writable.
 */
enum DtStatus dt_twist_verify(const struct DtTwist *j, int32_t *all_pass, char **report);

/*
 # Safety
 `j` must be null or a handle from this library, freed once.
 */
void dt_twist_free(struct DtTwist *j);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DYNTWIST_H */
