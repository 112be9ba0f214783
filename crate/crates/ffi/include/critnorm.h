#ifndef CRITNORM_H
#define CRITNORM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result of a call.
typedef enum CnStatus {
  CN_STATUS_OK = 0,
  CN_STATUS_NULL_POINTER = 1,
  // Bad parameter, shape mismatch or non-UTF-8 string.
  CN_STATUS_INVALID_ARGUMENT = 2,
  CN_STATUS_CONFIG = 3,
  CN_STATUS_IO = 4,
  // Malformed snapshot or JSON.
  CN_STATUS_FORMAT = 5,
  CN_STATUS_BLOW_UP_SUSPECTED = 6,
  CN_STATUS_INTERNAL = 7,
  CN_STATUS_PANIC = 8,
} CnStatus;

// A scalar spectral field.
typedef struct CnField CnField;

// A velocity state with its time.
typedef struct CnState CnState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *cn_version(void);

// Message of the last failure on this thread, or null. Valid until the next
// failing call on this thread.
const char *cn_last_error(void);

// Builds a field from `count = n[0] n[1] n[2]` physical samples in C order
// on a box with side lengths `len`.
//
// Pointers: `n` and `len` point to three values, `values` to `count` values.
enum CnStatus cn_field_from_values(const size_t *n,
                                   const double *len,
                                   const double *values,
                                   size_t count,
                                   struct CnField **out);

// Evaluates a norm spec such as `htheta:theta=0.125` on a field.
//
// Pointers: `field` is a live handle; `spec` is NUL-terminated.
enum CnStatus cn_field_norm(const struct CnField *field, const char *spec, double *out);

// Pointers: `field` is null or a handle not yet freed.
void cn_field_free(struct CnField *field);

// Taylor-Green velocity on the `n^3` grid of side `2 pi`.
//
// Pointers: `out` is writable.
enum CnStatus cn_state_taylor_green(size_t n, double amplitude, struct CnState **out);

// Reads a three-component snapshot file.
//
// Pointers: `path` is NUL-terminated; `out` is writable.
enum CnStatus cn_state_read(const char *path, struct CnState **out);

// Pointers: `state` is a live handle; `path` is NUL-terminated.
enum CnStatus cn_state_write(const struct CnState *state, const char *path);

// Advances `steps` steps of size `dt` at viscosity `nu`. On suspected
// blow-up the state keeps its last finite value.
//
// Pointers: `state` is a live handle.
enum CnStatus cn_state_advance(struct CnState *state, double nu, double dt, size_t steps);

// Pointers: `state` is a live handle; `out` is writable.
enum CnStatus cn_state_time(const struct CnState *state, double *out);

// Kinetic energy `||v||^2 / 2`.
//
// Pointers: `state` is a live handle; `out` is writable.
enum CnStatus cn_state_energy(const struct CnState *state, double *out);

// Norm of the velocity with the conventions of `critnorm norms`.
//
// Pointers: `state` is a live handle; `spec` is NUL-terminated.
enum CnStatus cn_state_norm(const struct CnState *state, const char *spec, double *out);

// Copies velocity component `i` into a new field handle.
//
// Pointers: `state` is a live handle; `out` is writable.
enum CnStatus cn_state_component(const struct CnState *state, size_t i, struct CnField **out);

// Pointers: `state` is null or a handle not yet freed.
void cn_state_free(struct CnState *state);

// Runs `critnorm simulate` on a config file. `out_dir` may be null to keep
// the configured directory. `*blow_up` is set to 1 when the run stopped on
// non-finite values.
//
// Pointers: Strings are NUL-terminated; `blow_up` is writable.
enum CnStatus cn_simulate(const char *config_path, const char *out_dir, int *blow_up);

// Runs one inequality suite, or all of them for `"all"`, and sets
// `*passed` to 1 when every report passed. Reports are not written.
//
// Pointers: `suite` is NUL-terminated; `passed` is writable.
enum CnStatus cn_verify(const char *suite,
                        uint64_t seed,
                        size_t count,
                        size_t n,
                        size_t refine_count,
                        size_t refine_n,
                        int *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CRITNORM_H */
