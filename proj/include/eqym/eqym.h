#ifndef EQYM_EQYM_H
#define EQYM_EQYM_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define EQYM_API __declspec(dllexport)
#else
#define EQYM_API __attribute__((visibility("default")))
#endif

typedef enum eqym_status {
  EQYM_OK = 0,
  EQYM_INTERNAL = 1,
  EQYM_VALIDATION = 2,
  EQYM_NUMERICAL = 3,
  EQYM_ARGUMENT = 4
} eqym_status;

typedef struct eqym_run eqym_run;

EQYM_API const char* eqym_version(void);

/* Message of the last failed call on this thread; "" when none. */
EQYM_API const char* eqym_last_error(void);

/* Runs one command described by a JSON config ({"command": "classify" | "verify" | "solve" | "evolve" |
 * "energy", ...}). On EQYM_OK, EQYM_VALIDATION and EQYM_NUMERICAL a run is returned in *out and must be
 * released with eqym_run_destroy; its summary says what failed. */
EQYM_API eqym_status eqym_run_create(const char* config_json, eqym_run** out);
EQYM_API void eqym_run_destroy(eqym_run* run);

/* 0 pass, 2 validation error, 3 numerical-acceptance failure. */
EQYM_API int eqym_run_exit_code(const eqym_run* run);
EQYM_API int eqym_run_passed(const eqym_run* run);
EQYM_API const char* eqym_run_message(const eqym_run* run);
EQYM_API const char* eqym_run_summary(const eqym_run* run);
EQYM_API const char* eqym_run_config(const eqym_run* run);
EQYM_API size_t eqym_run_artifact_count(const eqym_run* run);
EQYM_API const char* eqym_run_artifact_name(const eqym_run* run, size_t i);
EQYM_API const char* eqym_run_artifact_data(const eqym_run* run, size_t i, size_t* size);

/* Writes config.json, summary.json and all artifacts into dir (created if missing). */
EQYM_API eqym_status eqym_run_write(const eqym_run* run, const char* dir);

/* Fills defaults and validates; *out must be released with eqym_string_free. */
EQYM_API eqym_status eqym_resolve_config(const char* config_json, char** out);
EQYM_API void eqym_string_free(char* s);

/* Primitives. */
EQYM_API eqym_status eqym_levi_civita(const int* idx, int n, int* sign);
/* group: "so" (n), "sopq" (p, q), "su" (n), "adjoint" (n). */
EQYM_API eqym_status eqym_fixed_space_dimension(const char* group, int n, int p, int q, int* dim);
/* g'' of the radial SO(n) equation. */
EQYM_API eqym_status eqym_son_rhs(int n, double r, double g, double dg, double* ddg);

#ifdef __cplusplus
}
#endif

#endif
