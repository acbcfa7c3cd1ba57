#ifndef MZ_MZ_H
#define MZ_MZ_H

#include <stddef.h>

#if defined(_WIN32)
#define MZ_API __declspec(dllexport)
#else
#define MZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* One value per library error code; MZ_ERR_UNKNOWN covers anything else. */
typedef enum mz_status {
  MZ_OK = 0,
  MZ_ERR_INVALID_ARGUMENT,
  MZ_ERR_PARSE,
  MZ_ERR_ZERO_INVERSE,
  MZ_ERR_UNSUPPORTED_FIELD,
  MZ_ERR_SHAPE_MISMATCH,
  MZ_ERR_MIXED_FIELDS,
  MZ_ERR_IMPROPER_SUBSPACE,
  MZ_ERR_BUDGET_EXCEEDED,
  MZ_ERR_HYPOTHESIS_FAILED,
  MZ_ERR_SIGMA_CONDITION_FAILED,
  MZ_ERR_INVALID_PART,
  MZ_ERR_PRODUCT_ZERO,
  MZ_ERR_BAD_BLOCKS,
  MZ_ERR_RANK_OUT_OF_RANGE,
  MZ_ERR_DIRECTION_IN_V,
  MZ_ERR_FAMILY_PRECONDITION,
  MZ_ERR_INTERNAL_CONTRACT_VIOLATION,
  MZ_ERR_PARAMETER_VIOLATION,
  MZ_ERR_NOT_NILPOTENT,
  MZ_ERR_NOT_AN_MS,
  MZ_ERR_SQUARE_PARAMETER,
  MZ_ERR_EXCLUDED_PARAMETER,
  MZ_ERR_CONFIG,
  MZ_ERR_UNKNOWN
} mz_status;

typedef struct mz_field mz_field;
typedef struct mz_matrix mz_matrix;
typedef struct mz_subspace mz_subspace;

MZ_API const char* mz_version(void);
/* Message of the last failure on the calling thread; empty after success. */
MZ_API const char* mz_last_error(void);
MZ_API const char* mz_status_name(mz_status status);

/* Strings returned through char** out-parameters are owned by the caller. */
MZ_API void mz_string_free(char* s);

MZ_API mz_status mz_field_from_json(const char* json, mz_field** out);
MZ_API mz_status mz_field_to_json(const mz_field* field, char** out);
MZ_API mz_status mz_field_order(const mz_field* field, unsigned long long* out);
MZ_API void mz_field_free(mz_field* field);

MZ_API mz_status mz_matrix_from_json(const char* json, mz_matrix** out);
MZ_API mz_status mz_matrix_to_json(const mz_matrix* m, char** out);
MZ_API mz_status mz_matrix_is_idempotent(const mz_matrix* m, int* out);
MZ_API void mz_matrix_free(mz_matrix* m);

MZ_API mz_status mz_subspace_from_json(const char* json, mz_subspace** out);
/* Canonical form. */
MZ_API mz_status mz_subspace_to_json(const mz_subspace* s, char** out);
MZ_API mz_status mz_subspace_dim(const mz_subspace* s, size_t* out);
MZ_API mz_status mz_subspace_contains(const mz_subspace* s, const mz_matrix* m, int* out);
MZ_API mz_status mz_subspace_equal(const mz_subspace* a, const mz_subspace* b, int* out);
MZ_API void mz_subspace_free(mz_subspace* s);

/* Idempotent-criterion verdict JSON; *is_ms is 1 for an MS, 0 otherwise. */
MZ_API mz_status mz_certify(const mz_subspace* s, unsigned long long budget, char** verdict_json, int* is_ms);

/* Runs a command ("certify", "construct", ...) on a JSON request. The
 * response is always set: a report, or an error object when the status is
 * not MZ_OK. exit_code follows 0 = affirmative, 1 = negative, 2 = error. */
MZ_API mz_status mz_run_command(const char* command, const char* request_json, char** response_json,
                                int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
