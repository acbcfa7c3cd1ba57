#include "mz/mz.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "mz/commands.hpp"

struct mz_field {
  mz::FieldPtr field;
};
struct mz_matrix {
  mz::Matrix matrix;
};
struct mz_subspace {
  mz::MatSubspace space;
};

namespace {

static_assert(static_cast<int>(mz::ErrorCode::ConfigError) + 1 == MZ_ERR_CONFIG, "mz_status must mirror ErrorCode");

thread_local std::string g_last_error;

mz_status status_of(mz::ErrorCode code) { return static_cast<mz_status>(static_cast<int>(code) + 1); }

mz::ErrorCode code_of(mz_status s) { return static_cast<mz::ErrorCode>(static_cast<int>(s) - 1); }

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs f, translating exceptions into status codes and the thread-local
// message.
template <class F>
mz_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return MZ_OK;
  } catch (const mz::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("ParseError: ") + e.what();
    return MZ_ERR_PARSE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MZ_ERR_UNKNOWN;
  }
}

mz_status null_arg() {
  g_last_error = "InvalidArgument: null pointer";
  return MZ_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* mz_version(void) { return "1.0.0"; }

const char* mz_last_error(void) { return g_last_error.c_str(); }

const char* mz_status_name(mz_status status) {
  if (status == MZ_OK) return "OK";
  if (status <= MZ_OK || status >= MZ_ERR_UNKNOWN) return "Unknown";
  return mz::to_string(code_of(status)).data();
}

void mz_string_free(char* s) { std::free(s); }

mz_status mz_field_from_json(const char* json, mz_field** out) {
  if (!json || !out) return null_arg();
  return guarded([&] { *out = new mz_field{mz::field_from_json(mz::json::parse(json))}; });
}

mz_status mz_field_to_json(const mz_field* field, char** out) {
  if (!field || !out) return null_arg();
  return guarded([&] { *out = dup(mz::field_to_json(*field->field).dump()); });
}

mz_status mz_field_order(const mz_field* field, unsigned long long* out) {
  if (!field || !out) return null_arg();
  *out = field->field->order();
  return MZ_OK;
}

void mz_field_free(mz_field* field) { delete field; }

mz_status mz_matrix_from_json(const char* json, mz_matrix** out) {
  if (!json || !out) return null_arg();
  return guarded([&] { *out = new mz_matrix{mz::matrix_from_json(mz::json::parse(json))}; });
}

mz_status mz_matrix_to_json(const mz_matrix* m, char** out) {
  if (!m || !out) return null_arg();
  return guarded([&] { *out = dup(mz::matrix_to_json(m->matrix).dump()); });
}

mz_status mz_matrix_is_idempotent(const mz_matrix* m, int* out) {
  if (!m || !out) return null_arg();
  return guarded([&] { *out = m->matrix.is_idempotent() ? 1 : 0; });
}

void mz_matrix_free(mz_matrix* m) { delete m; }

mz_status mz_subspace_from_json(const char* json, mz_subspace** out) {
  if (!json || !out) return null_arg();
  return guarded([&] { *out = new mz_subspace{mz::subspace_from_json(mz::json::parse(json))}; });
}

mz_status mz_subspace_to_json(const mz_subspace* s, char** out) {
  if (!s || !out) return null_arg();
  return guarded([&] { *out = dup(mz::subspace_to_json(s->space).dump()); });
}

mz_status mz_subspace_dim(const mz_subspace* s, size_t* out) {
  if (!s || !out) return null_arg();
  *out = s->space.dim();
  return MZ_OK;
}

mz_status mz_subspace_contains(const mz_subspace* s, const mz_matrix* m, int* out) {
  if (!s || !m || !out) return null_arg();
  return guarded([&] { *out = s->space.contains(m->matrix) ? 1 : 0; });
}

mz_status mz_subspace_equal(const mz_subspace* a, const mz_subspace* b, int* out) {
  if (!a || !b || !out) return null_arg();
  return guarded([&] {
    *out = a->space.field()->same_as(*b->space.field()) && a->space == b->space ? 1 : 0;
  });
}

void mz_subspace_free(mz_subspace* s) { delete s; }

mz_status mz_certify(const mz_subspace* s, unsigned long long budget, char** verdict_json, int* is_ms) {
  if (!s || !verdict_json || !is_ms) return null_arg();
  return guarded([&] {
    const auto v = mz::ms_by_idempotent_criterion(s->space, budget ? budget : mz::kDefaultBudget);
    *verdict_json = dup(mz::verdict_to_json(v).dump());
    *is_ms = v.is_ms() ? 1 : 0;
  });
}

mz_status mz_run_command(const char* command, const char* request_json, char** response_json, int* exit_code) {
  if (!command || !request_json || !response_json || !exit_code) return null_arg();
  *response_json = nullptr;
  *exit_code = mz::kExitError;
  mz::CommandResult result;
  const mz_status st = guarded([&] { result = mz::run_command(command, mz::json::parse(request_json)); });
  if (st == MZ_OK) {
    *exit_code = result.exit_code;
    *response_json = dup(result.report.dump(2));
  } else {
    const std::string msg = g_last_error;
    const auto code = st == MZ_ERR_UNKNOWN ? mz::ErrorCode::InternalContractViolation : code_of(st);
    *response_json = dup(mz::error_report(code, msg).dump(2));
    g_last_error = msg;
  }
  return st;
}

}  // extern "C"
