#include <doctest.h>
#include <json.hpp>

#include <string>

#include "mz/mz.h"

using json = nlohmann::json;

namespace {

const char* kH5 = R"({"field":{"p":5,"k":1},"n":2,"basis":[[[0,1],[0,0]],[[0,0],[1,0]],[[1,0],[0,-1]]]})";
const char* kH2 = R"({"field":{"p":2,"k":1},"n":2,"basis":[[[0,1],[0,0]],[[0,0],[1,0]],[[1,0],[0,1]]]})";

struct Run {
  mz_status status;
  int exit_code;
  json response;
};

Run run(const char* command, const std::string& request) {
  char* out = nullptr;
  int code = -1;
  const mz_status st = mz_run_command(command, request.c_str(), &out, &code);
  Run r{st, code, out ? json::parse(out) : json()};
  mz_string_free(out);
  return r;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  mz_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(mz_version()).size() > 0);
  CHECK(std::string(mz_status_name(MZ_OK)) == "OK");
  CHECK(std::string(mz_status_name(MZ_ERR_SQUARE_PARAMETER)) == "SquareParameter");
  CHECK(std::string(mz_status_name(MZ_ERR_CONFIG)) == "ConfigError");
  CHECK(std::string(mz_status_name(MZ_ERR_UNKNOWN)) == "Unknown");
}

TEST_CASE("field handles") {
  mz_field* f = nullptr;
  REQUIRE(mz_field_from_json(R"({"p":2,"k":2,"modulus":[1,1,1]})", &f) == MZ_OK);
  unsigned long long q = 0;
  CHECK(mz_field_order(f, &q) == MZ_OK);
  CHECK(q == 4);
  char* text = nullptr;
  CHECK(mz_field_to_json(f, &text) == MZ_OK);
  CHECK(json::parse(take(text)) == json::parse(R"({"p":2,"k":2,"modulus":[1,1,1]})"));
  mz_field_free(f);

  mz_field* bad = nullptr;
  CHECK(mz_field_from_json(R"({"p":9})", &bad) == MZ_ERR_UNSUPPORTED_FIELD);
  CHECK(std::string(mz_last_error()).find("not prime") != std::string::npos);
  CHECK(mz_field_from_json("{", &bad) == MZ_ERR_PARSE);
  CHECK(mz_field_from_json(nullptr, &bad) == MZ_ERR_INVALID_ARGUMENT);
}

TEST_CASE("subspace and matrix handles") {
  mz_subspace* h = nullptr;
  REQUIRE(mz_subspace_from_json(kH5, &h) == MZ_OK);
  CHECK(std::string(mz_last_error()).empty());
  size_t dim = 0;
  CHECK(mz_subspace_dim(h, &dim) == MZ_OK);
  CHECK(dim == 3);

  mz_matrix* e12 = nullptr;
  mz_matrix* id = nullptr;
  REQUIRE(mz_matrix_from_json(R"({"p":5,"k":1,"rows":[[0,1],[0,0]]})", &e12) == MZ_OK);
  REQUIRE(mz_matrix_from_json(R"({"p":5,"k":1,"rows":[[1,0],[0,1]]})", &id) == MZ_OK);
  int in = -1;
  CHECK(mz_subspace_contains(h, e12, &in) == MZ_OK);
  CHECK(in == 1);
  CHECK(mz_subspace_contains(h, id, &in) == MZ_OK);
  CHECK(in == 0);
  int idem = -1;
  CHECK(mz_matrix_is_idempotent(id, &idem) == MZ_OK);
  CHECK(idem == 1);
  CHECK(mz_matrix_is_idempotent(e12, &idem) == MZ_OK);
  CHECK(idem == 0);

  mz_matrix* other = nullptr;
  REQUIRE(mz_matrix_from_json(R"({"p":7,"k":1,"rows":[[1,0],[0,1]]})", &other) == MZ_OK);
  CHECK(mz_subspace_contains(h, other, &in) == MZ_ERR_MIXED_FIELDS);

  char* text = nullptr;
  REQUIRE(mz_subspace_to_json(h, &text) == MZ_OK);
  const std::string canonical = take(text);
  mz_subspace* back = nullptr;
  REQUIRE(mz_subspace_from_json(canonical.c_str(), &back) == MZ_OK);
  int eq = 0;
  CHECK(mz_subspace_equal(h, back, &eq) == MZ_OK);
  CHECK(eq == 1);

  char* verdict = nullptr;
  int is_ms = -1;
  CHECK(mz_certify(h, 0, &verdict, &is_ms) == MZ_OK);
  CHECK(is_ms == 1);
  CHECK(json::parse(take(verdict))["status"] == "MS_Proper");

  mz_subspace* h2 = nullptr;
  REQUIRE(mz_subspace_from_json(kH2, &h2) == MZ_OK);
  CHECK(mz_certify(h2, 0, &verdict, &is_ms) == MZ_OK);
  CHECK(is_ms == 0);
  CHECK(json::parse(take(verdict))["witness"]["rows"] == json::parse("[[1,0],[0,1]]"));
  CHECK(mz_certify(h2, 2, &verdict, &is_ms) == MZ_ERR_BUDGET_EXCEEDED);

  mz_subspace_free(h);
  mz_subspace_free(h2);
  mz_subspace_free(back);
  mz_matrix_free(e12);
  mz_matrix_free(id);
  mz_matrix_free(other);
}

TEST_CASE("run_command exit codes") {
  auto r = run("certify", std::string(R"({"subspace":)") + kH5 + "}");
  CHECK(r.status == MZ_OK);
  CHECK(r.exit_code == 0);
  CHECK(r.response["status"] == "MS_Proper");
  CHECK(r.response["command"] == "certify");

  r = run("certify", std::string(R"({"method":"both","subspace":)") + kH2 + "}");
  CHECK(r.exit_code == 1);
  CHECK(r.response["witness"]["rows"] == json::parse("[[1,0],[0,1]]"));
  CHECK(r.response["cross_check"]["agrees"] == true);

  r = run("construct", R"({"family":"cor26","params":{"n":2,"r":1,"s1":1,"s2":2,"p":5}})");
  CHECK(r.exit_code == 0);
  CHECK(r.response["dim"] == 2);

  r = run("construct", R"({"family":"cor26","params":{"n":2,"r":1,"s1":1,"s2":1,"p":5}})");
  CHECK(r.status == MZ_ERR_SIGMA_CONDITION_FAILED);
  CHECK(r.exit_code == 2);
  CHECK(r.response["error"]["code"] == "SigmaConditionFailed");

  r = run("maximal", R"({"family_params":{"family":"cor26","n":2,"r":1,"s1":1,"s2":2,"p":5}})");
  CHECK(r.exit_code == 0);
  CHECK(r.response["certificate"]["directions"] == 6);

  r = run("maximal", R"({"family_params":{"family":"ex22","ranks":[1,1,1],"sigmas":[1,2,3],"p":7}})");
  CHECK(r.status == MZ_ERR_FAMILY_PRECONDITION);

  r = run("maximal", R"({"family_params":{"family":"cor26","n":2,"r":1,"s1":1,"s2":2,"p":5},
                         "direction":{"p":5,"k":1,"rows":[[0,1],[0,0]]}})");
  CHECK(r.status == MZ_ERR_DIRECTION_IN_V);

  r = run("oracle-compare", R"({"n":2,"q":2})");
  CHECK(r.exit_code == 0);
  CHECK(r.response["checked"] == 66);

  r = run("demo-basechange", R"({"p":5,"s":2})");
  CHECK(r.exit_code == 0);
  CHECK(r.response["verdict_flips"] == true);

  r = run("demo-basechange", R"({"p":5,"s":4})");
  CHECK(r.status == MZ_ERR_SQUARE_PARAMETER);
  CHECK(r.exit_code == 2);

  r = run("debondt-sample", R"({"samples":10,"seed":42})");
  CHECK(r.exit_code == 0);
  CHECK(r.response["with_idempotent"] == 10);

  r = run("no-such-command", "{}");
  CHECK(r.status == MZ_ERR_CONFIG);
  CHECK(r.exit_code == 2);

  r = run("census", "{not json");
  CHECK(r.status == MZ_ERR_PARSE);
  CHECK(r.exit_code == 2);

  r = run("census", R"({"q":2})");
  CHECK(r.status == MZ_ERR_CONFIG);
}
