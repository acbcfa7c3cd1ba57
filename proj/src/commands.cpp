#include "mz/commands.hpp"

#include <functional>
#include <map>
#include <string>

namespace mz {

namespace {

[[noreturn]] void config_fail(const std::string& what) { fail(ErrorCode::ConfigError, what); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config_fail(std::string("request needs \"") + key + "\"");
  return j.at(key);
}

std::uint64_t get_u64(const json& j, const char* key, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) config_fail(std::string(key) + " must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t need_u64(const json& j, const char* key) {
  need(j, key);
  return get_u64(j, key, 0);
}

bool get_bool(const json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) config_fail(std::string(key) + " must be a boolean");
  return j.at(key).get<bool>();
}

std::uint64_t budget_of(const json& r) {
  const auto b = get_u64(r, "budget", kDefaultBudget);
  if (b == 0) config_fail("budget must be positive");
  return b;
}

// "field": q or literal; "q": q; or "p" with optional "k" and "modulus".
FieldPtr field_param(const json& r) {
  if (r.contains("field")) {
    const auto& f = r.at("field");
    if (f.is_number_integer()) return field_of_order(f.get<std::uint64_t>());
    return field_from_json(f);
  }
  if (r.contains("q")) return field_of_order(need_u64(r, "q"));
  if (r.contains("p")) {
    const auto p = need_u64(r, "p");
    const auto k = get_u64(r, "k", 1);
    if (p == 0 || r.contains("modulus")) {
      json lit{{"p", p}, {"k", k}};
      if (r.contains("modulus")) lit["modulus"] = r.at("modulus");
      return field_from_json(lit);
    }
    std::uint64_t q = 1;
    for (std::uint64_t i = 0; i < k; ++i) q *= p;
    return field_of_order(q);
  }
  config_fail("request needs a field (\"field\", \"q\" or \"p\")");
}

std::vector<std::size_t> size_list(const json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_array()) config_fail(std::string(key) + " must be a list");
  std::vector<std::size_t> out;
  for (const auto& x : v) {
    if (!x.is_number_integer() || x.get<std::int64_t>() < 0) config_fail(std::string(key) + " entries must be non-negative");
    out.push_back(x.get<std::size_t>());
  }
  return out;
}

std::vector<Scalar> scalar_list(const FieldPtr& f, const json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_array()) config_fail(std::string(key) + " must be a list");
  std::vector<Scalar> out;
  for (const auto& x : v) out.push_back(scalar_from_json(f, x));
  return out;
}

// First present key among the aliases.
Scalar scalar_param(const FieldPtr& f, const json& j, std::initializer_list<const char*> keys) {
  for (const char* k : keys)
    if (j.contains(k)) return scalar_from_json(f, j.at(k));
  config_fail(std::string("request needs \"") + *keys.begin() + "\"");
}

std::optional<MsVerdict> scan_if_affordable(const MatSubspace& s, std::uint64_t budget) {
  if (!s.field()->is_finite()) return std::nullopt;
  try {
    return ms_by_idempotent_criterion(s, budget);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BudgetExceeded) return std::nullopt;
    throw;
  }
}

int exit_for(bool affirmative) { return affirmative ? kExitAffirmative : kExitNegative; }

// ---------------------------------------------------------------------------

CommandResult cmd_certify(const json& r) {
  const auto space = subspace_from_json(need(r, "subspace"));
  const auto budget = budget_of(r);
  const std::string method = r.value("method", "criterion");
  json body;
  body["subspace"] = subspace_to_json(space);

  std::optional<MsVerdict> verdict;
  if (r.contains("candidate")) verdict = verdict_from_candidate(space, matrix_from_json(r.at("candidate"), space.field()));
  if (!verdict) {
    if (method == "criterion" || method == "both") {
      verdict = ms_by_idempotent_criterion(space, budget);
    } else if (method == "definition") {
      verdict = ms_by_definition(space, budget);
    } else {
      config_fail("method must be criterion, definition or both");
    }
  }
  json v = verdict_to_json(*verdict);
  for (const auto& item : v.items()) body[item.key()] = item.value();
  if (method == "both") {
    const auto def = ms_by_definition(space, budget);
    body["cross_check"] = {{"definition", verdict_to_json(def)}, {"agrees", def.status == verdict->status}};
    if (def.status != verdict->status)
      fail(ErrorCode::InternalContractViolation, "definition and criterion disagree on the subspace");
  }
  return {exit_for(verdict->is_ms()), report_envelope(*space.field(), body)};
}

Example24 family_from_params(const json& p, FieldPtr f, const std::string& family) {
  if (family == "ex24") {
    return build_example24(f, need_u64(p, "n1"), need_u64(p, "n2"), need_u64(p, "n3"),
                           scalar_param(f, p, {"sigma1", "s1"}), scalar_param(f, p, {"sigma2", "s2"}));
  }
  if (family == "cor26") {
    return build_cor26(f, need_u64(p, "n"), need_u64(p, "r"), scalar_param(f, p, {"s1", "sigma1"}),
                       scalar_param(f, p, {"s2", "sigma2"}));
  }
  fail(ErrorCode::FamilyPrecondition, "maximality certificates cover the ex24 and cor26 families only, not " + family);
}

Matrix corner_unit(const FieldPtr& f, const std::vector<std::size_t>& ranks, std::size_t from, std::size_t to) {
  std::size_t n = 0, row = 0, col = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i == from) row = n;
    if (i == to) col = n;
    n += ranks[i];
  }
  return Matrix::unit(f, n, n, row, col);
}

CommandResult cmd_construct(const json& r) {
  const std::string family = need(r, "family").get<std::string>();
  const json& p = need(r, "params");
  const auto f = field_param(p);
  const auto budget = budget_of(r);
  json body;
  body["family"] = family;
  body["params"] = p;
  int code = kExitAffirmative;

  auto emit_construction = [&](const Construction& c) {
    body["subspace"] = subspace_to_json(c.space);
    body["dim"] = c.space.dim();
    body["codim"] = c.space.codim();
    body["certificate"] = certificate_to_json(thm21_certify(c.space, c.frame, c.lambda));
    if (get_bool(p, "scan", false)) {
      auto v = scan_if_affordable(c.space, budget);
      if (!v) fail(ErrorCode::BudgetExceeded, "idempotent scan exceeds the budget");
      body["scan"] = verdict_to_json(*v);
      code = exit_for(v->is_ms());
    }
  };

  if (family == "ex22") {
    emit_construction(build_example22(f, size_list(p, "ranks"), scalar_list(f, p, "sigmas")));
  } else if (family == "ex23") {
    const auto ranks = size_list(p, "ranks");
    const auto base = build_example22(f, ranks, scalar_list(f, p, "sigmas"));
    if (ranks.size() < 3) fail(ErrorCode::FamilyPrecondition, "the extension needs at least three blocks");
    const Matrix u = p.contains("u") ? matrix_from_json(p.at("u"), f) : corner_unit(f, ranks, 0, 1);
    const Matrix w = p.contains("w") ? matrix_from_json(p.at("w"), f) : corner_unit(f, ranks, 1, 2);
    const auto ext = build_example23_extension(base, u, w);
    body["base"] = subspace_to_json(base.space);
    body["base_certificate"] = certificate_to_json(thm21_certify(base.space, base.frame, base.lambda));
    body["u"] = matrix_to_json(u);
    body["w"] = matrix_to_json(w);
    body["subspace"] = subspace_to_json(ext.space);
    body["dim"] = ext.space.dim();
    body["strictly_contains_base"] = ext.space.contains(base.space) && ext.space.dim() == base.space.dim() + 1;
    body["corner_vanishes"] = ext.corner_vanishes;
    if (auto v = scan_if_affordable(ext.space, budget)) {
      body["scan"] = verdict_to_json(*v);
      code = exit_for(v->is_ms());
    } else {
      body["scan"] = nullptr;
    }
  } else if (family == "ex24" || family == "cor26") {
    emit_construction(family_from_params(p, f, family).construction);
  } else {
    config_fail("family must be ex22, ex23, ex24 or cor26");
  }
  return {code, report_envelope(*f, body)};
}

CommandResult cmd_maximal(const json& r) {
  const json& p = need(r, "family_params");
  const std::string family = p.value("family", "");
  if (family.empty()) config_fail("family_params needs \"family\"");
  const auto f = field_param(p);
  const auto budget = budget_of(r);
  const auto ex = family_from_params(p, f, family);
  const auto& space = ex.construction.space;
  json body;
  body["family"] = family;
  body["params"] = p;
  body["subspace"] = subspace_to_json(space);

  if (r.contains("direction") && !r.at("direction").is_null()) {
    const auto w = matrix_from_json(r.at("direction"), f);
    body["bundle"] = bundle_to_json(maximality_witness(ex.family, space, w));
    return {kExitAffirmative, report_envelope(*f, body)};
  }
  const auto cert = certify_maximal(ex.family, space);
  body["certificate"] = maximality_certificate_to_json(cert);
  bool agrees = true;
  if (f->is_finite()) {
    try {
      const auto brute = is_maximal_ms(space, budget);
      agrees = brute.is_maximal == cert.is_maximal;
      body["brute_force"] = {{"is_maximal", brute.is_maximal}, {"agrees", agrees}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
      body["brute_force"] = {{"skipped", "budget"}};
    }
  }
  if (!agrees) fail(ErrorCode::InternalContractViolation, "witness engine and brute force disagree");
  return {exit_for(cert.is_maximal), report_envelope(*f, body)};
}

CensusOptions census_options(const json& r) {
  CensusOptions opt;
  opt.compare_classification = get_bool(r, "compare_classification", false);
  opt.keep_witnesses = get_bool(r, "witnesses", false);
  opt.budget = budget_of(r);
  opt.census_budget = get_u64(r, "census_budget", kDefaultCensusBudget);
  return opt;
}

int census_exit(const CensusReport& rep) {
  bool ok = rep.heredity_holds && rep.witnesses_verified;
  if (rep.comparison) ok = ok && rep.comparison->exact_match;
  return exit_for(ok);
}

CommandResult cmd_census(const json& r) {
  const auto f = field_param(r);
  const auto rep = ms_census(f, need_u64(r, "n"), census_options(r));
  return {census_exit(rep), report_envelope(*f, census_report_to_json(rep))};
}

CommandResult cmd_oracle(const json& r) {
  const auto f = field_param(r);
  std::optional<std::uint64_t> samples;
  if (r.contains("samples")) samples = need_u64(r, "samples");
  const auto rep = oracle_compare(f, need_u64(r, "n"), samples, get_u64(r, "seed", 0), budget_of(r));
  return {exit_for(rep.agreement()), report_envelope(*f, oracle_report_to_json(rep))};
}

CommandResult cmd_classify2(const json& r) {
  const auto f = field_param(r);
  auto opt = census_options(r);
  opt.compare_classification = true;
  const auto rep = ms_census(f, 2, opt);
  json body = census_report_to_json(rep);
  const auto& c = *rep.comparison;
  bool explained = c.misses.empty();
  for (const auto& e : c.extras) explained = explained && e.irreducible_element.has_value();
  body["extras_explained_by_irreducible_spectrum"] = explained;
  return {census_exit(rep), report_envelope(*f, body)};
}

CommandResult cmd_basechange(const json& r) {
  const auto f = field_param(r);
  const auto s = scalar_from_json(f, need(r, "s"));
  const auto d = basechange_demo(f, s, budget_of(r));
  const bool flipped = d.v_verdict.is_ms() && !d.u_verdict.is_ms();
  json body = basechange_to_json(d);
  body["verdict_flips"] = flipped;
  return {exit_for(flipped && d.v_maximal), report_envelope(*f, body)};
}

CommandResult cmd_debondt(const json& r) {
  const auto p = get_u64(r, "p", 5);
  const auto rep = debondt_sample(need_u64(r, "samples"), get_u64(r, "seed", 0), static_cast<std::uint32_t>(p),
                                  get_u64(r, "n", 3), budget_of(r));
  json body = debondt_report_to_json(rep);
  body["n"] = get_u64(r, "n", 3);
  return {exit_for(rep.exceptions.empty()), report_envelope(*Field::prime(static_cast<std::uint32_t>(p)), body)};
}

using Handler = std::function<CommandResult(const json&)>;

const std::map<std::string_view, Handler>& handlers() {
  static const std::map<std::string_view, Handler> table = {
      {"certify", cmd_certify},          {"construct", cmd_construct},     {"maximal", cmd_maximal},
      {"census", cmd_census},            {"oracle-compare", cmd_oracle},   {"classify2", cmd_classify2},
      {"demo-basechange", cmd_basechange}, {"debondt-sample", cmd_debondt},
  };
  return table;
}

}  // namespace

const std::vector<std::string_view>& command_names() {
  static const std::vector<std::string_view> names = [] {
    std::vector<std::string_view> out;
    for (const auto& [name, _] : handlers()) out.push_back(name);
    return out;
  }();
  return names;
}

CommandResult run_command(std::string_view command, const json& request) {
  const auto it = handlers().find(command);
  if (it == handlers().end()) config_fail("unknown command \"" + std::string(command) + "\"");
  if (!request.is_object()) config_fail("request must be a JSON object");
  auto result = it->second(request);
  result.report["command"] = std::string(command);
  return result;
}

json error_report(ErrorCode code, std::string_view message) {
  return {{"schema_version", std::string(kReportSchema)},
          {"error", {{"code", std::string(to_string(code))}, {"message", std::string(message)}}}};
}

}  // namespace mz
