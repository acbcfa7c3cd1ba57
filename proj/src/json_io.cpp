#include "mz/json_io.hpp"

#include <string>

namespace mz {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) parse_fail(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

mpq_class rational_from_json(const json& j) {
  if (j.is_number_integer()) return mpq_class(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) parse_fail("rational literal must be an integer or a \"num/den\" string");
  mpq_class v;
  const auto s = j.get<std::string>();
  if (s.empty() || v.set_str(s, 10) != 0) parse_fail("bad rational literal \"" + s + "\"");
  if (v.get_den() == 0) parse_fail("zero denominator in \"" + s + "\"");
  v.canonicalize();
  return v;
}

json rational_to_json(const mpq_class& v) {
  if (v.get_den() == 1 && v.get_num().fits_slong_p()) return v.get_num().get_si();
  return v.get_str();
}

}  // namespace

json field_to_json(const Field& f) {
  json j;
  j["p"] = f.characteristic();
  j["k"] = f.degree();
  if (f.kind() == Field::Kind::Extension) j["modulus"] = f.modulus();
  if (f.kind() == Field::Kind::RationalQuadratic) {
    json m = json::array();
    for (const auto& c : f.rational_modulus()) m.push_back(rational_to_json(c));
    j["modulus"] = m;
  }
  return j;
}

FieldPtr field_from_json(const json& j) {
  const auto p = as_int(require(j, "p"), "p");
  const auto k = j.contains("k") ? as_int(j.at("k"), "k") : 1;
  if (p < 0 || k < 1) parse_fail("field needs p >= 0 and k >= 1");
  if (p == 0) {
    if (k == 1) {
      if (j.contains("modulus")) parse_fail("Q takes no modulus");
      return Field::rationals();
    }
    const auto& m = require(j, "modulus");
    if (!m.is_array()) parse_fail("modulus must be a list");
    std::vector<mpq_class> coeffs;
    for (const auto& c : m) coeffs.push_back(rational_from_json(c));
    if (coeffs.size() != static_cast<std::size_t>(k) + 1) parse_fail("modulus degree differs from k");
    return Field::rational_quadratic(std::move(coeffs));
  }
  if (p > 0xffffffffLL) fail(ErrorCode::UnsupportedField, "characteristic too large");
  const auto pp = static_cast<std::uint32_t>(p);
  if (k == 1) {
    if (j.contains("modulus")) parse_fail("prime field takes no modulus");
    return Field::prime(pp);
  }
  const auto& m = require(j, "modulus");
  if (!m.is_array()) parse_fail("modulus must be a list");
  if (m.size() != static_cast<std::size_t>(k) + 1) parse_fail("modulus degree differs from k");
  std::vector<std::uint32_t> coeffs;
  for (const auto& c : m) {
    const auto v = as_int(c, "modulus coefficient");
    coeffs.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
  }
  return Field::extension(pp, std::move(coeffs));
}

json scalar_to_json(const Scalar& s) {
  const auto& f = *s.field();
  switch (f.kind()) {
    case Field::Kind::Prime: return s.code();
    case Field::Kind::Extension: return f.coefficients(s.code());
    case Field::Kind::Rational: return rational_to_json(s.qnum().re);
    case Field::Kind::RationalQuadratic: return json::array({rational_to_json(s.qnum().re), rational_to_json(s.qnum().im)});
  }
  return nullptr;
}

Scalar scalar_from_json(const FieldPtr& field, const json& j) {
  switch (field->kind()) {
    case Field::Kind::Prime:
      if (j.is_string()) return Scalar::from_rational(field, rational_from_json(j));
      return Scalar::from_int(field, as_int(j, "scalar"));
    case Field::Kind::Extension: {
      if (j.is_number_integer()) return Scalar::from_int(field, j.get<std::int64_t>());
      if (!j.is_array()) parse_fail("extension-field scalar must be a coefficient list");
      std::vector<std::int64_t> c;
      for (const auto& x : j) c.push_back(as_int(x, "coefficient"));
      return Scalar(field, field->from_coefficients(c));
    }
    case Field::Kind::Rational: return Scalar::from_rational(field, rational_from_json(j));
    case Field::Kind::RationalQuadratic: {
      if (!j.is_array()) return Scalar::from_rational(field, rational_from_json(j));
      if (j.size() > 2) parse_fail("quadratic scalar takes at most two coordinates");
      QNum v{j.size() > 0 ? rational_from_json(j[0]) : mpq_class(0), j.size() > 1 ? rational_from_json(j[1]) : mpq_class(0)};
      return Scalar(field, std::move(v));
    }
  }
  parse_fail("unknown field kind");
}

json matrix_to_json(const Matrix& m) {
  json j = field_to_json(*m.field());
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(i, c)));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

Matrix matrix_from_json(const json& j, const FieldPtr& field) {
  FieldPtr f = field;
  const json* rows = &j;
  if (j.is_object()) {
    rows = &require(j, "rows");
    if (j.contains("p")) {
      auto own = field_from_json(j);
      if (f) require_same_field(*f, *own);
      f = own;
    }
  }
  if (!f) parse_fail("matrix literal needs field keys");
  if (!rows->is_array() || rows->empty()) parse_fail("rows must be a nonempty list");
  const std::size_t r = rows->size();
  const std::size_t c = (*rows)[0].is_array() ? (*rows)[0].size() : 0;
  if (c == 0) parse_fail("rows must be nonempty lists");
  Matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    const auto& row = (*rows)[i];
    if (!row.is_array() || row.size() != c) fail(ErrorCode::ShapeMismatch, "ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) m.set(i, k, scalar_from_json(f, row[k]));
  }
  return m;
}

json subspace_to_json(const MatSubspace& s) {
  json j;
  j["field"] = field_to_json(*s.field());
  j["n"] = s.n();
  j["dim"] = s.dim();
  json basis = json::array();
  for (const auto& b : s.basis()) basis.push_back(matrix_to_json(b));
  j["basis"] = std::move(basis);
  return j;
}

MatSubspace subspace_from_json(const json& j) {
  auto f = field_from_json(require(j, "field"));
  const auto n = as_int(require(j, "n"), "n");
  if (n < 1) parse_fail("n must be positive");
  const auto& basis = require(j, "basis");
  if (!basis.is_array()) parse_fail("basis must be a list");
  std::vector<Matrix> mats;
  for (const auto& b : basis) {
    auto m = matrix_from_json(b, f);
    if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n))
      fail(ErrorCode::ShapeMismatch, "basis matrix is not n x n");
    mats.push_back(std::move(m));
  }
  return MatSubspace::span_of(f, static_cast<std::size_t>(n), mats);
}

json verdict_to_json(const MsVerdict& v) {
  json j;
  j["status"] = to_string(v.status);
  if (v.witness) j["witness"] = matrix_to_json(*v.witness);
  j["method"] = to_string(v.method);
  json ev = json::array();
  if (v.witness) {
    const Matrix& w = *v.witness;
    ev.push_back({{"check", "witness squared equals witness"}, {"holds", w * w == w}});
    ev.push_back({{"check", "witness nonzero"}, {"holds", !w.is_zero()}});
  }
  if (v.failure) {
    ev.push_back({{"check", "definition failure"},
                  {"a", matrix_to_json(v.failure->a)},
                  {"b", matrix_to_json(v.failure->b)},
                  {"c", matrix_to_json(v.failure->c)},
                  {"exponent", v.failure->exponent}});
  }
  j["evidence"] = std::move(ev);
  return j;
}

json maximality_to_json(const MaximalityVerdict& v) {
  json j;
  j["is_maximal"] = v.is_maximal;
  j["base"] = verdict_to_json(v.base);
  json ev = json::array();
  for (const auto& e : v.evidence) {
    json x{{"direction", matrix_to_json(e.direction)}, {"outcome", to_string(e.outcome)}};
    if (e.idempotent) x["idempotent"] = matrix_to_json(*e.idempotent);
    ev.push_back(std::move(x));
  }
  j["extensions_checked"] = v.evidence.size();
  j["evidence"] = std::move(ev);
  return j;
}

json certificate_to_json(const Thm21Certificate& c) {
  json w = json::array();
  for (const auto& [a, b] : c.positive_weights) w.push_back({a, b});
  return {{"part_ranks", c.part_ranks},
          {"sigma_tuples_checked", c.sigma_tuples_checked},
          {"containment_checks", c.containment_checks},
          {"positive_weights", w},
          {"product_checks", c.product_checks}};
}

json bundle_to_json(const WitnessBundle& b) {
  json j;
  j["direction"] = matrix_to_json(b.direction);
  j["case"] = to_string(b.kind);
  j["w0"] = matrix_to_json(b.w0);
  j["w1"] = matrix_to_json(b.w1);
  j["w2"] = matrix_to_json(b.w2);
  j["coefficient"] = scalar_to_json(b.coefficient);
  if (b.gamma) j["gamma"] = scalar_to_json(*b.gamma);
  if (b.v) j["v"] = matrix_to_json(*b.v);
  if (b.beta) j["beta"] = scalar_to_json(*b.beta);
  if (b.kind == WitnessCase::Case1 || b.kind == WitnessCase::Case1Transposed) j["rank"] = b.rank;
  if (b.trace_law) j["trace_law"] = scalar_to_json(*b.trace_law);
  if (b.alpha) j["alpha"] = scalar_to_json(*b.alpha);
  if (b.x0) j["x0"] = matrix_to_json(*b.x0);
  j["idempotent"] = matrix_to_json(b.idempotent);
  return j;
}

json maximality_certificate_to_json(const MaximalityCertificate& c) {
  json cases = json::object();
  for (auto k : {WitnessCase::Central, WitnessCase::Case1, WitnessCase::Case1Transposed, WitnessCase::Case2})
    cases[std::string(to_string(k))] = 0;
  json bundles = json::array();
  for (const auto& b : c.bundles) {
    cases[std::string(to_string(b.kind))] = cases[std::string(to_string(b.kind))].get<std::size_t>() + 1;
    bundles.push_back(bundle_to_json(b));
  }
  return {{"is_maximal", c.is_maximal},
          {"mode", c.mode},
          {"ms_certificate", certificate_to_json(c.ms_certificate)},
          {"directions", c.bundles.size()},
          {"case_counts", cases},
          {"bundles", bundles}};
}

json family_to_json(const Classify2Family& f) {
  json j;
  j["kind"] = to_string(f.kind);
  j["clause"] = f.clause;
  j["closure_dependent"] = f.closure_dependent;
  j["space"] = subspace_to_json(f.space);
  if (f.lambda1) j["lambda1"] = scalar_to_json(*f.lambda1);
  if (f.lambda2) j["lambda2"] = scalar_to_json(*f.lambda2);
  if (f.conjugator) j["conjugator"] = matrix_to_json(*f.conjugator);
  if (f.nilpotent) j["nilpotent"] = matrix_to_json(*f.nilpotent);
  return j;
}

json lemma31_to_json(const Lemma31Report& r) {
  json j{{"elements_checked", r.elements_checked},
         {"trace_nonzero", r.trace_nonzero},
         {"trace_nonzero_invertible", r.part_i_holds},
         {"plane_check_applicable", r.part_ii_applicable},
         {"plane_check_holds", r.part_ii_holds}};
  if (r.part_ii_violation) j["plane_violation"] = matrix_to_json(*r.part_ii_violation);
  if (r.part_ii_violation_spectrum) j["plane_violation_spectrum"] = to_string(*r.part_ii_violation_spectrum);
  return j;
}

json basechange_to_json(const BaseChangeDemo& d) {
  json j;
  j["s"] = scalar_to_json(d.s);
  j["a"] = matrix_to_json(d.a);
  j["b"] = matrix_to_json(d.b);
  j["v"] = subspace_to_json(d.v);
  j["v_verdict"] = verdict_to_json(d.v_verdict);
  j["v_ms_method"] = d.v_ms_method;
  j["v_maximal"] = d.v_maximal;
  if (d.v_maximal_brute_force) j["v_maximal_brute_force"] = *d.v_maximal_brute_force;
  j["extension"] = field_to_json(*d.extension);
  j["u"] = subspace_to_json(d.u);
  j["c"] = matrix_to_json(d.c);
  j["c_idempotent"] = d.c.is_idempotent() && !d.c.is_zero();
  j["u_verdict"] = verdict_to_json(d.u_verdict);
  return j;
}

namespace {

json tallies_to_json(const std::vector<DimensionTally>& ts, bool with_maximal) {
  json out = json::array();
  for (const auto& t : ts) {
    json x{{"dim", t.dim}, {"subspaces", t.subspaces}, {"expected_subspaces", t.expected_subspaces}, {"ms", t.ms}};
    if (with_maximal) x["maximal_ms"] = t.maximal_ms;
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

json oracle_report_to_json(const OracleReport& r) {
  json d = json::array();
  for (const auto& x : r.disagreements)
    d.push_back({{"space", subspace_to_json(x.space)},
                 {"by_definition", to_string(x.by_definition)},
                 {"by_criterion", to_string(x.by_criterion)}});
  json j{{"n", r.n}, {"mode", r.mode}};
  if (r.mode == "sampled") j["seed"] = r.seed;
  j["checked"] = r.checked;
  j["tallies"] = tallies_to_json(r.tallies, false);
  j["agreement"] = r.agreement();
  j["disagreements"] = std::move(d);
  return j;
}

json census_report_to_json(const CensusReport& r) {
  json j;
  j["n"] = r.n;
  j["tallies"] = tallies_to_json(r.tallies, true);
  json mx = json::array();
  for (const auto& s : r.maximal_ms) mx.push_back(subspace_to_json(s));
  j["maximal_ms"] = std::move(mx);
  j["not_ms"] = r.not_ms;
  j["witnesses_verified"] = r.witnesses_verified;
  if (!r.witnesses.empty()) {
    json w = json::array();
    for (const auto& x : r.witnesses) w.push_back({{"space", subspace_to_json(x.space)}, {"witness", matrix_to_json(x.witness)}});
    j["witnesses"] = std::move(w);
  }
  j["heredity_holds"] = r.heredity_holds;
  j["heredity_pairs_checked"] = r.heredity_pairs_checked;
  if (r.comparison) {
    const auto& c = *r.comparison;
    json cmp;
    json pred = json::array();
    for (const auto& p : c.predicted) {
      json x = family_to_json(p.family);
      x["maximal_in_census"] = p.maximal_in_census;
      pred.push_back(std::move(x));
    }
    json extras = json::array();
    for (const auto& e : c.extras) {
      json x{{"space", subspace_to_json(e.space)}};
      if (e.irreducible_element) x["irreducible_element"] = matrix_to_json(*e.irreducible_element);
      extras.push_back(std::move(x));
    }
    json misses = json::array();
    for (const auto& m : c.misses) misses.push_back(family_to_json(m));
    json summary = json::array();
    for (const auto& [label, members, maximal] : c.clause_summary)
      summary.push_back({{"clause", label}, {"members", members}, {"maximal_in_census", maximal}});
    cmp["clause_summary"] = std::move(summary);
    cmp["exact_match"] = c.exact_match;
    cmp["predicted"] = std::move(pred);
    cmp["extras"] = std::move(extras);
    cmp["misses"] = std::move(misses);
    j["comparison"] = std::move(cmp);
  }
  return j;
}

json debondt_report_to_json(const DeBondtReport& r) {
  json ex = json::array();
  for (const auto& e : r.exceptions) ex.push_back(subspace_to_json(e));
  json samples = json::array();
  for (const auto& e : r.examples)
    samples.push_back({{"space", subspace_to_json(e.space)}, {"idempotent", matrix_to_json(e.witness)}});
  return {{"samples", r.samples},
          {"seed", r.seed},
          {"with_idempotent", r.with_idempotent},
          {"resampled_inside_h", r.resampled_inside_h},
          {"exceptions", ex},
          {"examples", samples}};
}

json report_envelope(const Field& f, const json& body) {
  json j;
  j["schema_version"] = std::string(kReportSchema);
  j["field"] = field_to_json(f);
  for (const auto& item : body.items()) j[item.key()] = item.value();
  return j;
}

}  // namespace mz
