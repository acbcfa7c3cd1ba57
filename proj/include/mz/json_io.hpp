#ifndef MZ_JSON_IO_HPP
#define MZ_JSON_IO_HPP

#include <json.hpp>

#include "mz/census.hpp"
#include "mz/maximality.hpp"

namespace mz {

using json = nlohmann::ordered_json;

/// {"p": int, "k": int, "modulus": [...]?}. p = 0 selects Q; k = 2 with a
/// modulus [c0, c1, 1] of rational literals selects Q[t]/(t^2 + c1 t + c0).
json field_to_json(const Field& f);
FieldPtr field_from_json(const json& j);

/// Integer (prime field), coefficient list (extension of F_p), integer or
/// "num/den" string (Q), [re, im] pair of rational literals (quadratic over Q).
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const FieldPtr& field, const json& j);

/// Field keys plus "rows". When `field` is given the literal may omit the
/// field keys; if present they must match.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const FieldPtr& field = nullptr);

/// {"field": field, "n": int, "basis": [matrix literal...]}; emitted basis is
/// the canonical echelon basis.
json subspace_to_json(const MatSubspace& s);
MatSubspace subspace_from_json(const json& j);

json verdict_to_json(const MsVerdict& v);
json maximality_to_json(const MaximalityVerdict& v);
json certificate_to_json(const Thm21Certificate& c);
json bundle_to_json(const WitnessBundle& b);
json maximality_certificate_to_json(const MaximalityCertificate& c);
json family_to_json(const Classify2Family& f);
json lemma31_to_json(const Lemma31Report& r);
json basechange_to_json(const BaseChangeDemo& d);
json oracle_report_to_json(const OracleReport& r);
json census_report_to_json(const CensusReport& r);
json debondt_report_to_json(const DeBondtReport& r);

/// {"schema_version": ..., "field": ...} followed by the body's keys.
json report_envelope(const Field& f, const json& body);

}  // namespace mz

#endif
