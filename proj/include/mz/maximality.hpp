#ifndef MZ_MAXIMALITY_HPP
#define MZ_MAXIMALITY_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "mz/constructions.hpp"

namespace mz {

enum class WitnessCase { Central, Case1, Case1Transposed, Case2 };
std::string_view to_string(WitnessCase c) noexcept;

/// A nonzero idempotent Q in V + F w for a two-block family member V and a
/// direction w outside V, with every intermediate quantity of the
/// construction kept for inspection.
struct WitnessBundle {
  Matrix direction;
  /// w reduced modulo the e_1 M e_3 and e_3 M e_2 parts of V:
  /// w0 in Z(T'), w1 in e_3 M e_1, w2 in e_2 M e_3.
  Matrix w0, w1, w2;
  WitnessCase kind;
  /// c with Q - c w in V.
  Scalar coefficient;

  /// Central: I_n = gamma * w + (I_n - gamma * w) with the second term in V.
  std::optional<Scalar> gamma;
  /// Case 1 (run in the transposed frame for Case1Transposed, where v, beta
  /// and rank refer to that frame): w1 v w1 = w1, v w1 v = v, r = rank(w1).
  std::optional<Matrix> v;
  std::optional<Scalar> beta;
  std::size_t rank = 0;
  /// Tr(Lambda Q) as given by the closed form sigma2 n3 + (sigma1-sigma2) beta r/(beta+1).
  std::optional<Scalar> trace_law;
  /// Case 2: alpha w0 + x0 = e_3 with x0 in Lambda^perp cap Z(T').
  std::optional<Scalar> alpha;
  std::optional<Matrix> x0;

  Matrix idempotent;
};

/// Raises DirectionInV when w is in V, FamilyPrecondition when V is not the
/// family's subspace, and InternalContractViolation if a produced witness
/// fails any of its identities.
WitnessBundle maximality_witness(const Family24& family, const MatSubspace& v, const Matrix& w);

struct MaximalityCertificate {
  bool is_maximal;
  /// "exhaustive" over finite fields, "theorem-backed spot check" otherwise.
  std::string_view mode;
  Thm21Certificate ms_certificate;
  std::vector<WitnessBundle> bundles;
};

/// Finite fields: one bundle per extension direction. Characteristic zero:
/// bundles for a basis of a complement of V and all pairwise sums.
MaximalityCertificate certify_maximal(const Family24& family, const MatSubspace& v);

}  // namespace mz

#endif
