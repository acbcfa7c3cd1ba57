#ifndef MZ_CLASSIFY2_HPP
#define MZ_CLASSIFY2_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mz/mscore.hpp"

namespace mz {

/// Root structure of x^2 - Tr(a) x + det(a) over the field of a (2 x 2, finite).
enum class Spectrum { SplitDistinct, Repeated, Irreducible };
std::string_view to_string(Spectrum s) noexcept;
Spectrum spectrum_2x2(const Matrix& a);

struct Lemma31Report {
  std::uint64_t elements_checked = 0;
  std::uint64_t trace_nonzero = 0;
  /// Every trace-nonzero element is invertible. The check raises
  /// InternalContractViolation rather than returning false.
  bool part_i_holds = true;
  /// Only meaningful for dim V = 2.
  bool part_ii_applicable = false;
  bool part_ii_holds = true;
  std::optional<Matrix> part_ii_violation;
  std::optional<Spectrum> part_ii_violation_spectrum;
};

/// V must be a proper MS of M_2 over a finite field; raises NotAnMS otherwise.
Lemma31Report lemma31_check(const MatSubspace& v, std::uint64_t budget = kDefaultBudget);

enum class Classify2Kind { TraceZeroHyperplane, SplitDiagonalPlusNilpotent, UnipotentLine, Char2PlaneInH };
std::string_view to_string(Classify2Kind k) noexcept;

struct Classify2Family {
  Classify2Kind kind;
  /// "odd-char:i", "odd-char:ii", "odd-char:iii", "char-2:i" or "char-2:ii".
  std::string clause;
  MatSubspace space;
  /// Maximality of the member depends on the field being algebraically closed.
  bool closure_dependent = false;
  /// First parameters that produced the member.
  std::optional<Scalar> lambda1, lambda2;
  std::optional<Matrix> conjugator;
  std::optional<Matrix> nilpotent;
};

/// span{lambda1 e1 + lambda2 e2, e1 M_2 e2} with e_i = g E_ii g^-1.
/// Raises ParameterViolation unless lambda1 != lambda2, both nonzero and
/// lambda1 + lambda2 != 0; ZeroInverse for singular g.
MatSubspace build_cor32_family(const Scalar& lambda1, const Scalar& lambda2, const Matrix& g);

/// span{I_2 + c}; raises NotNilpotent unless c != 0 and c^2 = 0.
MatSubspace build_cor34_family(const Matrix& c);

/// The classified maximal families of M_2(F_q), deduplicated within each
/// clause and sorted canonically. Raises UnsupportedField in characteristic 0.
std::vector<Classify2Family> predicted_maximal_families(const FieldPtr& field);

struct BaseChangeDemo {
  FieldPtr base;
  Scalar s;
  Matrix a, b;
  MatSubspace v;
  MsVerdict v_verdict;
  /// "idempotent scan" over finite fields, "invertibility argument" over Q.
  std::string v_ms_method;
  bool v_maximal = false;
  /// Brute-force maximality over finite fields; absent over Q.
  std::optional<bool> v_maximal_brute_force;
  FieldPtr extension;
  MatSubspace u;
  Matrix c;
  MsVerdict u_verdict;
};

/// K is a prime field or Q. Checks run in order: ExcludedParameter for s in
/// {0, 1}, SquareParameter for a square s, ExcludedParameter for s = -1.
/// UnsupportedField for any other base.
BaseChangeDemo basechange_demo(const FieldPtr& base, const Scalar& s, std::uint64_t budget = kDefaultBudget);

}  // namespace mz

#endif
