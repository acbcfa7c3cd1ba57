#ifndef MZ_MSCORE_HPP
#define MZ_MSCORE_HPP

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mz/subspace.hpp"

namespace mz {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

enum class MsStatus { MS_Proper, MS_FullAlgebra, NotMS };
enum class VerdictMethod { IdempotentScan, DefinitionBruteForce, StructuralCertificate };

std::string_view to_string(MsStatus s) noexcept;
std::string_view to_string(VerdictMethod m) noexcept;

/// A triple (a, b, c) where every power of a lies in S but b a^m c leaves S
/// for the exponent m inside the eventual cycle of a.
struct DefinitionFailure {
  Matrix a;
  Matrix b;
  Matrix c;
  std::size_t exponent;
};

struct MsVerdict {
  MsStatus status;
  VerdictMethod method;
  /// Nonzero idempotent in S; present iff status is NotMS.
  std::optional<Matrix> witness;
  std::optional<DefinitionFailure> failure;

  bool is_ms() const noexcept { return status != MsStatus::NotMS; }
};

/// Exhaustive scan over coefficient tuples of the canonical basis in
/// lexicographic order; the first nonzero idempotent found is returned.
/// Requires q^dim(S) <= budget.
std::optional<Matrix> find_idempotent(const MatSubspace& s, std::uint64_t budget = kDefaultBudget);

MsVerdict ms_by_idempotent_criterion(const MatSubspace& s, std::uint64_t budget = kDefaultBudget);

/// Literal check of the definition over a finite field: for every a whose
/// powers all lie in S, every b, c and every exponent in the eventual cycle of
/// a, test b a^m c in S. Requires q^(2 n^2) <= budget.
MsVerdict ms_by_definition(const MatSubspace& s, std::uint64_t budget = kDefaultBudget);

/// NotMS verdict when `candidate` is a nonzero idempotent of s; works over
/// any field, including characteristic zero.
std::optional<MsVerdict> verdict_from_candidate(const MatSubspace& s, const Matrix& candidate);

/// H = I_n^perp, the trace-zero matrices.
MatSubspace trace_zero_space(FieldPtr field, std::size_t n);

enum class ExtensionOutcome { ContainsIdempotent, FullAlgebra, ExtensionIsMS };
std::string_view to_string(ExtensionOutcome o) noexcept;

struct ExtensionEvidence {
  Matrix direction;
  ExtensionOutcome outcome;
  std::optional<Matrix> idempotent;
};

/// Maximal means maximal among proper MSs.
struct MaximalityVerdict {
  bool is_maximal;
  MsVerdict base;
  std::vector<ExtensionEvidence> evidence;
};

/// Brute force: S must be a proper MS, and every one-step extension S + F w
/// must be the full algebra or contain a nonzero idempotent.
MaximalityVerdict is_maximal_ms(const MatSubspace& s, std::uint64_t budget = kDefaultBudget);

}  // namespace mz

#endif
