#ifndef MZ_CENSUS_HPP
#define MZ_CENSUS_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "mz/classify2.hpp"

namespace mz {

inline constexpr std::string_view kReportSchema = "mz-report/1";
/// Default cap on the number of subspaces a census may visit.
inline constexpr std::uint64_t kDefaultCensusBudget = 200'000;

/// Walks the k-dimensional subspaces of F_q^d exactly once each, as k x d
/// reduced echelon matrices: pivot sets in lexicographic order, then free
/// entries as an odometer. Raises BudgetExceeded when q^(k(d-k)) > budget.
class SubspaceEnumerator {
 public:
  SubspaceEnumerator(FieldPtr field, std::size_t d, std::size_t k, std::uint64_t budget = kDefaultBudget);
  std::optional<Matrix> next();

 private:
  bool next_pivots();
  void reset_free();

  FieldPtr field_;
  std::size_t d_, k_;
  std::uint32_t q_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_slots_;  // flat positions r*d + c
  std::vector<std::uint32_t> free_vals_;
  bool started_ = false;
  bool done_ = false;
};

/// [d choose k]_q.
std::uint64_t gaussian_binomial(std::uint64_t d, std::uint64_t k, std::uint64_t q);

/// All k-dimensional subspaces of M_n(F_q).
std::vector<MatSubspace> enumerate_matrix_subspaces(const FieldPtr& field, std::size_t n, std::size_t k,
                                                    std::uint64_t budget = kDefaultBudget);

/// Draws k-dimensional subspaces of F_q^d: uniform pivot set, uniform free
/// entries. Not uniform over subspaces.
class RandomSubspaceSampler {
 public:
  RandomSubspaceSampler(FieldPtr field, std::size_t d, std::uint64_t seed);
  Matrix draw(std::size_t k);
  std::uint64_t next_u64() { return rng_(); }

 private:
  FieldPtr field_;
  std::size_t d_;
  std::mt19937_64 rng_;
};

struct DimensionTally {
  std::size_t dim = 0;
  std::uint64_t subspaces = 0;
  std::uint64_t expected_subspaces = 0;
  std::uint64_t ms = 0;
  std::uint64_t maximal_ms = 0;
};

struct OracleDisagreement {
  MatSubspace space;
  MsStatus by_definition;
  MsStatus by_criterion;
};

struct OracleReport {
  FieldPtr field;
  std::size_t n = 0;
  /// "full" or "sampled".
  std::string mode;
  std::uint64_t seed = 0;
  std::uint64_t checked = 0;
  std::vector<DimensionTally> tallies;
  std::vector<OracleDisagreement> disagreements;
  bool agreement() const noexcept { return disagreements.empty(); }
};

/// Full mode runs both verdicts on every proper subspace. With `samples`
/// set, draws that many seeded proper subspaces instead.
OracleReport oracle_compare(const FieldPtr& field, std::size_t n, std::optional<std::uint64_t> samples = std::nullopt,
                            std::uint64_t seed = 0, std::uint64_t budget = kDefaultBudget);

struct NotMsWitness {
  MatSubspace space;
  Matrix witness;
};

struct PredictionCheck {
  Classify2Family family;
  bool maximal_in_census = false;
};

struct ExtraMaximal {
  MatSubspace space;
  /// A trace-nonzero element with irreducible characteristic polynomial, if any.
  std::optional<Matrix> irreducible_element;
};

struct ClassificationComparison {
  std::vector<PredictionCheck> predicted;
  /// Census maximal MSs absent from the prediction.
  std::vector<ExtraMaximal> extras;
  /// Predicted members that the census does not find maximal, restricted to
  /// clauses that do not depend on closure.
  std::vector<Classify2Family> misses;
  /// Clause label -> (members, members maximal in census).
  std::vector<std::tuple<std::string, std::uint64_t, std::uint64_t>> clause_summary;
  bool exact_match = false;
};

struct CensusReport {
  FieldPtr field;
  std::size_t n = 0;
  std::vector<DimensionTally> tallies;
  std::vector<MatSubspace> maximal_ms;
  std::uint64_t not_ms = 0;
  /// Filled only when witnesses were requested.
  std::vector<NotMsWitness> witnesses;
  bool witnesses_verified = true;
  bool heredity_holds = true;
  std::uint64_t heredity_pairs_checked = 0;
  std::optional<ClassificationComparison> comparison;
};

struct CensusOptions {
  bool compare_classification = false;
  bool keep_witnesses = false;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t census_budget = kDefaultCensusBudget;
};

CensusReport ms_census(const FieldPtr& field, std::size_t n, const CensusOptions& options = {});

struct DeBondtReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t with_idempotent = 0;
  std::uint64_t resampled_inside_h = 0;
  std::vector<MatSubspace> exceptions;
  /// First few (subspace, idempotent) pairs, in draw order.
  std::vector<NotMsWitness> examples;
};

/// Seeded codimension-2 subspaces of M_n(F_p) not contained in H, each
/// scanned for a nonzero idempotent. Raises HypothesisFailed unless
/// p >= n.
DeBondtReport debondt_sample(std::uint64_t samples, std::uint64_t seed, std::uint32_t p = 5, std::size_t n = 3,
                             std::uint64_t budget = kDefaultBudget);

}  // namespace mz

#endif
