#ifndef MZ_CONSTRUCTIONS_HPP
#define MZ_CONSTRUCTIONS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mz/subspace.hpp"

namespace mz {

/// Orthogonal idempotents e_1..e_t summing to I_n.
class IdempotentFrame {
 public:
  /// Validates e_i^2 = e_i, e_i e_j = 0 (i != j), sum = I_n; ranks computed.
  explicit IdempotentFrame(std::vector<Matrix> idempotents);
  /// Coordinate-block idempotents with the given (positive) ranks.
  static IdempotentFrame standard(FieldPtr field, const std::vector<std::size_t>& ranks);

  std::size_t size() const noexcept { return idempotents_.size(); }
  std::size_t n() const noexcept { return n_; }
  const FieldPtr& field() const noexcept { return idempotents_.front().field(); }
  const Matrix& operator[](std::size_t i) const { return idempotents_.at(i); }
  const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }

 private:
  std::vector<Matrix> idempotents_;
  std::vector<std::size_t> ranks_;
  std::size_t n_;
};

/// A frame whose members are grouped into parts P_1..P_s, each carrying a
/// rational f-value. Weights are ordered part pairs (P, Q) with weight space
/// e_P M_n e_Q and f(P, Q) = f(P) - f(Q); the f-values are pairwise distinct.
class GroupedFrame {
 public:
  GroupedFrame(IdempotentFrame frame, std::vector<std::vector<std::size_t>> parts, std::vector<mpq_class> f_values);
  /// Every idempotent its own part, f(e_i) = i (1-based).
  static GroupedFrame singletons(IdempotentFrame frame);

  const IdempotentFrame& frame() const noexcept { return frame_; }
  std::size_t part_count() const noexcept { return parts_.size(); }
  const std::vector<std::size_t>& part(std::size_t p) const { return parts_.at(p); }
  const mpq_class& f_value(std::size_t p) const { return f_values_.at(p); }
  const Matrix& part_idempotent(std::size_t p) const { return part_idempotents_.at(p); }
  std::size_t part_rank(std::size_t p) const { return part_ranks_.at(p); }
  std::size_t n() const noexcept { return frame_.n(); }
  const FieldPtr& field() const noexcept { return frame_.field(); }

  /// Ordered pairs (P, Q) with f(P) > f(Q).
  std::vector<std::pair<std::size_t, std::size_t>> positive_weights() const;

 private:
  IdempotentFrame frame_;
  std::vector<std::vector<std::size_t>> parts_;
  std::vector<mpq_class> f_values_;
  std::vector<Matrix> part_idempotents_;
  std::vector<std::size_t> part_ranks_;
};

/// Lambda = sum_P sigma_P e_P.
struct LambdaSpec {
  std::vector<Scalar> sigmas;
  Matrix lambda;

  static LambdaSpec make(const GroupedFrame& g, std::vector<Scalar> sigmas);
};

/// e_P a e_Q. Raises InvalidPart for a bad index.
Matrix weight_project(const Matrix& a, const GroupedFrame& g, std::size_t from_part, std::size_t to_part);
/// pi_0(a) = sum_P e_P a e_P.
Matrix zero_weight_project(const Matrix& a, const GroupedFrame& g);

/// First integer tuple 0 <= k_i <= bounds[i], not all zero, with
/// sum sigma_i k_i = 0 in F; empty when none exists.
std::vector<std::size_t> sigma_condition_failure(const std::vector<Scalar>& sigmas, const std::vector<std::size_t>& bounds);

struct Thm21Certificate {
  std::vector<std::size_t> part_ranks;
  std::uint64_t sigma_tuples_checked = 0;
  std::size_t containment_checks = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positive_weights;
  std::size_t product_checks = 0;
};

/// Verifies the structural hypotheses that make V an MS without any scan:
///  (i)   sum_P sigma_P k_P != 0 for all 0 <= k_P <= rank(e_P), not all zero;
///  (ii)  V and pi_0(V) lie in Lambda^perp;
///  (iii) pi_w(v) pi_{-w'}(v') = 0 for basis elements v, v' and positive
///        weights w, w'.
/// Raises HypothesisFailed naming the failing hypothesis and its witness.
Thm21Certificate thm21_certify(const MatSubspace& v, const GroupedFrame& g, const LambdaSpec& lambda);

/// Subspace plus the torus data that certifies it.
struct Construction {
  MatSubspace space;
  GroupedFrame frame;
  LambdaSpec lambda;
};

/// Block lower-triangular matrices with sum sigma_i Tr(a_ii) = 0, over the
/// standard frame with the given ranks. Raises SigmaConditionFailed.
Construction build_example22(FieldPtr field, const std::vector<std::size_t>& ranks, const std::vector<Scalar>& sigmas);

struct Example23 {
  MatSubspace space;
  /// e_1 x e_3 = 0 for every basis element x of the extension.
  bool corner_vanishes;
};

/// U = F(u + w) + V for u in e_1 M e_2, w in e_2 M e_3 with uw != 0.
/// Raises BadBlocks, ProductZero, or FamilyPrecondition (fewer than 3 parts).
Example23 build_example23_extension(const Construction& base, const Matrix& u, const Matrix& w);

/// The three-idempotent data of the two-block family
///   V = (Z(T') cap Lambda^perp) + e_1 M e_3 + e_3 M e_2,
/// where Z(T') = (e_1+e_2) M (e_1+e_2) + e_3 M e_3 and
/// Lambda = sigma_1 (e_1 + e_2) + sigma_2 e_3. e_1 or e_2 may be zero.
struct Family24 {
  FieldPtr field;
  std::size_t n1, n2, n3;
  Scalar sigma1, sigma2;
  Matrix e1, e2, e3;
  Matrix lambda;

  std::size_t n() const noexcept { return n1 + n2 + n3; }
  /// (Z(T') cap Lambda^perp) + e_1 M e_3 + e_3 M e_2.
  MatSubspace subspace() const;
  MatSubspace centralizer() const;
  /// Validates sigma_1 != sigma_2 and the pair condition over
  /// [0, n1+n2] x [0, n3]. Raises SigmaConditionFailed.
  void check_sigma_condition() const;
  /// The same family seen through transposition: e_1' = e_2^T, e_2' = e_1^T,
  /// e_3' = e_3^T.
  Family24 transposed() const;
  /// {e_1, e_2} with f = 1 and {e_3} with f = 3; zero members dropped.
  GroupedFrame grouped_frame() const;
};

struct Example24 {
  Construction construction;
  Family24 family;
};

/// Standard frame e_1 (first n1), e_2 (next n2), e_3 (last n3), grouped as
/// {e_1, e_2} with f = 1 and {e_3} with f = 3; a zero e_1 or e_2 is dropped
/// from the frame.
Example24 build_example24(FieldPtr field, std::size_t n1, std::size_t n2, std::size_t n3, const Scalar& sigma1,
                          const Scalar& sigma2);

/// (sigma_1 e_1 + sigma_2 e_2, e_1 M e_2)^perp with e_1 = diag(I_r, 0). The
/// family member is the two-block family with (n1, n2, n3) = (r, 0, n - r).
/// Raises RankOutOfRange, SigmaConditionFailed.
Example24 build_cor26(FieldPtr field, std::size_t n, std::size_t r, const Scalar& sigma1, const Scalar& sigma2);

/// Recovers the two-block family from a grouped frame, Lambda and V. Raises
/// FamilyPrecondition when the frame is not of that shape or V does not match.
Family24 family24_from(const GroupedFrame& g, const LambdaSpec& lambda, const MatSubspace& v);

/// span{ e_i E_kl e_j }.
MatSubspace block_space(const Matrix& left, const Matrix& right);

}  // namespace mz

#endif
