#ifndef MZ_SUBSPACE_HPP
#define MZ_SUBSPACE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "mz/matrix.hpp"

namespace mz {

/// A subspace of M_n(F). Matrices are identified with F^{n^2} by row-major
/// vectorization; the basis is stored as the reduced row echelon form of the
/// stacked vectorizations, so equal subspaces compare equal structurally.
class MatSubspace {
 public:
  static MatSubspace zero(FieldPtr field, std::size_t n);
  static MatSubspace full(FieldPtr field, std::size_t n);
  /// Raises MixedFields or ShapeMismatch on inconsistent generators.
  static MatSubspace span_of(FieldPtr field, std::size_t n, const std::vector<Matrix>& mats);
  /// Rows of `rows` are vectorized generators (any rank).
  static MatSubspace from_rows(std::size_t n, const Matrix& rows);

  const FieldPtr& field() const noexcept { return echelon_.field(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  std::size_t ambient_dim() const noexcept { return n_ * n_; }
  std::size_t codim() const noexcept { return ambient_dim() - dim(); }
  bool is_full() const noexcept { return dim() == ambient_dim(); }

  /// dim x n^2 reduced echelon matrix.
  const Matrix& echelon() const noexcept { return echelon_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<Matrix> basis() const;

  bool contains(const Matrix& a) const;
  bool contains(const MatSubspace& s) const;

  /// sum_i coords[i] * basis[i]; finite fields only.
  Matrix element(const std::vector<std::uint32_t>& coords) const;

  bool operator==(const MatSubspace& o) const { return n_ == o.n_ && echelon_ == o.echelon_; }
  bool operator!=(const MatSubspace& o) const { return !(*this == o); }
  /// Total order on canonical forms (for deduplication); same field assumed.
  bool operator<(const MatSubspace& o) const;

 private:
  MatSubspace(std::size_t n, Matrix echelon, std::vector<std::size_t> pivots)
      : n_(n), echelon_(std::move(echelon)), pivots_(std::move(pivots)) {}

  std::size_t n_;
  Matrix echelon_;
  std::vector<std::size_t> pivots_;
};

/// {b : Tr(b x) = 0 for all x in s}.
MatSubspace trace_orthogonal(const MatSubspace& s);
MatSubspace sum(const MatSubspace& a, const MatSubspace& b);
MatSubspace intersect(const MatSubspace& a, const MatSubspace& b);
/// s + F w.
MatSubspace extend(const MatSubspace& s, const Matrix& w);

/// Walks one representative w per line of the quotient M_n(F_q)/S: the
/// complement spanned by the non-pivot unit matrices, with coordinate vectors
/// normalized so their first nonzero entry is 1. Yields (q^c - 1)/(q - 1)
/// directions for codimension c.
class DirectionEnumerator {
 public:
  /// Raises UnsupportedField in characteristic zero and ImproperSubspace when
  /// s is the full algebra.
  explicit DirectionEnumerator(const MatSubspace& s);

  std::optional<Matrix> next();
  std::uint64_t count() const noexcept { return count_; }

 private:
  FieldPtr field_;
  std::size_t n_;
  std::vector<std::size_t> free_cols_;
  std::uint64_t q_;
  std::size_t lead_ = 0;                // position of the leading 1
  std::vector<std::uint32_t> tail_;     // coordinates after the leading 1
  bool done_ = false;
  std::uint64_t count_ = 0;
};

std::vector<Matrix> extension_directions(const MatSubspace& s);

}  // namespace mz

#endif
