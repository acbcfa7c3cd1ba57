#ifndef MZ_MATRIX_HPP
#define MZ_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "mz/field.hpp"

namespace mz {

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  using FiniteStore = std::vector<std::uint32_t>;
  using RationalStore = std::vector<QNum>;

  Matrix(FieldPtr field, std::size_t rows, std::size_t cols);

  static Matrix identity(FieldPtr field, std::size_t n);
  /// E_ij of the given shape.
  static Matrix unit(FieldPtr field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);
  static Matrix from_ints(FieldPtr field, std::size_t rows, std::size_t cols, std::initializer_list<std::int64_t> entries);
  static Matrix from_ints(FieldPtr field, const std::vector<std::vector<std::int64_t>>& rows);
  static Matrix from_codes(FieldPtr field, std::size_t rows, std::size_t cols, FiniteStore codes);

  const FieldPtr& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& v);

  const FiniteStore& codes() const { return std::get<FiniteStore>(data_); }
  FiniteStore& codes() { return std::get<FiniteStore>(data_); }
  const RationalStore& qnums() const { return std::get<RationalStore>(data_); }
  RationalStore& qnums() { return std::get<RationalStore>(data_); }

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;

  Matrix transpose() const;
  Scalar trace() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_idempotent() const { return is_square() && *this * *this == *this; }

  /// 1 x (rows*cols) row vector, row-major.
  Matrix vectorize() const;
  /// Inverse of vectorize for a 1 x n^2 (or n^2-entry) row.
  Matrix reshape(std::size_t rows, std::size_t cols) const;
  Matrix row(std::size_t i) const;

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_compatible(const Matrix& o) const;

  FieldPtr field_;
  std::size_t rows_;
  std::size_t cols_;
  std::variant<FiniteStore, RationalStore> data_;
};

struct RankProfile {
  std::size_t rank;
  Matrix rref;
  std::vector<std::size_t> pivots;
};

RankProfile rank_profile(const Matrix& a);
std::size_t rank(const Matrix& a);

/// Rows of the result form a basis of {x : a x^T = 0}, in reduced echelon
/// order of the free variables.
Matrix null_space(const Matrix& a);

/// Raises ZeroInverse for singular input.
Matrix inverse(const Matrix& a);
Matrix power(const Matrix& a, std::uint64_t e);

/// a^m for m >= preperiod repeats with the given period; cycle holds
/// a^preperiod, ..., a^(preperiod+period-1).
struct PowerTail {
  std::size_t preperiod;
  std::size_t period;
  std::vector<Matrix> cycle;
};

/// Finite fields only; raises UnsupportedField in characteristic zero.
PowerTail power_tail(const Matrix& a);

/// Returns b with a b a = a, b a b = b and ab, ba idempotent of rank(a).
/// Built from a = P [I_r 0; 0 0] Q as b = Q^-1 [I_r 0; 0 0] P^-1.
Matrix rank_factorization(const Matrix& a);

}  // namespace mz

#endif
