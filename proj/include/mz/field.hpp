#ifndef MZ_FIELD_HPP
#define MZ_FIELD_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "mz/error.hpp"

namespace mz {

/// Element of Q or of a quadratic extension Q[t]/(t^2 + c1 t + c0), stored as
/// re + im*t. For plain Q the im part stays zero.
struct QNum {
  mpq_class re;
  mpq_class im;

  friend bool operator==(const QNum& a, const QNum& b) { return a.re == b.re && a.im == b.im; }
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An exact field: F_p, GF(p^k) = F_p[t]/(modulus), Q, or Q[t]/(t^2 + c1 t + c0).
///
/// Finite field elements are encoded as integer codes in [0, q): the code of
/// c_0 + c_1 t + ... + c_{k-1} t^{k-1} is sum c_i p^i, so code 0 is zero and
/// code 1 is one. Characteristic-zero elements are QNum values with reduced
/// GMP fractions.
class Field {
 public:
  enum class Kind { Prime, Extension, Rational, RationalQuadratic };

  static FieldPtr prime(std::uint32_t p);
  /// `modulus` is low-to-high, monic, of degree k >= 2, irreducible over F_p.
  static FieldPtr extension(std::uint32_t p, std::vector<std::uint32_t> modulus);
  static FieldPtr rationals();
  /// `modulus` is [c0, c1, 1]; t^2 + c1 t + c0 must have no rational root.
  static FieldPtr rational_quadratic(std::vector<mpq_class> modulus);

  Kind kind() const noexcept { return kind_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return k_; }
  bool is_finite() const noexcept { return kind_ == Kind::Prime || kind_ == Kind::Extension; }
  /// Number of elements; 0 for characteristic zero.
  std::uint64_t order() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  const std::vector<mpq_class>& rational_modulus() const noexcept { return qmodulus_; }

  bool same_as(const Field& other) const noexcept;
  std::string describe() const;

  // finite-field arithmetic on codes
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t from_int(std::int64_t v) const;
  std::vector<std::uint32_t> coefficients(std::uint32_t code) const;
  std::uint32_t from_coefficients(std::span<const std::int64_t> coeffs) const;

  // characteristic-zero arithmetic
  QNum add(const QNum& a, const QNum& b) const;
  QNum sub(const QNum& a, const QNum& b) const;
  QNum neg(const QNum& a) const;
  QNum mul(const QNum& a, const QNum& b) const;
  QNum inv(const QNum& a) const;

 private:
  Field() = default;
  void build_tables();
  std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t poly_add(std::uint32_t a, std::uint32_t b, bool subtract) const;

  Kind kind_ = Kind::Prime;
  std::uint32_t p_ = 0;
  std::uint32_t k_ = 1;
  std::uint64_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<mpq_class> qmodulus_;
  // Full add/mul tables for small extension fields, inverse table for all
  // extension fields up to 2^16 elements.
  std::vector<std::uint32_t> add_table_;
  std::vector<std::uint32_t> mul_table_;
  std::vector<std::uint32_t> inv_table_;
};

/// A field element tied to its field. Representation is canonical, so
/// equality is structural.
class Scalar {
 public:
  Scalar(FieldPtr field, std::uint32_t code);
  Scalar(FieldPtr field, QNum value);

  static Scalar zero(FieldPtr field);
  static Scalar one(FieldPtr field);
  static Scalar from_int(FieldPtr field, std::int64_t v);
  /// num/den mapped into the field; den must be invertible there.
  static Scalar from_rational(FieldPtr field, const mpq_class& v);

  const FieldPtr& field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;
  std::uint32_t code() const { return std::get<std::uint32_t>(value_); }
  const QNum& qnum() const { return std::get<QNum>(value_); }

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_same(const Scalar& o) const;

  FieldPtr field_;
  std::variant<std::uint32_t, QNum> value_;
};

/// F_q for a prime power q. Extensions use the first monic irreducible
/// modulus in order of increasing coefficient code (c_0 + c_1 p + ...).
FieldPtr field_of_order(std::uint64_t q);

/// Raises MixedFields unless both fields are interchangeable.
void require_same_field(const Field& a, const Field& b);

}  // namespace mz

#endif
