#include "mz/field.hpp"

#include <algorithm>
#include <sstream>

namespace mz {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::MixedFields: return "MixedFields";
    case ErrorCode::ImproperSubspace: return "ImproperSubspace";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::SigmaConditionFailed: return "SigmaConditionFailed";
    case ErrorCode::InvalidPart: return "InvalidPart";
    case ErrorCode::ProductZero: return "ProductZero";
    case ErrorCode::BadBlocks: return "BadBlocks";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::DirectionInV: return "DirectionInV";
    case ErrorCode::FamilyPrecondition: return "FamilyPrecondition";
    case ErrorCode::InternalContractViolation: return "InternalContractViolation";
    case ErrorCode::ParameterViolation: return "ParameterViolation";
    case ErrorCode::NotNilpotent: return "NotNilpotent";
    case ErrorCode::NotAnMS: return "NotAnMS";
    case ErrorCode::SquareParameter: return "SquareParameter";
    case ErrorCode::ExcludedParameter: return "ExcludedParameter";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 31;
constexpr std::uint64_t kTableOrder = 256;
constexpr std::uint64_t kInverseTableOrder = std::uint64_t{1} << 16;
constexpr std::uint64_t kFactorSearchBudget = 1'000'000;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

using Poly = std::vector<std::uint32_t>;  // low-to-high over F_p

std::uint32_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo monic d, over F_p.
Poly poly_rem(Poly a, const Poly& d, std::uint32_t p) {
  const std::size_t dd = d.size() - 1;
  while (a.size() > dd) {
    const std::uint64_t lead = a.back();
    if (lead != 0) {
      const std::size_t shift = a.size() - 1 - dd;
      for (std::size_t i = 0; i <= dd; ++i) {
        const std::uint64_t sub = lead * d[i] % p;
        a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
      }
    }
    a.pop_back();
  }
  return a;
}

bool is_zero_poly(const Poly& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

// Exhaustive search for a monic factor of degree 1..k/2.
bool is_irreducible(const Poly& modulus, std::uint32_t p) {
  const std::size_t k = modulus.size() - 1;
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) {
      count *= p;
      if (count > kFactorSearchBudget)
        fail(ErrorCode::UnsupportedField, "modulus too large for exhaustive irreducibility check");
    }
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Poly cand(d + 1, 0);
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < d; ++i) {
        cand[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      cand[d] = 1;
      if (is_zero_poly(poly_rem(modulus, cand, p))) return false;
    }
  }
  return true;
}

bool is_rational_square(const mpq_class& v) {
  if (v < 0) return false;
  return mpz_perfect_square_p(v.get_num_mpz_t()) != 0 && mpz_perfect_square_p(v.get_den_mpz_t()) != 0;
}

}  // namespace

FieldPtr Field::prime(std::uint32_t p) {
  if (!is_prime(p)) fail(ErrorCode::UnsupportedField, "characteristic " + std::to_string(p) + " is not prime");
  if (p >= kMaxOrder) fail(ErrorCode::UnsupportedField, "prime too large");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Prime;
  f->p_ = p;
  f->k_ = 1;
  f->q_ = p;
  return f;
}

FieldPtr Field::extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
  if (!is_prime(p)) fail(ErrorCode::UnsupportedField, "characteristic " + std::to_string(p) + " is not prime");
  if (modulus.size() < 2) fail(ErrorCode::UnsupportedField, "modulus must have positive degree");
  for (auto& c : modulus) c %= p;
  if (modulus.back() != 1) fail(ErrorCode::UnsupportedField, "modulus must be monic");
  const auto k = static_cast<std::uint32_t>(modulus.size() - 1);
  if (k == 1) return prime(p);
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q >= kMaxOrder) fail(ErrorCode::UnsupportedField, "field order too large");
  }
  if (!is_irreducible(modulus, p)) fail(ErrorCode::UnsupportedField, "modulus is reducible over F_" + std::to_string(p));
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::Extension;
  f->p_ = p;
  f->k_ = k;
  f->q_ = q;
  f->modulus_ = std::move(modulus);
  f->build_tables();
  return f;
}

FieldPtr Field::rationals() {
  static const FieldPtr q = [] {
    auto f = std::shared_ptr<Field>(new Field());
    f->kind_ = Kind::Rational;
    f->p_ = 0;
    f->k_ = 1;
    f->q_ = 0;
    return FieldPtr(f);
  }();
  return q;
}

FieldPtr Field::rational_quadratic(std::vector<mpq_class> modulus) {
  if (modulus.size() != 3) fail(ErrorCode::UnsupportedField, "only quadratic extensions of Q are supported");
  for (auto& c : modulus) c.canonicalize();
  if (modulus[2] != 1) fail(ErrorCode::UnsupportedField, "modulus must be monic");
  const mpq_class disc = modulus[1] * modulus[1] - 4 * modulus[0];
  if (is_rational_square(disc)) fail(ErrorCode::UnsupportedField, "modulus has a rational root");
  auto f = std::shared_ptr<Field>(new Field());
  f->kind_ = Kind::RationalQuadratic;
  f->p_ = 0;
  f->k_ = 2;
  f->q_ = 0;
  f->qmodulus_ = std::move(modulus);
  return f;
}

bool Field::same_as(const Field& other) const noexcept {
  if (this == &other) return true;
  return kind_ == other.kind_ && p_ == other.p_ && k_ == other.k_ && modulus_ == other.modulus_ &&
         qmodulus_ == other.qmodulus_;
}

std::string Field::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Prime: os << "F_" << p_; break;
    case Kind::Extension: os << "GF(" << p_ << "^" << k_ << ")"; break;
    case Kind::Rational: os << "Q"; break;
    case Kind::RationalQuadratic:
      os << "Q[t]/(t^2 + (" << qmodulus_[1].get_str() << ")t + (" << qmodulus_[0].get_str() << "))";
      break;
  }
  return os.str();
}

void Field::build_tables() {
  if (q_ <= kTableOrder) {
    add_table_.resize(q_ * q_);
    mul_table_.resize(q_ * q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      for (std::uint32_t b = 0; b < q_; ++b) {
        add_table_[a * q_ + b] = poly_add(a, b, false);
        mul_table_[a * q_ + b] = poly_mul(a, b);
      }
    }
  }
  if (q_ <= kInverseTableOrder) {
    inv_table_.assign(q_, 0);
    for (std::uint32_t a = 1; a < q_; ++a) {
      if (inv_table_[a] != 0) continue;
      for (std::uint32_t b = 1; b < q_; ++b) {
        if (mul(a, b) == 1) {
          inv_table_[a] = b;
          inv_table_[b] = a;
          break;
        }
      }
    }
  }
}

std::uint32_t Field::poly_add(std::uint32_t a, std::uint32_t b, bool subtract) const {
  std::uint32_t out = 0;
  std::uint32_t place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    const std::uint32_t da = a % p_, db = b % p_;
    a /= p_;
    b /= p_;
    const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
    out += d * place;
    place *= p_;
  }
  return out;
}

std::uint32_t Field::poly_mul(std::uint32_t a, std::uint32_t b) const {
  const auto ca = coefficients(a), cb = coefficients(b);
  Poly prod(2 * k_ - 1, 0);
  for (std::uint32_t i = 0; i < k_; ++i)
    for (std::uint32_t j = 0; j < k_; ++j)
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{ca[i]} * cb[j]) % p_);
  prod = poly_rem(std::move(prod), modulus_, p_);
  std::uint32_t out = 0, place = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += (i < prod.size() ? prod[i] : 0) * place;
    place *= p_;
  }
  return out;
}

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const {
  if (kind_ == Kind::Prime) {
    const std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  if (!add_table_.empty()) return add_table_[a * q_ + b];
  return poly_add(a, b, false);
}

std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const {
  if (kind_ == Kind::Prime) return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p_ - b);
  return poly_add(a, b, true);
}

std::uint32_t Field::neg(std::uint32_t a) const { return sub(0, a); }

std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const {
  if (kind_ == Kind::Prime) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  if (!mul_table_.empty()) return mul_table_[a * q_ + b];
  return poly_mul(a, b);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) fail(ErrorCode::ZeroInverse, "inverse of zero in " + describe());
  if (kind_ == Kind::Prime) return pow_mod(a, p_ - 2, p_);
  if (!inv_table_.empty()) return inv_table_[a];
  // a^(q-2)
  std::uint64_t e = q_ - 2;
  std::uint32_t r = 1, b = a;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::uint32_t Field::from_int(std::int64_t v) const {
  if (!is_finite()) fail(ErrorCode::UnsupportedField, "integer code requested in characteristic zero");
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> Field::coefficients(std::uint32_t code) const {
  std::vector<std::uint32_t> out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = code % p_;
    code /= p_;
  }
  return out;
}

std::uint32_t Field::from_coefficients(std::span<const std::int64_t> coeffs) const {
  if (coeffs.size() > k_) fail(ErrorCode::ParseError, "too many coefficients for " + describe());
  std::uint32_t out = 0, place = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    out += from_int(coeffs[i]) * place;
    place *= p_;
  }
  return out;
}

QNum Field::add(const QNum& a, const QNum& b) const { return {a.re + b.re, a.im + b.im}; }
QNum Field::sub(const QNum& a, const QNum& b) const { return {a.re - b.re, a.im - b.im}; }
QNum Field::neg(const QNum& a) const { return {-a.re, -a.im}; }

QNum Field::mul(const QNum& a, const QNum& b) const {
  if (kind_ == Kind::Rational) return {a.re * b.re, mpq_class(0)};
  // t^2 = -c1 t - c0
  const mpq_class tt = a.im * b.im;
  return {a.re * b.re - qmodulus_[0] * tt, a.re * b.im + a.im * b.re - qmodulus_[1] * tt};
}

QNum Field::inv(const QNum& a) const {
  if (a.re == 0 && a.im == 0) fail(ErrorCode::ZeroInverse, "inverse of zero in " + describe());
  if (kind_ == Kind::Rational) return {1 / a.re, mpq_class(0)};
  const mpq_class shifted = a.re - qmodulus_[1] * a.im;
  const mpq_class det = a.re * shifted + qmodulus_[0] * a.im * a.im;
  return {shifted / det, -a.im / det};
}

FieldPtr field_of_order(std::uint64_t q) {
  std::uint64_t p = 2;
  while (p <= q && q % p != 0) ++p;
  if (q < 2 || p > q) fail(ErrorCode::UnsupportedField, "no field of order " + std::to_string(q));
  std::uint32_t k = 0;
  for (std::uint64_t r = q; r > 1; r /= p, ++k)
    if (r % p != 0) fail(ErrorCode::UnsupportedField, std::to_string(q) + " is not a prime power");
  if (q >= kMaxOrder) fail(ErrorCode::UnsupportedField, "field order too large");
  const auto pp = static_cast<std::uint32_t>(p);
  if (k == 1) return Field::prime(pp);
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    Poly m(k + 1, 0);
    std::uint64_t rest = idx;
    for (std::uint32_t i = 0; i < k; ++i) {
      m[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    m[k] = 1;
    if (m[0] != 0 && is_irreducible(m, pp)) return Field::extension(pp, m);
  }
  fail(ErrorCode::InternalContractViolation, "no irreducible modulus found");
}

void require_same_field(const Field& a, const Field& b) {
  if (!a.same_as(b)) fail(ErrorCode::MixedFields, a.describe() + " vs " + b.describe());
}

// ---------------------------------------------------------------------------

Scalar::Scalar(FieldPtr field, std::uint32_t code) : field_(std::move(field)), value_(code) {
  if (!field_->is_finite()) fail(ErrorCode::UnsupportedField, "integer code in characteristic zero");
  if (code >= field_->order()) fail(ErrorCode::InvalidArgument, "code out of range");
}

Scalar::Scalar(FieldPtr field, QNum value) : field_(std::move(field)), value_(std::move(value)) {
  if (field_->is_finite()) fail(ErrorCode::UnsupportedField, "rational value in a finite field");
  auto& v = std::get<QNum>(value_);
  v.re.canonicalize();
  v.im.canonicalize();
  if (field_->kind() == Field::Kind::Rational && v.im != 0)
    fail(ErrorCode::InvalidArgument, "Q has no extension coordinate");
}

Scalar Scalar::zero(FieldPtr field) { return from_int(std::move(field), 0); }
Scalar Scalar::one(FieldPtr field) { return from_int(std::move(field), 1); }

Scalar Scalar::from_int(FieldPtr field, std::int64_t v) {
  if (field->is_finite()) {
    const auto code = field->from_int(v);
    return Scalar(std::move(field), code);
  }
  return Scalar(std::move(field), QNum{mpq_class(static_cast<long>(v)), mpq_class(0)});
}

Scalar Scalar::from_rational(FieldPtr field, const mpq_class& v) {
  if (!field->is_finite()) return Scalar(std::move(field), QNum{v, mpq_class(0)});
  const auto p = field->characteristic();
  const mpz_class num = v.get_num() % p, den = v.get_den() % p;
  const auto ni = field->from_int(num.get_si()), di = field->from_int(den.get_si());
  if (di == 0) fail(ErrorCode::ZeroInverse, "denominator vanishes in " + field->describe());
  const auto code = field->mul(ni, field->inv(di));
  return Scalar(std::move(field), code);
}

bool Scalar::is_zero() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 0;
  const auto& q = std::get<QNum>(value_);
  return q.re == 0 && q.im == 0;
}

bool Scalar::is_one() const {
  if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 1;
  const auto& q = std::get<QNum>(value_);
  return q.re == 1 && q.im == 0;
}

void Scalar::check_same(const Scalar& o) const { require_same_field(*field_, *o.field_); }

Scalar Scalar::operator+(const Scalar& o) const {
  check_same(o);
  if (field_->is_finite()) return Scalar(field_, field_->add(code(), o.code()));
  return Scalar(field_, field_->add(qnum(), o.qnum()));
}

Scalar Scalar::operator-(const Scalar& o) const {
  check_same(o);
  if (field_->is_finite()) return Scalar(field_, field_->sub(code(), o.code()));
  return Scalar(field_, field_->sub(qnum(), o.qnum()));
}

Scalar Scalar::operator*(const Scalar& o) const {
  check_same(o);
  if (field_->is_finite()) return Scalar(field_, field_->mul(code(), o.code()));
  return Scalar(field_, field_->mul(qnum(), o.qnum()));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  if (field_->is_finite()) return Scalar(field_, field_->neg(code()));
  return Scalar(field_, field_->neg(qnum()));
}

Scalar Scalar::inverse() const {
  if (field_->is_finite()) return Scalar(field_, field_->inv(code()));
  return Scalar(field_, field_->inv(qnum()));
}

bool Scalar::operator==(const Scalar& o) const {
  return field_->same_as(*o.field_) && value_ == o.value_;
}

std::string Scalar::to_string() const {
  std::ostringstream os;
  if (field_->kind() == Field::Kind::Prime) {
    os << code();
  } else if (field_->kind() == Field::Kind::Extension) {
    const auto c = field_->coefficients(code());
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << ']';
  } else if (field_->kind() == Field::Kind::Rational) {
    os << qnum().re.get_str();
  } else {
    os << '[' << qnum().re.get_str() << ',' << qnum().im.get_str() << ']';
  }
  return os.str();
}

}  // namespace mz
