#include "mz/matrix.hpp"

#include <map>
#include <sstream>

#include "arith.hpp"

namespace mz {

using detail::with_arith;

Matrix::Matrix(FieldPtr field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
  if (field_->is_finite())
    data_ = FiniteStore(rows * cols, 0);
  else
    data_ = RationalStore(rows * cols, QNum{mpq_class(0), mpq_class(0)});
}

Matrix Matrix::identity(FieldPtr field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  const auto one = Scalar::one(m.field_);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, one);
  return m;
}

Matrix Matrix::unit(FieldPtr field, std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  Matrix m(std::move(field), rows, cols);
  m.set(i, j, Scalar::one(m.field_));
  return m;
}

Matrix Matrix::from_ints(FieldPtr field, std::size_t rows, std::size_t cols, std::initializer_list<std::int64_t> entries) {
  if (entries.size() != rows * cols) fail(ErrorCode::ShapeMismatch, "entry count does not match shape");
  Matrix m(std::move(field), rows, cols);
  std::size_t idx = 0;
  for (auto v : entries) {
    m.set(idx / cols, idx % cols, Scalar::from_int(m.field_, v));
    ++idx;
  }
  return m;
}

Matrix Matrix::from_ints(FieldPtr field, const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
  Matrix m(std::move(field), r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) fail(ErrorCode::ShapeMismatch, "ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar::from_int(m.field_, rows[i][j]));
  }
  return m;
}

Matrix Matrix::from_codes(FieldPtr field, std::size_t rows, std::size_t cols, FiniteStore codes) {
  if (!field->is_finite()) fail(ErrorCode::UnsupportedField, "codes require a finite field");
  if (codes.size() != rows * cols) fail(ErrorCode::ShapeMismatch, "entry count does not match shape");
  for (auto c : codes)
    if (c >= field->order()) fail(ErrorCode::InvalidArgument, "code out of range");
  Matrix m(std::move(field), rows, cols);
  m.data_ = std::move(codes);
  return m;
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) fail(ErrorCode::ShapeMismatch, "index out of range");
  if (field_->is_finite()) return Scalar(field_, codes()[i * cols_ + j]);
  return Scalar(field_, qnums()[i * cols_ + j]);
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& v) {
  if (i >= rows_ || j >= cols_) fail(ErrorCode::ShapeMismatch, "index out of range");
  require_same_field(*field_, *v.field());
  if (field_->is_finite())
    codes()[i * cols_ + j] = v.code();
  else
    qnums()[i * cols_ + j] = v.qnum();
}

void Matrix::check_compatible(const Matrix& o) const {
  require_same_field(*field_, *o.field_);
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::ShapeMismatch, "operand shapes differ");
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_compatible(o);
  Matrix out = *this;
  with_arith(*field_, [&](auto ar) {
    auto& d = ar.store(out);
    const auto& s = ar.store(o);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = ar.add(d[i], s[i]);
  });
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  check_compatible(o);
  Matrix out = *this;
  with_arith(*field_, [&](auto ar) {
    auto& d = ar.store(out);
    const auto& s = ar.store(o);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = ar.sub(d[i], s[i]);
  });
  return out;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  with_arith(*field_, [&](auto ar) {
    for (auto& x : ar.store(out)) x = ar.neg(x);
  });
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require_same_field(*field_, *o.field_);
  if (cols_ != o.rows_) fail(ErrorCode::ShapeMismatch, "inner dimensions differ");
  Matrix out(field_, rows_, o.cols_);
  with_arith(*field_, [&](auto ar) {
    const auto& a = ar.store(*this);
    const auto& b = ar.store(o);
    auto& c = ar.store(out);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const auto& aik = a[i * cols_ + k];
        if (ar.is_zero(aik)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          c[i * o.cols_ + j] = ar.add(c[i * o.cols_ + j], ar.mul(aik, b[k * o.cols_ + j]));
      }
  });
  return out;
}

Matrix Matrix::scaled(const Scalar& s) const {
  require_same_field(*field_, *s.field());
  Matrix out = *this;
  if (field_->is_finite()) {
    for (auto& x : out.codes()) x = field_->mul(x, s.code());
  } else {
    for (auto& x : out.qnums()) x = field_->mul(x, s.qnum());
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  with_arith(*field_, [&](auto ar) {
    const auto& a = ar.store(*this);
    auto& b = ar.store(out);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) b[j * rows_ + i] = a[i * cols_ + j];
  });
  return out;
}

Scalar Matrix::trace() const {
  if (!is_square()) fail(ErrorCode::ShapeMismatch, "trace of a non-square matrix");
  Scalar t = Scalar::zero(field_);
  for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
  return t;
}

bool Matrix::is_zero() const {
  return with_arith(*field_, [&](auto ar) {
    for (const auto& x : ar.store(*this))
      if (!ar.is_zero(x)) return false;
    return true;
  });
}

bool Matrix::is_identity() const {
  return is_square() && *this == identity(field_, rows_);
}

Matrix Matrix::vectorize() const { return reshape(1, rows_ * cols_); }

Matrix Matrix::reshape(std::size_t rows, std::size_t cols) const {
  if (rows * cols != rows_ * cols_) fail(ErrorCode::ShapeMismatch, "reshape changes entry count");
  Matrix out = *this;
  out.rows_ = rows;
  out.cols_ = cols;
  return out;
}

Matrix Matrix::row(std::size_t i) const {
  if (i >= rows_) fail(ErrorCode::ShapeMismatch, "row out of range");
  Matrix out(field_, 1, cols_);
  with_arith(*field_, [&](auto ar) {
    const auto& a = ar.store(*this);
    auto& b = ar.store(out);
    for (std::size_t j = 0; j < cols_; ++j) b[j] = a[i * cols_ + j];
  });
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_->same_as(*o.field_) && data_ == o.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", " : "") << '[';
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j).to_string();
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

RankProfile rank_profile(const Matrix& a) {
  Matrix r = a;
  auto pivots = with_arith(*a.field(), [&](auto ar) { return detail::rref_in_place(ar, ar.store(r), a.rows(), a.cols()); });
  const std::size_t rk = pivots.size();
  return RankProfile{rk, std::move(r), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rank_profile(a).rank; }

Matrix null_space(const Matrix& a) {
  const auto prof = rank_profile(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : prof.pivots) is_pivot[p] = true;
  Matrix out(a.field(), n - prof.rank, n);
  const auto one = Scalar::one(a.field());
  std::size_t row = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    out.set(row, free, one);
    for (std::size_t i = 0; i < prof.rank; ++i) {
      const auto v = prof.rref.at(i, free);
      if (!v.is_zero()) out.set(row, prof.pivots[i], -v);
    }
    ++row;
  }
  return out;
}

Matrix inverse(const Matrix& a) {
  if (!a.is_square()) fail(ErrorCode::ShapeMismatch, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(a.field(), n);
  const auto pivots = with_arith(*a.field(), [&](auto ar) {
    return detail::rref_in_place(ar, ar.store(work), n, n, &ar.store(inv), n);
  });
  if (pivots.size() != n) fail(ErrorCode::ZeroInverse, "matrix is singular");
  return inv;
}

Matrix power(const Matrix& a, std::uint64_t e) {
  if (!a.is_square()) fail(ErrorCode::ShapeMismatch, "power of a non-square matrix");
  Matrix r = Matrix::identity(a.field(), a.rows());
  Matrix b = a;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

PowerTail power_tail(const Matrix& a) {
  if (!a.field()->is_finite()) fail(ErrorCode::UnsupportedField, "power sequences need not be eventually periodic over " + a.field()->describe());
  if (!a.is_square()) fail(ErrorCode::ShapeMismatch, "power tail of a non-square matrix");
  // Stored-sequence detection: a^1, a^2, ... until a repeat a^j = a^i (i < j).
  std::vector<Matrix> seq;
  std::map<Matrix::FiniteStore, std::size_t> seen;
  Matrix cur = a;
  for (std::size_t m = 1;; ++m) {
    auto [it, inserted] = seen.emplace(cur.codes(), m);
    if (!inserted) {
      const std::size_t mu = it->second;
      const std::size_t lambda = m - mu;
      std::vector<Matrix> cycle(seq.begin() + static_cast<std::ptrdiff_t>(mu - 1), seq.end());
      return PowerTail{mu, lambda, std::move(cycle)};
    }
    seq.push_back(cur);
    cur = cur * a;
  }
}

Matrix rank_factorization(const Matrix& a) {
  const std::size_t m = a.rows(), k = a.cols();
  const auto& field = a.field();
  // E a = R with E invertible (row operations tracked on I_m).
  Matrix r = a;
  Matrix e = Matrix::identity(field, m);
  const auto pivots = with_arith(*field, [&](auto ar) {
    return detail::rref_in_place(ar, ar.store(r), m, k, &ar.store(e), m);
  });
  const std::size_t rk = pivots.size();
  // Q: nonzero rows of R on top, unit rows for the non-pivot columns below,
  // so that [I_r 0; 0 0]_{m x k} Q = R and a = E^-1 [I_r 0; 0 0] Q.
  Matrix q(field, k, k);
  const auto one = Scalar::one(field);
  for (std::size_t i = 0; i < rk; ++i)
    for (std::size_t j = 0; j < k; ++j) q.set(i, j, r.at(i, j));
  std::vector<bool> is_pivot(k, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t row = rk;
  for (std::size_t j = 0; j < k; ++j)
    if (!is_pivot[j]) q.set(row++, j, one);
  Matrix j_km(field, k, m);
  for (std::size_t i = 0; i < rk; ++i) j_km.set(i, i, one);
  return inverse(q) * j_km * e;
}

}  // namespace mz
