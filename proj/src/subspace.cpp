#include "mz/subspace.hpp"

#include <algorithm>

#include "arith.hpp"

namespace mz {

namespace {

Matrix stack_rows(const FieldPtr& field, std::size_t width, const std::vector<const Matrix*>& parts) {
  std::size_t total = 0;
  for (auto* p : parts) total += p->rows();
  Matrix out(field, total, width);
  detail::with_arith(*field, [&](auto ar) {
    auto& d = ar.store(out);
    std::size_t off = 0;
    for (auto* p : parts) {
      const auto& s = ar.store(*p);
      std::copy(s.begin(), s.end(), d.begin() + static_cast<std::ptrdiff_t>(off));
      off += s.size();
    }
  });
  return out;
}

}  // namespace

MatSubspace MatSubspace::zero(FieldPtr field, std::size_t n) {
  return MatSubspace(n, Matrix(std::move(field), 0, n * n), {});
}

MatSubspace MatSubspace::full(FieldPtr field, std::size_t n) {
  return from_rows(n, Matrix::identity(std::move(field), n * n));
}

MatSubspace MatSubspace::from_rows(std::size_t n, const Matrix& rows) {
  if (rows.cols() != n * n) fail(ErrorCode::ShapeMismatch, "generator width is not n^2");
  auto prof = rank_profile(rows);
  Matrix echelon(rows.field(), prof.rank, n * n);
  detail::with_arith(*rows.field(), [&](auto ar) {
    const auto& s = ar.store(prof.rref);
    auto& d = ar.store(echelon);
    std::copy(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(prof.rank * n * n), d.begin());
  });
  return MatSubspace(n, std::move(echelon), std::move(prof.pivots));
}

MatSubspace MatSubspace::span_of(FieldPtr field, std::size_t n, const std::vector<Matrix>& mats) {
  Matrix rows(field, mats.size(), n * n);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    require_same_field(*field, *mats[i].field());
    if (mats[i].rows() != n || mats[i].cols() != n) fail(ErrorCode::ShapeMismatch, "generator is not n x n");
    detail::with_arith(*field, [&](auto ar) {
      const auto& s = ar.store(mats[i]);
      std::copy(s.begin(), s.end(), ar.store(rows).begin() + static_cast<std::ptrdiff_t>(i * n * n));
    });
  }
  return from_rows(n, rows);
}

std::vector<Matrix> MatSubspace::basis() const {
  std::vector<Matrix> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(echelon_.row(i).reshape(n_, n_));
  return out;
}

bool MatSubspace::contains(const Matrix& a) const {
  require_same_field(*field(), *a.field());
  if (a.rows() != n_ || a.cols() != n_) fail(ErrorCode::ShapeMismatch, "matrix side differs from subspace");
  return detail::with_arith(*field(), [&](auto ar) {
    auto v = ar.store(a);
    const auto& e = ar.store(echelon_);
    const std::size_t w = n_ * n_;
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (ar.is_zero(c)) continue;
      for (std::size_t j = pivots_[i]; j < w; ++j) v[j] = ar.sub(v[j], ar.mul(c, e[i * w + j]));
    }
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return ar.is_zero(x); });
  });
}

bool MatSubspace::contains(const MatSubspace& s) const {
  if (s.n_ != n_) fail(ErrorCode::ShapeMismatch, "matrix sides differ");
  for (const auto& b : s.basis())
    if (!contains(b)) return false;
  return true;
}

Matrix MatSubspace::element(const std::vector<std::uint32_t>& coords) const {
  if (!field()->is_finite()) fail(ErrorCode::UnsupportedField, "coordinate codes need a finite field");
  if (coords.size() != dim()) fail(ErrorCode::ShapeMismatch, "coordinate count differs from dimension");
  const auto& f = *field();
  const std::size_t w = n_ * n_;
  Matrix::FiniteStore out(w, 0);
  const auto& e = echelon_.codes();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    for (std::size_t j = 0; j < w; ++j) out[j] = f.add(out[j], f.mul(coords[i], e[i * w + j]));
  }
  return Matrix::from_codes(field(), n_, n_, std::move(out));
}

bool MatSubspace::operator<(const MatSubspace& o) const {
  if (n_ != o.n_) return n_ < o.n_;
  if (dim() != o.dim()) return dim() < o.dim();
  if (field()->is_finite()) return echelon_.codes() < o.echelon_.codes();
  const auto& a = echelon_.qnums();
  const auto& b = o.echelon_.qnums();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].re != b[i].re) return a[i].re < b[i].re;
    if (a[i].im != b[i].im) return a[i].im < b[i].im;
  }
  return false;
}

MatSubspace trace_orthogonal(const MatSubspace& s) {
  // Tr(b x) = sum_{i,j} b_ij x_ji = vec(b) . vec(x^T).
  const std::size_t n = s.n();
  Matrix constraints(s.field(), s.dim(), n * n);
  const auto basis = s.basis();
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const Matrix t = basis[r].transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) constraints.set(r, i * n + j, t.at(i, j));
  }
  return MatSubspace::from_rows(n, null_space(constraints));
}

MatSubspace sum(const MatSubspace& a, const MatSubspace& b) {
  require_same_field(*a.field(), *b.field());
  if (a.n() != b.n()) fail(ErrorCode::ShapeMismatch, "matrix sides differ");
  return MatSubspace::from_rows(a.n(), stack_rows(a.field(), a.ambient_dim(), {&a.echelon(), &b.echelon()}));
}

MatSubspace intersect(const MatSubspace& a, const MatSubspace& b) {
  require_same_field(*a.field(), *b.field());
  if (a.n() != b.n()) fail(ErrorCode::ShapeMismatch, "matrix sides differ");
  // Left kernel of [A; B]: (x, y) with xA + yB = 0 gives xA in the intersection.
  const Matrix stacked = stack_rows(a.field(), a.ambient_dim(), {&a.echelon(), &b.echelon()});
  const Matrix kernel = null_space(stacked.transpose());
  Matrix coeffs(a.field(), kernel.rows(), a.dim());
  for (std::size_t i = 0; i < kernel.rows(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) coeffs.set(i, j, kernel.at(i, j));
  return MatSubspace::from_rows(a.n(), coeffs * a.echelon());
}

MatSubspace extend(const MatSubspace& s, const Matrix& w) {
  return sum(s, MatSubspace::span_of(s.field(), s.n(), {w}));
}

DirectionEnumerator::DirectionEnumerator(const MatSubspace& s) : field_(s.field()), n_(s.n()) {
  if (!field_->is_finite()) fail(ErrorCode::UnsupportedField, "direction enumeration needs a finite field");
  if (s.is_full()) fail(ErrorCode::ImproperSubspace, "the full algebra has no extensions");
  std::vector<bool> is_pivot(s.ambient_dim(), false);
  for (auto p : s.pivots()) is_pivot[p] = true;
  for (std::size_t j = 0; j < s.ambient_dim(); ++j)
    if (!is_pivot[j]) free_cols_.push_back(j);
  q_ = field_->order();
  tail_.assign(free_cols_.size() - 1, 0);
  std::uint64_t total = 0, qc = 1;
  for (std::size_t i = 0; i < free_cols_.size(); ++i) {
    total += qc;
    qc *= q_;
  }
  count_ = total;
}

std::optional<Matrix> DirectionEnumerator::next() {
  if (done_) return std::nullopt;
  Matrix::FiniteStore codes(n_ * n_, 0);
  codes[free_cols_[lead_]] = 1;
  for (std::size_t i = 0; i < tail_.size(); ++i) codes[free_cols_[lead_ + 1 + i]] = tail_[i];
  Matrix out = Matrix::from_codes(field_, n_, n_, std::move(codes));
  // odometer over the tail; move the leading 1 right when it wraps
  std::size_t i = tail_.size();
  while (i > 0) {
    --i;
    if (++tail_[i] < q_) return out;
    tail_[i] = 0;
  }
  ++lead_;
  if (lead_ >= free_cols_.size()) {
    done_ = true;
  } else {
    tail_.assign(free_cols_.size() - lead_ - 1, 0);
  }
  return out;
}

std::vector<Matrix> extension_directions(const MatSubspace& s) {
  DirectionEnumerator en(s);
  std::vector<Matrix> out;
  out.reserve(en.count());
  while (auto w = en.next()) out.push_back(std::move(*w));
  return out;
}

}  // namespace mz
