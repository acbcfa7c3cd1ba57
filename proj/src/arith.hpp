// Internal: element-type adapters so elimination and products are written once
// for finite codes and for characteristic-zero values.
#ifndef MZ_SRC_ARITH_HPP
#define MZ_SRC_ARITH_HPP

#include <vector>

#include "mz/field.hpp"
#include "mz/matrix.hpp"

namespace mz::detail {

struct FiniteArith {
  using value_type = std::uint32_t;
  const Field& f;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const { return f.add(a, b); }
  value_type sub(value_type a, value_type b) const { return f.sub(a, b); }
  value_type mul(value_type a, value_type b) const { return f.mul(a, b); }
  value_type neg(value_type a) const { return f.neg(a); }
  value_type inv(value_type a) const { return f.inv(a); }

  static std::vector<value_type>& store(Matrix& m) { return m.codes(); }
  static const std::vector<value_type>& store(const Matrix& m) { return m.codes(); }
};

struct ZeroCharArith {
  using value_type = QNum;
  const Field& f;

  value_type zero() const { return {mpq_class(0), mpq_class(0)}; }
  value_type one() const { return {mpq_class(1), mpq_class(0)}; }
  bool is_zero(const value_type& a) const { return a.re == 0 && a.im == 0; }
  value_type add(const value_type& a, const value_type& b) const { return f.add(a, b); }
  value_type sub(const value_type& a, const value_type& b) const { return f.sub(a, b); }
  value_type mul(const value_type& a, const value_type& b) const { return f.mul(a, b); }
  value_type neg(const value_type& a) const { return f.neg(a); }
  value_type inv(const value_type& a) const { return f.inv(a); }

  static std::vector<value_type>& store(Matrix& m) { return m.qnums(); }
  static const std::vector<value_type>& store(const Matrix& m) { return m.qnums(); }
};

template <class Fn>
decltype(auto) with_arith(const Field& f, Fn&& fn) {
  if (f.is_finite()) return fn(FiniteArith{f});
  return fn(ZeroCharArith{f});
}

/// In-place reduced row echelon form of a rows x cols row-major buffer.
/// Returns pivot columns. When `track` is non-null it receives the same row
/// operations (it must have `rows` rows of width `track_cols`).
template <class A>
std::vector<std::size_t> rref_in_place(const A& ar, std::vector<typename A::value_type>& m, std::size_t rows,
                                       std::size_t cols, std::vector<typename A::value_type>* track = nullptr,
                                       std::size_t track_cols = 0) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto swap_rows = [&](std::vector<typename A::value_type>& buf, std::size_t width, std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < width; ++c) std::swap(buf[i * width + c], buf[j * width + c]);
  };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && ar.is_zero(m[piv * cols + c])) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      swap_rows(m, cols, piv, r);
      if (track) swap_rows(*track, track_cols, piv, r);
    }
    const auto scale = ar.inv(m[r * cols + c]);
    for (std::size_t j = 0; j < cols; ++j) m[r * cols + j] = ar.mul(m[r * cols + j], scale);
    if (track)
      for (std::size_t j = 0; j < track_cols; ++j) (*track)[r * track_cols + j] = ar.mul((*track)[r * track_cols + j], scale);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || ar.is_zero(m[i * cols + c])) continue;
      const auto factor = m[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j) m[i * cols + j] = ar.sub(m[i * cols + j], ar.mul(factor, m[r * cols + j]));
      if (track)
        for (std::size_t j = 0; j < track_cols; ++j)
          (*track)[i * track_cols + j] = ar.sub((*track)[i * track_cols + j], ar.mul(factor, (*track)[r * track_cols + j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace mz::detail

#endif
