// Test-only brute-force oracles. Nothing here calls the fast paths in
// mscore/census; everything is plain enumeration over Matrix arithmetic.
#ifndef MZ_TESTS_ORACLES_HPP
#define MZ_TESTS_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "mz/subspace.hpp"

namespace mz::oracle {

inline std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

/// [d choose k]_q by the product formula.
inline std::uint64_t gaussian_binomial(std::uint64_t d, std::uint64_t k, std::uint64_t q) {
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    num *= ipow(q, d - i) - 1;
    den *= ipow(q, i + 1) - 1;
  }
  return num / den;
}

/// Every element of s (finite field), each exactly once.
inline std::vector<Matrix> all_elements(const MatSubspace& s) {
  const auto q = static_cast<std::uint32_t>(s.field()->order());
  std::vector<Matrix> out;
  std::vector<std::uint32_t> coords(s.dim(), 0);
  for (;;) {
    out.push_back(s.element(coords));
    std::size_t i = coords.size();
    for (;;) {
      if (i == 0) return out;
      --i;
      if (++coords[i] < q) break;
      coords[i] = 0;
    }
  }
}

/// Every n x n matrix over a finite field.
inline std::vector<Matrix> all_matrices(const FieldPtr& field, std::size_t n) {
  return all_elements(MatSubspace::full(field, n));
}

inline std::vector<Matrix> nonzero_idempotents(const MatSubspace& s) {
  std::vector<Matrix> out;
  for (auto& m : all_elements(s))
    if (!m.is_zero() && m * m == m) out.push_back(m);
  return out;
}

inline bool naive_idempotent_free(const MatSubspace& s) {
  for (auto& m : all_elements(s))
    if (!m.is_zero() && m * m == m) return false;
  return true;
}

/// All subspaces of M_n(F_q) by closure: starting from {0}, repeatedly add
/// one matrix; deduplicated by canonical form. Slow; n = 2, q <= 3 only.
inline std::vector<MatSubspace> all_subspaces_by_closure(const FieldPtr& field, std::size_t n) {
  std::vector<MatSubspace> layer{MatSubspace::zero(field, n)};
  std::vector<MatSubspace> out = layer;
  const auto mats = all_matrices(field, n);
  while (!layer.empty()) {
    std::vector<MatSubspace> next;
    for (const auto& s : layer) {
      if (s.is_full()) continue;
      for (const auto& m : mats) {
        if (s.contains(m)) continue;
        auto t = extend(s, m);
        bool seen = false;
        for (const auto& u : next)
          if (u == t) {
            seen = true;
            break;
          }
        if (!seen) next.push_back(std::move(t));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

}  // namespace mz::oracle

#endif
