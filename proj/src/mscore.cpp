#include "mz/mscore.hpp"

namespace mz {

std::string_view to_string(MsStatus s) noexcept {
  switch (s) {
    case MsStatus::MS_Proper: return "MS_Proper";
    case MsStatus::MS_FullAlgebra: return "MS_FullAlgebra";
    case MsStatus::NotMS: return "NotMS";
  }
  return "?";
}

std::string_view to_string(VerdictMethod m) noexcept {
  switch (m) {
    case VerdictMethod::IdempotentScan: return "IdempotentScan";
    case VerdictMethod::DefinitionBruteForce: return "DefinitionBruteForce";
    case VerdictMethod::StructuralCertificate: return "StructuralCertificate";
  }
  return "?";
}

std::string_view to_string(ExtensionOutcome o) noexcept {
  switch (o) {
    case ExtensionOutcome::ContainsIdempotent: return "ContainsIdempotent";
    case ExtensionOutcome::FullAlgebra: return "FullAlgebra";
    case ExtensionOutcome::ExtensionIsMS: return "ExtensionIsMS";
  }
  return "?";
}

namespace {

void require_finite(const Field& f, std::string_view what) {
  if (!f.is_finite())
    fail(ErrorCode::UnsupportedField, std::string(what) + " needs a finite field, got " + f.describe());
}

std::uint64_t checked_power(std::uint64_t q, std::uint64_t e, std::uint64_t budget, std::string_view what) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (r > budget / q) fail(ErrorCode::BudgetExceeded, std::string(what) + " exceeds the element budget");
    r *= q;
  }
  if (r > budget) fail(ErrorCode::BudgetExceeded, std::string(what) + " exceeds the element budget");
  return r;
}

// e*e == e on an n x n code buffer, with early exit.
bool is_idempotent_codes(const Field& f, const std::uint32_t* e, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t acc = 0;
      for (std::size_t k = 0; k < n; ++k) {
        const auto x = e[i * n + k];
        if (x) acc = f.add(acc, f.mul(x, e[k * n + j]));
      }
      if (acc != e[i * n + j]) return false;
    }
  return true;
}

// Runs `visit(codes)` over every matrix of M_n(F_q) in lexicographic code order
// until it returns true.
template <class Visit>
bool for_each_matrix(const FieldPtr& field, std::size_t n, Visit&& visit) {
  const auto q = static_cast<std::uint32_t>(field->order());
  Matrix::FiniteStore codes(n * n, 0);
  for (;;) {
    if (visit(codes)) return true;
    std::size_t i = codes.size();
    while (i > 0) {
      --i;
      if (++codes[i] < q) break;
      codes[i] = 0;
      if (i == 0) return false;
    }
    if (codes.empty()) return false;
  }
}

}  // namespace

std::optional<Matrix> find_idempotent(const MatSubspace& s, std::uint64_t budget) {
  const auto& field = s.field();
  require_finite(*field, "idempotent scan");
  const std::size_t d = s.dim(), n = s.n(), w = n * n;
  const auto q = static_cast<std::uint32_t>(field->order());
  checked_power(q, d, budget, "idempotent scan");
  if (d == 0) return std::nullopt;
  const auto& f = *field;
  const auto& basis = s.echelon().codes();

  // scaled[(i*q + c)*w ..] = c * basis_i
  std::vector<std::uint32_t> scaled(d * q * w);
  for (std::size_t i = 0; i < d; ++i)
    for (std::uint32_t c = 0; c < q; ++c)
      for (std::size_t j = 0; j < w; ++j) scaled[(i * q + c) * w + j] = f.mul(c, basis[i * w + j]);

  // partial[(i+1)*w ..] = sum_{k<=i} coords[k] * basis_k
  std::vector<std::uint32_t> partial((d + 1) * w, 0);
  std::vector<std::uint32_t> coords(d, 0);
  auto rebuild_from = [&](std::size_t i) {
    for (std::size_t k = i; k < d; ++k) {
      const auto* prev = &partial[k * w];
      const auto* add = &scaled[(k * q + coords[k]) * w];
      auto* out = &partial[(k + 1) * w];
      for (std::size_t j = 0; j < w; ++j) out[j] = f.add(prev[j], add[j]);
    }
  };
  for (;;) {
    // advance the odometer (skips the all-zero tuple on the first step)
    std::size_t i = d;
    bool carried_out = true;
    while (i > 0) {
      --i;
      if (++coords[i] < q) {
        carried_out = false;
        break;
      }
      coords[i] = 0;
    }
    if (carried_out) return std::nullopt;
    rebuild_from(i);
    const auto* e = &partial[d * w];
    if (is_idempotent_codes(f, e, n))
      return Matrix::from_codes(field, n, n, Matrix::FiniteStore(e, e + w));
  }
}

MsVerdict ms_by_idempotent_criterion(const MatSubspace& s, std::uint64_t budget) {
  if (s.is_full()) return MsVerdict{MsStatus::MS_FullAlgebra, VerdictMethod::IdempotentScan, std::nullopt, std::nullopt};
  auto e = find_idempotent(s, budget);
  if (e) return MsVerdict{MsStatus::NotMS, VerdictMethod::IdempotentScan, std::move(e), std::nullopt};
  return MsVerdict{MsStatus::MS_Proper, VerdictMethod::IdempotentScan, std::nullopt, std::nullopt};
}

MsVerdict ms_by_definition(const MatSubspace& s, std::uint64_t budget) {
  const auto& field = s.field();
  require_finite(*field, "definition check");
  const std::size_t n = s.n();
  const auto q = field->order();
  checked_power(q, 2 * n * n, budget, "definition check");
  if (s.is_full())
    return MsVerdict{MsStatus::MS_FullAlgebra, VerdictMethod::DefinitionBruteForce, std::nullopt, std::nullopt};

  std::optional<MsVerdict> result;
  for_each_matrix(field, n, [&](const Matrix::FiniteStore& codes) {
    const Matrix a = Matrix::from_codes(field, n, n, codes);
    const PowerTail tail = power_tail(a);
    // a qualifies iff a^m in S for m = 1 .. mu+lambda-1 (the sequence repeats after that)
    Matrix pw = a;
    for (std::size_t m = 1; m < tail.preperiod + tail.period; ++m) {
      if (!s.contains(pw)) return false;
      pw = pw * a;
    }
    for (std::size_t idx = 0; idx < tail.cycle.size(); ++idx) {
      const Matrix& x = tail.cycle[idx];
      // b 0 c = 0 lies in every subspace
      if (x.is_zero()) continue;
      std::optional<DefinitionFailure> found;
      for_each_matrix(field, n, [&](const Matrix::FiniteStore& bcodes) {
        const Matrix bx = Matrix::from_codes(field, n, n, bcodes) * x;
        if (bx.is_zero()) return false;
        return for_each_matrix(field, n, [&](const Matrix::FiniteStore& ccodes) {
          const Matrix c = Matrix::from_codes(field, n, n, ccodes);
          if (s.contains(bx * c)) return false;
          found = DefinitionFailure{a, Matrix::from_codes(field, n, n, bcodes), c, tail.preperiod + idx};
          return true;
        });
      });
      if (found) {
        // The idempotent of the cyclic semigroup generated by a: a^j with
        // lambda | j >= mu. It lies in S because a qualifies.
        const std::size_t j = tail.period * ((tail.preperiod + tail.period - 1) / tail.period);
        Matrix e = tail.cycle[j - tail.preperiod];
        if (!e.is_idempotent() || e.is_zero() || !s.contains(e))
          fail(ErrorCode::InternalContractViolation, "cycle idempotent check failed");
        result = MsVerdict{MsStatus::NotMS, VerdictMethod::DefinitionBruteForce, std::move(e), std::move(found)};
        return true;
      }
    }
    return false;
  });
  if (result) return *std::move(result);
  return MsVerdict{MsStatus::MS_Proper, VerdictMethod::DefinitionBruteForce, std::nullopt, std::nullopt};
}

std::optional<MsVerdict> verdict_from_candidate(const MatSubspace& s, const Matrix& candidate) {
  if (candidate.is_zero() || !candidate.is_idempotent() || !s.contains(candidate)) return std::nullopt;
  return MsVerdict{MsStatus::NotMS, VerdictMethod::StructuralCertificate, candidate, std::nullopt};
}

MatSubspace trace_zero_space(FieldPtr field, std::size_t n) {
  const Matrix id = Matrix::identity(field, n);
  return trace_orthogonal(MatSubspace::span_of(std::move(field), n, {id}));
}

MaximalityVerdict is_maximal_ms(const MatSubspace& s, std::uint64_t budget) {
  MsVerdict base = ms_by_idempotent_criterion(s, budget);
  if (base.status != MsStatus::MS_Proper) return MaximalityVerdict{false, std::move(base), {}};
  std::vector<ExtensionEvidence> evidence;
  bool maximal = true;
  DirectionEnumerator dirs(s);
  while (auto w = dirs.next()) {
    const MatSubspace ext = extend(s, *w);
    if (ext.is_full()) {
      evidence.push_back({*std::move(w), ExtensionOutcome::FullAlgebra, std::nullopt});
      continue;
    }
    auto e = find_idempotent(ext, budget);
    if (e) {
      evidence.push_back({*std::move(w), ExtensionOutcome::ContainsIdempotent, std::move(e)});
    } else {
      maximal = false;
      evidence.push_back({*std::move(w), ExtensionOutcome::ExtensionIsMS, std::nullopt});
    }
  }
  return MaximalityVerdict{maximal, std::move(base), std::move(evidence)};
}

}  // namespace mz
