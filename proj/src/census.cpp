#include "mz/census.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace mz {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max() / 4;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t q, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = sat_mul(r, q);
  return r;
}

void require_finite(const Field& f) {
  if (!f.is_finite()) fail(ErrorCode::UnsupportedField, "census needs a finite field, got " + f.describe());
}

// k x d reduced echelon matrix from pivots and free entries.
Matrix echelon_matrix(const FieldPtr& field, std::size_t d, const std::vector<std::size_t>& pivots,
                      const std::vector<std::size_t>& slots, const std::vector<std::uint32_t>& vals) {
  Matrix::FiniteStore codes(pivots.size() * d, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) codes[r * d + pivots[r]] = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) codes[slots[i]] = vals[i];
  return Matrix::from_codes(field, pivots.size(), d, std::move(codes));
}

std::vector<std::size_t> free_slots_for(std::size_t d, const std::vector<std::size_t>& pivots) {
  std::vector<bool> is_pivot(d, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> slots;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = pivots[r] + 1; c < d; ++c)
      if (!is_pivot[c]) slots.push_back(r * d + c);
  return slots;
}

MatSubspace subspace_from_echelon(std::size_t n, const FieldPtr& field, const Matrix& rows) {
  if (rows.rows() == 0) return MatSubspace::zero(field, n);
  return MatSubspace::from_rows(n, rows);
}

}  // namespace

std::uint64_t gaussian_binomial(std::uint64_t d, std::uint64_t k, std::uint64_t q) {
  if (k > d) return 0;
  // [d, k] = [d-1, k-1] + q^k [d-1, k], saturating.
  std::vector<std::uint64_t> row(k + 1, 0);
  row[0] = 1;
  for (std::uint64_t m = 1; m <= d; ++m)
    for (std::uint64_t j = std::min(k, m); j >= 1; --j)
      row[j] = std::min(kSaturated, row[j - 1] + sat_mul(sat_pow(q, j), row[j]));
  return row[k];
}

SubspaceEnumerator::SubspaceEnumerator(FieldPtr field, std::size_t d, std::size_t k, std::uint64_t budget)
    : field_(std::move(field)), d_(d), k_(k) {
  require_finite(*field_);
  if (k > d) fail(ErrorCode::InvalidArgument, "subspace dimension exceeds the ambient dimension");
  q_ = static_cast<std::uint32_t>(field_->order());
  if (sat_pow(q_, k * (d - k)) > budget) fail(ErrorCode::BudgetExceeded, "subspace enumeration exceeds the budget");
  pivots_.resize(k);
  std::iota(pivots_.begin(), pivots_.end(), std::size_t{0});
  reset_free();
}

void SubspaceEnumerator::reset_free() {
  free_slots_ = free_slots_for(d_, pivots_);
  free_vals_.assign(free_slots_.size(), 0);
}

bool SubspaceEnumerator::next_pivots() {
  std::size_t i = k_;
  while (i > 0) {
    --i;
    if (pivots_[i] < d_ - k_ + i) {
      ++pivots_[i];
      for (std::size_t j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
      reset_free();
      return true;
    }
  }
  return false;
}

std::optional<Matrix> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (!started_) {
    started_ = true;
    return echelon_matrix(field_, d_, pivots_, free_slots_, free_vals_);
  }
  std::size_t i = free_vals_.size();
  while (i > 0) {
    --i;
    if (++free_vals_[i] < q_) return echelon_matrix(field_, d_, pivots_, free_slots_, free_vals_);
    free_vals_[i] = 0;
  }
  if (!next_pivots()) {
    done_ = true;
    return std::nullopt;
  }
  return echelon_matrix(field_, d_, pivots_, free_slots_, free_vals_);
}

std::vector<MatSubspace> enumerate_matrix_subspaces(const FieldPtr& field, std::size_t n, std::size_t k,
                                                    std::uint64_t budget) {
  std::vector<MatSubspace> out;
  SubspaceEnumerator en(field, n * n, k, budget);
  while (auto rows = en.next()) out.push_back(subspace_from_echelon(n, field, *rows));
  return out;
}

RandomSubspaceSampler::RandomSubspaceSampler(FieldPtr field, std::size_t d, std::uint64_t seed)
    : field_(std::move(field)), d_(d), rng_(seed) {
  require_finite(*field_);
}

Matrix RandomSubspaceSampler::draw(std::size_t k) {
  if (k > d_) fail(ErrorCode::InvalidArgument, "subspace dimension exceeds the ambient dimension");
  // Partial Fisher-Yates for the pivot columns.
  std::vector<std::size_t> cols(d_);
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) std::swap(cols[i], cols[i + rng_() % (d_ - i)]);
  std::vector<std::size_t> pivots(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(pivots.begin(), pivots.end());
  const auto slots = free_slots_for(d_, pivots);
  std::vector<std::uint32_t> vals(slots.size());
  for (auto& v : vals) v = static_cast<std::uint32_t>(rng_() % field_->order());
  return echelon_matrix(field_, d_, pivots, slots, vals);
}

OracleReport oracle_compare(const FieldPtr& field, std::size_t n, std::optional<std::uint64_t> samples, std::uint64_t seed,
                            std::uint64_t budget) {
  require_finite(*field);
  const std::size_t d = n * n;
  const auto q = field->order();
  OracleReport rep{field, n, samples ? "sampled" : "full", samples ? seed : 0, 0, {}, {}};
  rep.tallies.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    rep.tallies[k].dim = k;
    rep.tallies[k].expected_subspaces = gaussian_binomial(d, k, q);
  }

  auto check = [&](const MatSubspace& s) {
    const auto by_def = ms_by_definition(s, budget).status;
    const auto by_crit = ms_by_idempotent_criterion(s, budget).status;
    auto& t = rep.tallies[s.dim()];
    ++t.subspaces;
    if (by_crit == MsStatus::MS_Proper) ++t.ms;
    ++rep.checked;
    if (by_def != by_crit) rep.disagreements.push_back({s, by_def, by_crit});
  };

  if (samples) {
    RandomSubspaceSampler sampler(field, d, seed);
    for (std::uint64_t i = 0; i < *samples; ++i) {
      const std::size_t k = sampler.next_u64() % d;
      check(subspace_from_echelon(n, field, sampler.draw(k)));
    }
    return rep;
  }
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < d; ++k) total = std::min(kSaturated, total + rep.tallies[k].expected_subspaces);
  if (total > kDefaultCensusBudget) fail(ErrorCode::BudgetExceeded, "full oracle comparison exceeds the subspace budget");
  for (std::size_t k = 0; k < d; ++k)
    for (const auto& s : enumerate_matrix_subspaces(field, n, k, budget)) check(s);
  return rep;
}

CensusReport ms_census(const FieldPtr& field, std::size_t n, const CensusOptions& opt) {
  require_finite(*field);
  const std::size_t d = n * n;
  const auto q = field->order();
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= d; ++k) total = std::min(kSaturated, total + gaussian_binomial(d, k, q));
  if (total > opt.census_budget) fail(ErrorCode::BudgetExceeded, "census exceeds the subspace budget");

  CensusReport rep;
  rep.field = field;
  rep.n = n;
  rep.tallies.resize(d + 1);
  // ms_by_dim[k] / non_ms_by_dim[k]: subspaces of dimension k by verdict
  std::vector<std::vector<MatSubspace>> ms_by_dim(d + 1), non_ms_by_dim(d + 1);

  for (std::size_t k = 0; k <= d; ++k) {
    auto& t = rep.tallies[k];
    t.dim = k;
    t.expected_subspaces = gaussian_binomial(d, k, q);
    for (auto& s : enumerate_matrix_subspaces(field, n, k, opt.budget)) {
      ++t.subspaces;
      if (s.is_full()) continue;
      auto e = find_idempotent(s, opt.budget);
      if (!e) {
        ++t.ms;
        ms_by_dim[k].push_back(std::move(s));
        continue;
      }
      ++rep.not_ms;
      if (e->is_zero() || !e->is_idempotent() || !s.contains(*e)) rep.witnesses_verified = false;
      if (opt.keep_witnesses) rep.witnesses.push_back({s, *e});
      non_ms_by_dim[k].push_back(std::move(s));
    }
  }

  for (std::size_t k = 0; k < d; ++k)
    for (const auto& s : ms_by_dim[k])
      if (is_maximal_ms(s, opt.budget).is_maximal) {
        ++rep.tallies[k].maximal_ms;
        rep.maximal_ms.push_back(s);
      }

  // A non-MS directly under an MS would break heredity.
  for (std::size_t k = 0; k + 1 < d; ++k)
    for (const auto& big : ms_by_dim[k + 1])
      for (const auto& small : non_ms_by_dim[k]) {
        ++rep.heredity_pairs_checked;
        if (big.contains(small)) rep.heredity_holds = false;
      }

  if (opt.compare_classification) {
    if (n != 2) fail(ErrorCode::InvalidArgument, "classification comparison is only defined for n = 2");
    ClassificationComparison cmp;
    const std::set<MatSubspace> census_max(rep.maximal_ms.begin(), rep.maximal_ms.end());
    std::set<MatSubspace> predicted_set;
    for (auto& fam : predicted_maximal_families(field)) {
      predicted_set.insert(fam.space);
      const bool found = census_max.count(fam.space) > 0;
      if (!found && !fam.closure_dependent) cmp.misses.push_back(fam);
      cmp.predicted.push_back({std::move(fam), found});
    }
    for (const auto& m : rep.maximal_ms) {
      if (predicted_set.count(m)) continue;
      ExtraMaximal ex{m, std::nullopt};
      const auto qq = static_cast<std::uint32_t>(q);
      std::vector<std::uint32_t> coords(m.dim(), 0);
      for (;;) {
        const Matrix a = m.element(coords);
        if (!a.trace().is_zero() && spectrum_2x2(a) == Spectrum::Irreducible) {
          ex.irreducible_element = a;
          break;
        }
        std::size_t i = coords.size();
        bool wrapped = true;
        while (i > 0) {
          --i;
          if (++coords[i] < qq) {
            wrapped = false;
            break;
          }
          coords[i] = 0;
        }
        if (wrapped) break;
      }
      cmp.extras.push_back(std::move(ex));
    }
    for (const auto& p : cmp.predicted) {
      auto it = std::find_if(cmp.clause_summary.begin(), cmp.clause_summary.end(),
                             [&](const auto& row) { return std::get<0>(row) == p.family.clause; });
      if (it == cmp.clause_summary.end()) {
        cmp.clause_summary.emplace_back(p.family.clause, 0, 0);
        it = std::prev(cmp.clause_summary.end());
      }
      ++std::get<1>(*it);
      if (p.maximal_in_census) ++std::get<2>(*it);
    }
    cmp.exact_match = cmp.extras.empty() &&
                      std::all_of(cmp.predicted.begin(), cmp.predicted.end(), [](const auto& p) { return p.maximal_in_census; });
    rep.comparison = std::move(cmp);
  }
  return rep;
}

DeBondtReport debondt_sample(std::uint64_t samples, std::uint64_t seed, std::uint32_t p, std::size_t n, std::uint64_t budget) {
  auto field = Field::prime(p);
  if (p < n) fail(ErrorCode::HypothesisFailed, "characteristic must be at least n");
  if (n < 2) fail(ErrorCode::InvalidArgument, "n must be at least 2");
  const std::size_t d = n * n;
  const MatSubspace h = trace_zero_space(field, n);
  RandomSubspaceSampler sampler(field, d, seed);
  DeBondtReport rep;
  rep.samples = samples;
  rep.seed = seed;
  for (std::uint64_t i = 0; i < samples; ++i) {
    MatSubspace s = MatSubspace::zero(field, n);
    for (;;) {
      s = subspace_from_echelon(n, field, sampler.draw(d - 2));
      if (!h.contains(s)) break;
      ++rep.resampled_inside_h;
    }
    auto e = find_idempotent(s, budget);
    if (!e) {
      rep.exceptions.push_back(std::move(s));
      continue;
    }
    ++rep.with_idempotent;
    if (rep.examples.size() < 3) rep.examples.push_back({std::move(s), *std::move(e)});
  }
  return rep;
}

}  // namespace mz
