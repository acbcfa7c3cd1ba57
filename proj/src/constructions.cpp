#include "mz/constructions.hpp"

#include <set>
#include <sstream>

#include "mz/mscore.hpp"

namespace mz {

namespace {

Matrix block_idempotent(const FieldPtr& field, std::size_t n, std::size_t offset, std::size_t size) {
  Matrix e(field, n, n);
  const auto one = Scalar::one(field);
  for (std::size_t i = offset; i < offset + size; ++i) e.set(i, i, one);
  return e;
}

std::string tuple_string(const std::vector<std::size_t>& k) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
  os << ')';
  return os.str();
}

}  // namespace

IdempotentFrame::IdempotentFrame(std::vector<Matrix> idempotents) : idempotents_(std::move(idempotents)) {
  if (idempotents_.empty()) fail(ErrorCode::InvalidArgument, "empty idempotent frame");
  const auto& field = idempotents_.front().field();
  n_ = idempotents_.front().rows();
  Matrix total(field, n_, n_);
  for (std::size_t i = 0; i < idempotents_.size(); ++i) {
    const auto& e = idempotents_[i];
    require_same_field(*field, *e.field());
    if (e.rows() != n_ || e.cols() != n_) fail(ErrorCode::ShapeMismatch, "frame members differ in size");
    if (!e.is_idempotent()) fail(ErrorCode::InvalidArgument, "frame member " + std::to_string(i) + " is not idempotent");
    for (std::size_t j = 0; j < idempotents_.size(); ++j)
      if (i != j && !(e * idempotents_[j]).is_zero())
        fail(ErrorCode::InvalidArgument, "frame members are not orthogonal");
    total = total + e;
    ranks_.push_back(rank(e));
  }
  if (!total.is_identity()) fail(ErrorCode::InvalidArgument, "frame does not sum to the identity");
}

IdempotentFrame IdempotentFrame::standard(FieldPtr field, const std::vector<std::size_t>& ranks) {
  std::size_t n = 0;
  for (auto r : ranks) {
    if (r == 0) fail(ErrorCode::InvalidArgument, "frame ranks must be positive");
    n += r;
  }
  std::vector<Matrix> es;
  std::size_t off = 0;
  for (auto r : ranks) {
    es.push_back(block_idempotent(field, n, off, r));
    off += r;
  }
  return IdempotentFrame(std::move(es));
}

GroupedFrame::GroupedFrame(IdempotentFrame frame, std::vector<std::vector<std::size_t>> parts,
                           std::vector<mpq_class> f_values)
    : frame_(std::move(frame)), parts_(std::move(parts)), f_values_(std::move(f_values)) {
  if (parts_.size() != f_values_.size()) fail(ErrorCode::InvalidArgument, "one f-value per part required");
  std::vector<bool> used(frame_.size(), false);
  for (const auto& p : parts_) {
    if (p.empty()) fail(ErrorCode::InvalidPart, "empty part");
    Matrix e(frame_.field(), frame_.n(), frame_.n());
    std::size_t rk = 0;
    for (auto i : p) {
      if (i >= frame_.size() || used[i]) fail(ErrorCode::InvalidPart, "parts must partition the frame");
      used[i] = true;
      e = e + frame_[i];
      rk += frame_.ranks()[i];
    }
    part_idempotents_.push_back(std::move(e));
    part_ranks_.push_back(rk);
  }
  for (bool u : used)
    if (!u) fail(ErrorCode::InvalidPart, "parts must cover the frame");
  for (auto& f : f_values_) f.canonicalize();
  for (std::size_t i = 0; i < f_values_.size(); ++i)
    for (std::size_t j = i + 1; j < f_values_.size(); ++j)
      if (f_values_[i] == f_values_[j]) fail(ErrorCode::InvalidArgument, "f-values must be pairwise distinct");
}

GroupedFrame GroupedFrame::singletons(IdempotentFrame frame) {
  std::vector<std::vector<std::size_t>> parts;
  std::vector<mpq_class> f;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    parts.push_back({i});
    f.emplace_back(static_cast<long>(i + 1));
  }
  return GroupedFrame(std::move(frame), std::move(parts), std::move(f));
}

std::vector<std::pair<std::size_t, std::size_t>> GroupedFrame::positive_weights() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t p = 0; p < parts_.size(); ++p)
    for (std::size_t q = 0; q < parts_.size(); ++q)
      if (f_values_[p] > f_values_[q]) out.emplace_back(p, q);
  return out;
}

LambdaSpec LambdaSpec::make(const GroupedFrame& g, std::vector<Scalar> sigmas) {
  if (sigmas.size() != g.part_count()) fail(ErrorCode::InvalidArgument, "one sigma per part required");
  Matrix lambda(g.field(), g.n(), g.n());
  for (std::size_t p = 0; p < sigmas.size(); ++p) lambda = lambda + g.part_idempotent(p).scaled(sigmas[p]);
  return LambdaSpec{std::move(sigmas), std::move(lambda)};
}

Matrix weight_project(const Matrix& a, const GroupedFrame& g, std::size_t from_part, std::size_t to_part) {
  if (from_part >= g.part_count() || to_part >= g.part_count())
    fail(ErrorCode::InvalidPart, "part index out of range");
  return g.part_idempotent(from_part) * a * g.part_idempotent(to_part);
}

Matrix zero_weight_project(const Matrix& a, const GroupedFrame& g) {
  Matrix out(a.field(), a.rows(), a.cols());
  for (std::size_t p = 0; p < g.part_count(); ++p) out = out + weight_project(a, g, p, p);
  return out;
}

std::vector<std::size_t> sigma_condition_failure(const std::vector<Scalar>& sigmas, const std::vector<std::size_t>& bounds) {
  if (sigmas.size() != bounds.size()) fail(ErrorCode::InvalidArgument, "sigma/bound count mismatch");
  if (sigmas.empty()) return {};
  const auto& field = sigmas.front().field();
  std::vector<std::size_t> k(bounds.size(), 0);
  for (;;) {
    std::size_t i = k.size();
    while (i > 0) {
      --i;
      if (++k[i] <= bounds[i]) break;
      k[i] = 0;
      if (i == 0) return {};
    }
    Scalar total = Scalar::zero(field);
    for (std::size_t j = 0; j < k.size(); ++j)
      total = total + sigmas[j] * Scalar::from_int(field, static_cast<std::int64_t>(k[j]));
    if (total.is_zero()) return k;
  }
}

Thm21Certificate thm21_certify(const MatSubspace& v, const GroupedFrame& g, const LambdaSpec& lambda) {
  require_same_field(*v.field(), *g.field());
  if (v.n() != g.n()) fail(ErrorCode::ShapeMismatch, "frame and subspace sizes differ");
  Thm21Certificate cert;
  for (std::size_t p = 0; p < g.part_count(); ++p) cert.part_ranks.push_back(g.part_rank(p));

  // (i) idempotents of the block-diagonal centralizer have per-block trace k_P * 1_F
  const auto bad = sigma_condition_failure(lambda.sigmas, cert.part_ranks);
  if (!bad.empty()) fail(ErrorCode::HypothesisFailed, "sigma condition: sum sigma_P k_P = 0 at k = " + tuple_string(bad));
  cert.sigma_tuples_checked = 1;
  for (auto r : cert.part_ranks) cert.sigma_tuples_checked *= (r + 1);
  cert.sigma_tuples_checked -= 1;

  // (ii)
  const auto basis = v.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!(lambda.lambda * basis[i]).trace().is_zero())
      fail(ErrorCode::HypothesisFailed, "containment: V not in Lambda^perp at basis element " + std::to_string(i));
    if (!(lambda.lambda * zero_weight_project(basis[i], g)).trace().is_zero())
      fail(ErrorCode::HypothesisFailed, "containment: pi_0(V) not in Lambda^perp at basis element " + std::to_string(i));
    cert.containment_checks += 2;
  }

  // (iii)
  cert.positive_weights = g.positive_weights();
  for (const auto& [p, q] : cert.positive_weights)
    for (const auto& [p2, q2] : cert.positive_weights)
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const Matrix left = weight_project(basis[i], g, p, q);
        if (left.is_zero()) {
          cert.product_checks += basis.size();
          continue;
        }
        for (std::size_t j = 0; j < basis.size(); ++j) {
          ++cert.product_checks;
          if (!(left * weight_project(basis[j], g, q2, p2)).is_zero()) {
            std::ostringstream os;
            os << "product vanishing: pi_(" << p << "," << q << ")(v" << i << ") pi_(" << q2 << "," << p2 << ")(v" << j
               << ") != 0";
            fail(ErrorCode::HypothesisFailed, os.str());
          }
        }
      }
  return cert;
}

MatSubspace block_space(const Matrix& left, const Matrix& right) {
  const auto& field = left.field();
  const std::size_t n = left.rows();
  std::vector<Matrix> gens;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gens.push_back(left * Matrix::unit(field, n, n, i, j) * right);
  return MatSubspace::span_of(field, n, gens);
}

namespace {

MatSubspace lambda_perp(const Matrix& lambda) {
  return trace_orthogonal(MatSubspace::span_of(lambda.field(), lambda.rows(), {lambda}));
}

}  // namespace

Construction build_example22(FieldPtr field, const std::vector<std::size_t>& ranks, const std::vector<Scalar>& sigmas) {
  if (ranks.size() != sigmas.size()) fail(ErrorCode::InvalidArgument, "one sigma per block required");
  const auto bad = sigma_condition_failure(sigmas, ranks);
  if (!bad.empty()) fail(ErrorCode::SigmaConditionFailed, "sum sigma_i k_i = 0 at k = " + tuple_string(bad));
  GroupedFrame g = GroupedFrame::singletons(IdempotentFrame::standard(field, ranks));
  LambdaSpec lambda = LambdaSpec::make(g, sigmas);
  const std::size_t n = g.n();

  MatSubspace centralizer = MatSubspace::zero(field, n);
  for (std::size_t i = 0; i < g.part_count(); ++i)
    centralizer = sum(centralizer, block_space(g.part_idempotent(i), g.part_idempotent(i)));
  MatSubspace v = intersect(centralizer, lambda_perp(lambda.lambda));
  for (const auto& [p, q] : g.positive_weights()) v = sum(v, block_space(g.part_idempotent(p), g.part_idempotent(q)));
  return Construction{std::move(v), std::move(g), std::move(lambda)};
}

Example23 build_example23_extension(const Construction& base, const Matrix& u, const Matrix& w) {
  const auto& g = base.frame;
  if (g.part_count() < 3) fail(ErrorCode::FamilyPrecondition, "needs at least three blocks");
  const Matrix& e1 = g.part_idempotent(0);
  const Matrix& e2 = g.part_idempotent(1);
  const Matrix& e3 = g.part_idempotent(2);
  if (e1 * u * e2 != u) fail(ErrorCode::BadBlocks, "u is not in e_1 M e_2");
  if (e2 * w * e3 != w) fail(ErrorCode::BadBlocks, "w is not in e_2 M e_3");
  if ((u * w).is_zero()) fail(ErrorCode::ProductZero, "uw = 0");
  MatSubspace ext = extend(base.space, u + w);
  bool corner = true;
  for (const auto& x : ext.basis())
    if (!(e1 * x * e3).is_zero()) corner = false;
  return Example23{std::move(ext), corner};
}

// ---------------------------------------------------------------------------

MatSubspace Family24::centralizer() const {
  const Matrix e12 = e1 + e2;
  return sum(block_space(e12, e12), block_space(e3, e3));
}

MatSubspace Family24::subspace() const {
  MatSubspace v = intersect(centralizer(), lambda_perp(lambda));
  v = sum(v, block_space(e1, e3));
  return sum(v, block_space(e3, e2));
}

void Family24::check_sigma_condition() const {
  if (sigma1 == sigma2) fail(ErrorCode::SigmaConditionFailed, "sigma_1 = sigma_2");
  const auto bad = sigma_condition_failure({sigma1, sigma2}, {n1 + n2, n3});
  if (!bad.empty()) fail(ErrorCode::SigmaConditionFailed, "k_1 sigma_1 + k_2 sigma_2 = 0 at k = " + tuple_string(bad));
}

Family24 Family24::transposed() const {
  return Family24{field, n2, n1, n3, sigma1, sigma2, e2.transpose(), e1.transpose(), e3.transpose(), lambda.transpose()};
}

GroupedFrame Family24::grouped_frame() const {
  std::vector<Matrix> members;
  std::vector<std::vector<std::size_t>> parts;
  if (n1 > 0 && n2 > 0) {
    members = {e1, e2, e3};
    parts = {{0, 1}, {2}};
  } else {
    members = {n1 > 0 ? e1 : e2, e3};
    parts = {{0}, {1}};
  }
  return GroupedFrame(IdempotentFrame(std::move(members)), std::move(parts), {mpq_class(1), mpq_class(3)});
}

Example24 build_example24(FieldPtr field, std::size_t n1, std::size_t n2, std::size_t n3, const Scalar& sigma1,
                          const Scalar& sigma2) {
  if (n3 == 0 || n1 + n2 == 0) fail(ErrorCode::InvalidArgument, "need n3 > 0 and n1 + n2 > 0");
  const std::size_t n = n1 + n2 + n3;
  Family24 fam{field,
               n1,
               n2,
               n3,
               sigma1,
               sigma2,
               block_idempotent(field, n, 0, n1),
               block_idempotent(field, n, n1, n2),
               block_idempotent(field, n, n1 + n2, n3),
               Matrix(field, n, n)};
  fam.check_sigma_condition();
  fam.lambda = (fam.e1 + fam.e2).scaled(sigma1) + fam.e3.scaled(sigma2);

  GroupedFrame g = fam.grouped_frame();
  LambdaSpec lambda = LambdaSpec::make(g, {sigma1, sigma2});
  MatSubspace v = fam.subspace();
  return Example24{Construction{std::move(v), std::move(g), std::move(lambda)}, std::move(fam)};
}

Example24 build_cor26(FieldPtr field, std::size_t n, std::size_t r, const Scalar& sigma1, const Scalar& sigma2) {
  if (r == 0 || r >= n) fail(ErrorCode::RankOutOfRange, "need 0 < r < n");
  Example24 out = build_example24(field, r, 0, n - r, sigma1, sigma2);
  // Direct form: orthogonal complement of sigma_1 e_1 + sigma_2 e_2 and e_1 M e_2.
  const Matrix e1 = block_idempotent(field, n, 0, r);
  const Matrix e2 = block_idempotent(field, n, r, n - r);
  MatSubspace gens = sum(MatSubspace::span_of(field, n, {e1.scaled(sigma1) + e2.scaled(sigma2)}), block_space(e1, e2));
  MatSubspace v = trace_orthogonal(gens);
  if (v != out.construction.space)
    fail(ErrorCode::InternalContractViolation, "orthogonal-complement form disagrees with the two-block family");
  out.construction.space = std::move(v);
  return out;
}

Family24 family24_from(const GroupedFrame& g, const LambdaSpec& lambda, const MatSubspace& v) {
  if (g.part_count() != 2) fail(ErrorCode::FamilyPrecondition, "the two-block family needs exactly two parts");
  const std::size_t low = g.f_value(0) < g.f_value(1) ? 0 : 1;
  const std::size_t high = 1 - low;
  const auto& members = g.part(low);
  if (members.size() > 2) fail(ErrorCode::FamilyPrecondition, "low part has more than two idempotents");
  const auto& field = g.field();
  const std::size_t n = g.n();
  const Matrix zero(field, n, n);
  std::vector<std::pair<Matrix, Matrix>> options;
  if (members.size() == 1) {
    options.emplace_back(g.frame()[members[0]], zero);
    options.emplace_back(zero, g.frame()[members[0]]);
  } else {
    options.emplace_back(g.frame()[members[0]], g.frame()[members[1]]);
    options.emplace_back(g.frame()[members[1]], g.frame()[members[0]]);
  }
  for (auto& [e1, e2] : options) {
    Family24 fam{field,
                 rank(e1),
                 rank(e2),
                 g.part_rank(high),
                 lambda.sigmas.at(low),
                 lambda.sigmas.at(high),
                 e1,
                 e2,
                 g.part_idempotent(high),
                 lambda.lambda};
    if (fam.subspace() == v) {
      fam.check_sigma_condition();
      return fam;
    }
  }
  fail(ErrorCode::FamilyPrecondition, "subspace is not a member of the two-block family for this frame");
}

}  // namespace mz
