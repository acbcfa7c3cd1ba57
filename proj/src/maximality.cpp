#include "mz/maximality.hpp"

namespace mz {

std::string_view to_string(WitnessCase c) noexcept {
  switch (c) {
    case WitnessCase::Central: return "Central";
    case WitnessCase::Case1: return "Case1";
    case WitnessCase::Case1Transposed: return "Case1Transposed";
    case WitnessCase::Case2: return "Case2";
  }
  return "?";
}

namespace {

void ensure(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InternalContractViolation, what);
}

MatSubspace transpose_space(const MatSubspace& s) {
  std::vector<Matrix> gens;
  for (const auto& b : s.basis()) gens.push_back(b.transpose());
  return MatSubspace::span_of(s.field(), s.n(), gens);
}

struct Case1Result {
  Matrix q;
  Matrix v;
  Scalar beta;
  std::size_t rank;
  Scalar trace_law;
};

// Case 1 with w1 != 0: reduced direction w1 + w2, w1 in e3 M e1, w2 in e2 M e3.
Case1Result run_case1(const Family24& fam, const MatSubspace& space, const Matrix& w1, const Matrix& w2) {
  const auto& field = fam.field;
  const Matrix& e1 = fam.e1;
  const Matrix& e3 = fam.e3;

  // v in e1 M e3 with w1 v w1 = w1 and v w1 v = v, from a rank factorization of w1.
  const Matrix v = e1 * rank_factorization(w1) * e3;
  const std::size_t r = rank(w1);
  ensure(w1 * v * w1 == w1, "w1 v w1 = w1");
  ensure(v * w1 * v == v, "v w1 v = v");
  ensure((v * w1).is_idempotent() && (w1 * v).is_idempotent(), "v w1 and w1 v idempotent");
  ensure(rank(v * w1) == r && rank(w1 * v) == r, "rank(v w1) = rank(w1 v) = r");
  ensure(r >= 1 && r <= fam.n3, "1 <= rank(w1) <= n3");

  const Scalar n3 = Scalar::from_int(field, static_cast<std::int64_t>(fam.n3));
  const Scalar rr = Scalar::from_int(field, static_cast<std::int64_t>(r));
  const Scalar n3_minus_r = Scalar::from_int(field, static_cast<std::int64_t>(fam.n3 - r));
  const Scalar denom = rr * fam.sigma1 + n3_minus_r * fam.sigma2;
  ensure(!denom.is_zero(), "r sigma1 + (n3 - r) sigma2 != 0");
  const Scalar beta = -(fam.sigma2 * n3) / denom;
  const Scalar one = Scalar::one(field);
  ensure(!(beta + one).is_zero(), "beta != -1");

  const Matrix q = ((e3 + w2 + v.scaled(beta)) * (e3 + w1) + (e3 - w1 * v).scaled(beta)).scaled((one + beta).inverse());

  const Scalar trace_law = fam.sigma2 * n3 + (fam.sigma1 - fam.sigma2) * beta * rr / (beta + one);
  ensure((fam.lambda * q).trace() == trace_law, "Tr(Lambda Q) matches the closed form");
  ensure((fam.lambda * (q - (w1 + w2))).trace().is_zero(), "Tr(Lambda (Q - w)) = 0");
  ensure(q.trace() == n3, "Tr(Q) = n3");
  // The e3 M e1 and e2 M e3 blocks of Q are w1/(1+beta) and w2/(1+beta).
  ensure(space.contains(q - (w1 + w2).scaled((one + beta).inverse())), "Q - (1+beta)^-1 w in V");
  return Case1Result{q, v, beta, r, trace_law};
}

}  // namespace

WitnessBundle maximality_witness(const Family24& fam, const MatSubspace& space, const Matrix& w) {
  const auto& field = fam.field;
  require_same_field(*field, *space.field());
  require_same_field(*field, *w.field());
  if (space.n() != fam.n() || w.rows() != fam.n() || w.cols() != fam.n())
    fail(ErrorCode::ShapeMismatch, "direction and family sizes differ");
  if (space.contains(w)) fail(ErrorCode::DirectionInV, "direction lies in V");

  const Matrix& e1 = fam.e1;
  const Matrix& e2 = fam.e2;
  const Matrix& e3 = fam.e3;
  const Matrix e12 = e1 + e2;

  // The e1 M e3 and e3 M e2 components are in V and are dropped.
  const Matrix w13 = e1 * w * e3;
  const Matrix w32 = e3 * w * e2;
  Matrix w0 = e12 * w * e12 + e3 * w * e3;
  Matrix w1 = e3 * w * e1;
  Matrix w2 = e2 * w * e3;
  ensure(w0 + w1 + w2 + w13 + w32 == w, "block decomposition reconstructs w");
  ensure(space.contains(w13) && space.contains(w32), "dropped components lie in V");

  const MatSubspace extended = extend(space, w);
  const Scalar one = Scalar::one(field);
  const Scalar trace_w0 = (fam.lambda * w0).trace();

  WitnessBundle out{w, w0, w1, w2, WitnessCase::Central, one, {}, {}, {}, 0, {}, {}, {}, Matrix(field, fam.n(), fam.n())};

  if (w1.is_zero() && w2.is_zero()) {
    ensure(!trace_w0.is_zero(), "central direction outside Lambda^perp");
    // I_n - gamma w in V for gamma = Tr(Lambda) / Tr(Lambda w0).
    const Matrix id = Matrix::identity(field, fam.n());
    const Scalar gamma = fam.lambda.trace() / trace_w0;
    ensure(!gamma.is_zero(), "gamma != 0");
    ensure(space.contains(id - w.scaled(gamma)), "I - gamma w in V");
    out.kind = WitnessCase::Central;
    out.gamma = gamma;
    out.coefficient = gamma;
    out.idempotent = id;
  } else if (trace_w0.is_zero()) {
    // Case 1: w0 is in Z(T') cap Lambda^perp, a subset of V.
    ensure(space.contains(w0), "w0 in V");
    if (!w1.is_zero()) {
      auto res = run_case1(fam, space, w1, w2);
      out.kind = WitnessCase::Case1;
      out.coefficient = (one + res.beta).inverse();
      out.v = std::move(res.v);
      out.beta = res.beta;
      out.rank = res.rank;
      out.trace_law = res.trace_law;
      out.idempotent = std::move(res.q);
    } else {
      // Transposition swaps the roles of w1 and w2 and maps the family to itself.
      const Family24 tf = fam.transposed();
      const MatSubspace tspace = transpose_space(space);
      ensure(tspace == tf.subspace(), "transposed family reproduces V^T");
      auto res = run_case1(tf, tspace, w2.transpose(), w1.transpose());
      out.kind = WitnessCase::Case1Transposed;
      out.coefficient = (one + res.beta).inverse();
      out.v = std::move(res.v);
      out.beta = res.beta;
      out.rank = res.rank;
      out.trace_law = res.trace_law;
      out.idempotent = res.q.transpose();
    }
  } else {
    // Case 2: F w0 + (Lambda^perp cap Z(T')) = Z(T'), and Tr(Lambda .) vanishes on the
    // second summand, so the w0-coordinate of e3 is Tr(Lambda e3) / Tr(Lambda w0).
    const Scalar alpha = (fam.lambda * e3).trace() / trace_w0;
    ensure(!alpha.is_zero(), "alpha != 0");
    const Matrix x0 = e3 - w0.scaled(alpha);
    ensure(fam.centralizer().contains(x0) && (fam.lambda * x0).trace().is_zero(), "x0 in Lambda^perp cap Z(T')");
    const Matrix w21 = w2 * w1;
    ensure(e2 * w21 * e1 == w21 && space.contains(w21), "w2 w1 in e2 M e1, inside V");
    out.kind = WitnessCase::Case2;
    out.alpha = alpha;
    out.coefficient = alpha;
    out.x0 = x0;
    out.idempotent = e3 + w1.scaled(alpha) + w2.scaled(alpha) + w21.scaled(alpha * alpha);
  }

  const Matrix& q = out.idempotent;
  ensure(!q.is_zero(), "Q != 0");
  ensure(q.is_idempotent(), "Q^2 = Q");
  ensure(extended.contains(q), "Q in V + F w");
  ensure(space.contains(q - w.scaled(out.coefficient)), "Q - c w in V");
  return out;
}

MaximalityCertificate certify_maximal(const Family24& fam, const MatSubspace& space) {
  if (fam.subspace() != space) fail(ErrorCode::FamilyPrecondition, "subspace is not the family's member");
  fam.check_sigma_condition();
  const GroupedFrame g = fam.grouped_frame();
  std::vector<Scalar> sigmas{fam.sigma1, fam.sigma2};
  MaximalityCertificate cert{true, "exhaustive", thm21_certify(space, g, LambdaSpec::make(g, sigmas)), {}};
  if (space.is_full()) fail(ErrorCode::ImproperSubspace, "family member is the full algebra");

  if (space.field()->is_finite()) {
    DirectionEnumerator dirs(space);
    while (auto w = dirs.next()) cert.bundles.push_back(maximality_witness(fam, space, *w));
    return cert;
  }

  cert.mode = "theorem-backed spot check";
  std::vector<bool> is_pivot(space.ambient_dim(), false);
  for (auto p : space.pivots()) is_pivot[p] = true;
  std::vector<Matrix> complement;
  const std::size_t n = space.n();
  for (std::size_t j = 0; j < space.ambient_dim(); ++j)
    if (!is_pivot[j]) complement.push_back(Matrix::unit(space.field(), n, n, j / n, j % n));
  for (const auto& w : complement) cert.bundles.push_back(maximality_witness(fam, space, w));
  for (std::size_t i = 0; i < complement.size(); ++i)
    for (std::size_t j = i + 1; j < complement.size(); ++j)
      cert.bundles.push_back(maximality_witness(fam, space, complement[i] + complement[j]));
  return cert;
}

}  // namespace mz
