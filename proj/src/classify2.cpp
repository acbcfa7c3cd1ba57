#include "mz/classify2.hpp"

#include <set>

#include "mz/census.hpp"

namespace mz {

std::string_view to_string(Spectrum s) noexcept {
  switch (s) {
    case Spectrum::SplitDistinct: return "split-distinct";
    case Spectrum::Repeated: return "repeated";
    case Spectrum::Irreducible: return "irreducible";
  }
  return "?";
}

std::string_view to_string(Classify2Kind k) noexcept {
  switch (k) {
    case Classify2Kind::TraceZeroHyperplane: return "TraceZeroHyperplane";
    case Classify2Kind::SplitDiagonalPlusNilpotent: return "SplitDiagonalPlusNilpotent";
    case Classify2Kind::UnipotentLine: return "UnipotentLine";
    case Classify2Kind::Char2PlaneInH: return "Char2PlaneInH";
  }
  return "?";
}

namespace {

Scalar det2(const Matrix& a) { return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0); }

bool is_rational_square(const mpq_class& x) {
  if (sgn(x) < 0) return false;
  return mpz_perfect_square_p(x.get_num_mpz_t()) != 0 && mpz_perfect_square_p(x.get_den_mpz_t()) != 0;
}

bool is_square(const Scalar& s) {
  const auto& f = s.field();
  if (f->is_finite()) {
    for (std::uint64_t x = 0; x < f->order(); ++x) {
      Scalar sx(f, static_cast<std::uint32_t>(x));
      if (sx * sx == s) return true;
    }
    return false;
  }
  if (f->kind() != Field::Kind::Rational) fail(ErrorCode::UnsupportedField, "square test needs a finite field or Q");
  return is_rational_square(s.qnum().re);
}

template <class Visit>
void for_each_element(const MatSubspace& v, Visit&& visit) {
  const auto q = static_cast<std::uint32_t>(v.field()->order());
  std::vector<std::uint32_t> coords(v.dim(), 0);
  for (;;) {
    visit(v.element(coords));
    std::size_t i = coords.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (++coords[i] < q) break;
      coords[i] = 0;
    }
  }
}

template <class Visit>
void for_each_2x2(const FieldPtr& f, Visit&& visit) {
  const auto q = static_cast<std::uint32_t>(f->order());
  Matrix::FiniteStore c(4, 0);
  for (;;) {
    visit(Matrix::from_codes(f, 2, 2, c));
    std::size_t i = 4;
    for (;;) {
      if (i == 0) return;
      --i;
      if (++c[i] < q) break;
      c[i] = 0;
    }
  }
}

void require_2x2(const MatSubspace& v) {
  if (v.n() != 2) fail(ErrorCode::ShapeMismatch, "expected a subspace of M_2");
}

}  // namespace

Spectrum spectrum_2x2(const Matrix& a) {
  if (a.rows() != 2 || a.cols() != 2) fail(ErrorCode::ShapeMismatch, "expected a 2 x 2 matrix");
  const auto& f = a.field();
  const Scalar t = a.trace(), d = det2(a);
  if (f->is_finite()) {
    std::size_t roots = 0;
    for (std::uint64_t x = 0; x < f->order(); ++x) {
      Scalar sx(f, static_cast<std::uint32_t>(x));
      if ((sx * sx - t * sx + d).is_zero()) ++roots;
    }
    if (roots == 2) return Spectrum::SplitDistinct;
    if (roots == 1) return Spectrum::Repeated;
    return Spectrum::Irreducible;
  }
  if (f->kind() != Field::Kind::Rational) fail(ErrorCode::UnsupportedField, "spectrum over this field");
  const Scalar disc = t * t - Scalar::from_int(f, 4) * d;
  if (disc.is_zero()) return Spectrum::Repeated;
  return is_square(disc) ? Spectrum::SplitDistinct : Spectrum::Irreducible;
}

Lemma31Report lemma31_check(const MatSubspace& v, std::uint64_t budget) {
  require_2x2(v);
  const auto verdict = ms_by_idempotent_criterion(v, budget);
  if (verdict.status != MsStatus::MS_Proper) fail(ErrorCode::NotAnMS, "subspace is not a proper MS");
  Lemma31Report rep;
  rep.part_ii_applicable = v.dim() == 2;
  for_each_element(v, [&](const Matrix& a) {
    ++rep.elements_checked;
    if (a.trace().is_zero()) return;
    ++rep.trace_nonzero;
    if (det2(a).is_zero()) {
      rep.part_i_holds = false;
      fail(ErrorCode::InternalContractViolation, "trace-nonzero singular element in an MS: " + a.to_string());
    }
    if (!rep.part_ii_applicable || !rep.part_ii_holds) return;
    const Spectrum sp = spectrum_2x2(a);
    if (sp != Spectrum::SplitDistinct) {
      rep.part_ii_holds = false;
      rep.part_ii_violation = a;
      rep.part_ii_violation_spectrum = sp;
    }
  });
  return rep;
}

MatSubspace build_cor32_family(const Scalar& l1, const Scalar& l2, const Matrix& g) {
  const auto& f = g.field();
  require_same_field(*f, *l1.field());
  require_same_field(*f, *l2.field());
  if (g.rows() != 2 || g.cols() != 2) fail(ErrorCode::ShapeMismatch, "conjugator must be 2 x 2");
  if (l1 == l2) fail(ErrorCode::ParameterViolation, "lambda1 = lambda2");
  if (l1.is_zero() || l2.is_zero()) fail(ErrorCode::ParameterViolation, "lambda must be nonzero");
  if ((l1 + l2).is_zero()) fail(ErrorCode::ParameterViolation, "lambda1 + lambda2 = 0");
  const Matrix gi = inverse(g);
  const Matrix e1 = g * Matrix::unit(f, 2, 2, 0, 0) * gi;
  const Matrix e2 = g * Matrix::unit(f, 2, 2, 1, 1) * gi;
  const Matrix n12 = g * Matrix::unit(f, 2, 2, 0, 1) * gi;
  return MatSubspace::span_of(f, 2, {e1.scaled(l1) + e2.scaled(l2), n12});
}

MatSubspace build_cor34_family(const Matrix& c) {
  if (c.rows() != 2 || c.cols() != 2) fail(ErrorCode::ShapeMismatch, "expected a 2 x 2 matrix");
  if (c.is_zero() || !(c * c).is_zero()) fail(ErrorCode::NotNilpotent, "c must be nonzero with c^2 = 0");
  return MatSubspace::span_of(c.field(), 2, {Matrix::identity(c.field(), 2) + c});
}

std::vector<Classify2Family> predicted_maximal_families(const FieldPtr& field) {
  if (!field->is_finite()) fail(ErrorCode::UnsupportedField, "family enumeration needs a finite field");
  const bool char2 = field->characteristic() == 2;
  const std::string tag = char2 ? "char-2:" : "odd-char:";
  std::vector<Classify2Family> out;
  const MatSubspace h = trace_zero_space(field, 2);

  if (!char2) {
    out.push_back({Classify2Kind::TraceZeroHyperplane, tag + "i", h, false, {}, {}, {}, {}});
  } else {
    // Planes of H avoiding I_2, via coordinates relative to H's basis.
    const Matrix id = Matrix::identity(field, 2);
    std::set<MatSubspace> seen;
    SubspaceEnumerator planes(field, 3, 2);
    while (auto coords = planes.next()) {
      auto p = MatSubspace::from_rows(2, *coords * h.echelon());
      if (p.contains(id) || !seen.insert(p).second) continue;
      out.push_back({Classify2Kind::Char2PlaneInH, tag + "i", std::move(p), false, {}, {}, {}, {}});
    }
  }

  // Split diagonal plus nilpotent, over all of GL_2 and admissible lambda pairs.
  {
    std::vector<std::pair<Scalar, Scalar>> lambdas;
    for (std::uint64_t x = 1; x < field->order(); ++x)
      for (std::uint64_t y = 1; y < field->order(); ++y) {
        Scalar a(field, static_cast<std::uint32_t>(x)), b(field, static_cast<std::uint32_t>(y));
        if (a != b && !(a + b).is_zero()) lambdas.emplace_back(a, b);
      }
    std::set<MatSubspace> seen;
    if (!lambdas.empty())
      for_each_2x2(field, [&](const Matrix& g) {
        if (det2(g).is_zero()) return;
        for (const auto& [l1, l2] : lambdas) {
          auto v = build_cor32_family(l1, l2, g);
          if (!seen.insert(v).second) continue;
          out.push_back({Classify2Kind::SplitDiagonalPlusNilpotent, tag + "ii", std::move(v), false, l1, l2, g, {}});
        }
      });
  }

  if (!char2) {
    std::set<MatSubspace> seen;
    for_each_2x2(field, [&](const Matrix& c) {
      if (c.is_zero() || !(c * c).is_zero()) return;
      auto v = build_cor34_family(c);
      if (!seen.insert(v).second) return;
      out.push_back({Classify2Kind::UnipotentLine, tag + "iii", std::move(v), true, {}, {}, {}, c});
    });
  }

  std::stable_sort(out.begin(), out.end(), [](const Classify2Family& a, const Classify2Family& b) {
    if (a.clause != b.clause) return a.clause < b.clause;
    return a.space < b.space;
  });
  return out;
}

BaseChangeDemo basechange_demo(const FieldPtr& base, const Scalar& s, std::uint64_t budget) {
  require_same_field(*base, *s.field());
  if (base->kind() != Field::Kind::Prime && base->kind() != Field::Kind::Rational)
    fail(ErrorCode::UnsupportedField, "base field must be a prime field or Q");
  const Scalar one = Scalar::one(base);
  if (s.is_zero() || s == one) fail(ErrorCode::ExcludedParameter, "s must not be 0, 1 or -1");
  if (is_square(s)) fail(ErrorCode::SquareParameter, "s = " + s.to_string() + " is a square in the base field");
  if (s == -one) fail(ErrorCode::ExcludedParameter, "s must not be 0, 1 or -1");

  // a = diag(1, s), b = antidiagonal ones
  auto make_ab = [](const FieldPtr& f, const Scalar& sv) {
    Matrix a = Matrix::identity(f, 2);
    a.set(1, 1, sv);
    Matrix b(f, 2, 2);
    b.set(0, 1, Scalar::one(f));
    b.set(1, 0, Scalar::one(f));
    return std::pair{a, b};
  };
  auto [a, b] = make_ab(base, s);
  const MatSubspace v = MatSubspace::span_of(base, 2, {a, b});
  const Matrix id = Matrix::identity(base, 2);
  if (v.contains(id)) fail(ErrorCode::InternalContractViolation, "I_2 in span{a, b}");

  BaseChangeDemo demo{base, s, a, b, v,
                      MsVerdict{MsStatus::MS_Proper, VerdictMethod::StructuralCertificate, {}, {}},
                      "", false, std::nullopt, base, v, a, MsVerdict{MsStatus::NotMS, VerdictMethod::StructuralCertificate, {}, {}}};

  if (base->is_finite()) {
    demo.v_verdict = ms_by_idempotent_criterion(v, budget);
    demo.v_ms_method = "idempotent scan";
    for_each_element(v, [&](const Matrix& x) {
      if (!x.is_zero() && det2(x).is_zero())
        fail(ErrorCode::InternalContractViolation, "singular nonzero element " + x.to_string());
    });
  } else {
    // det(a + x b) = s - x^2 is a quadratic in x; three evaluations fix it.
    for (int x = 0; x < 3; ++x) {
      const Scalar sx = Scalar::from_int(base, x);
      if (det2(a + b.scaled(sx)) != s - sx * sx)
        fail(ErrorCode::InternalContractViolation, "det(a + x b) = s - x^2 failed");
    }
    if (det2(b).is_zero()) fail(ErrorCode::InternalContractViolation, "b singular");
    // No rational root of s - x^2, so every nonzero element is invertible and
    // I_2 is the only idempotent candidate; I_2 is not in V.
    demo.v_verdict = MsVerdict{MsStatus::MS_Proper, VerdictMethod::StructuralCertificate, {}, {}};
    demo.v_ms_method = "invertibility argument";
  }
  // Not inside H (Tr a = 1 + s != 0) and odd or zero characteristic, so the
  // only proper superspace of dimension 3 that is an MS would be H itself.
  demo.v_maximal = demo.v_verdict.status == MsStatus::MS_Proper && !a.trace().is_zero() && base->characteristic() != 2;
  if (base->is_finite()) demo.v_maximal_brute_force = is_maximal_ms(v, budget).is_maximal;

  // L = K[t]/(t^2 - s), sqrt(s) = t
  Scalar t = Scalar::zero(base);
  if (base->is_finite()) {
    const auto p = base->characteristic();
    demo.extension = Field::extension(p, {(p - s.code()) % p, 0, 1});
    const std::int64_t tc[] = {0, 1};
    t = Scalar(demo.extension, demo.extension->from_coefficients(tc));
  } else {
    demo.extension = Field::rational_quadratic({-s.qnum().re, mpq_class(0), mpq_class(1)});
    t = Scalar(demo.extension, QNum{0, 1});
  }
  const auto& l = demo.extension;
  const Scalar s_l = base->is_finite() ? Scalar::from_int(l, s.code()) : Scalar::from_rational(l, s.qnum().re);
  if (t * t != s_l) fail(ErrorCode::InternalContractViolation, "t^2 != s in the extension");
  auto [al, bl] = make_ab(l, s_l);
  demo.u = MatSubspace::span_of(l, 2, {al, bl});
  demo.c = (al + bl.scaled(t)).scaled((Scalar::one(l) + s_l).inverse());
  auto flip = verdict_from_candidate(demo.u, demo.c);
  if (!flip) fail(ErrorCode::InternalContractViolation, "c is not a nonzero idempotent of U");
  demo.u_verdict = *std::move(flip);
  return demo;
}

}  // namespace mz
