#include <random>

#include "doctest.h"
#include "mz/constructions.hpp"
#include "mz/mscore.hpp"

using namespace mz;

namespace {

std::vector<Scalar> sig(const FieldPtr& f, std::initializer_list<std::int64_t> v) {
  std::vector<Scalar> out;
  for (auto x : v) out.push_back(Scalar::from_int(f, x));
  return out;
}

Matrix U3(const FieldPtr& f, std::size_t i, std::size_t j) { return Matrix::unit(f, 3, 3, i, j); }

Matrix random_matrix(const FieldPtr& f, std::size_t n, std::mt19937_64& rng) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.set(i, j, Scalar::from_int(f, static_cast<std::int64_t>(rng() % 11) - 5));
  return m;
}

}  // namespace

TEST_CASE("frame validation") {
  auto f5 = Field::prime(5);
  CHECK_NOTHROW(IdempotentFrame({Matrix::unit(f5, 2, 2, 0, 0), Matrix::unit(f5, 2, 2, 1, 1)}));
  CHECK_THROWS_AS(IdempotentFrame({Matrix::unit(f5, 2, 2, 0, 0)}), Error);
  CHECK_THROWS_AS(IdempotentFrame({Matrix::unit(f5, 2, 2, 0, 1), Matrix::identity(f5, 2) - Matrix::unit(f5, 2, 2, 0, 1)}), Error);
  // Non-standard frame: conjugate by [[1,1],[0,1]].
  auto g = Matrix::from_ints(f5, 2, 2, {1, 1, 0, 1});
  auto gi = inverse(g);
  IdempotentFrame fr({g * Matrix::unit(f5, 2, 2, 0, 0) * gi, g * Matrix::unit(f5, 2, 2, 1, 1) * gi});
  CHECK(fr.ranks() == std::vector<std::size_t>{1, 1});

  auto frame = IdempotentFrame::standard(f5, {1, 1});
  CHECK_THROWS_AS(GroupedFrame(frame, {{0}, {1}}, {mpq_class(1), mpq_class(1)}), Error);
  CHECK_THROWS_AS(GroupedFrame(frame, {{0}, {0}}, {mpq_class(1), mpq_class(2)}), Error);
}

TEST_CASE("weight_project examples") {
  auto f5 = Field::prime(5);
  auto g = GroupedFrame::singletons(IdempotentFrame::standard(f5, {1, 1}));
  auto a = Matrix::from_ints(f5, 2, 2, {1, 2, 3, 4});
  CHECK(weight_project(a, g, 0, 1) == Matrix::unit(f5, 2, 2, 0, 1).scaled(Scalar::from_int(f5, 2)));
  CHECK(zero_weight_project(a, g) == Matrix::from_ints(f5, 2, 2, {1, 0, 0, 4}));
  CHECK(zero_weight_project(a, g).trace() == a.trace());
  CHECK_THROWS_AS(weight_project(a, g, 0, 2), Error);

  auto single = GroupedFrame(IdempotentFrame::standard(f5, {2}), {{0}}, {mpq_class(0)});
  CHECK(zero_weight_project(a, single) == a);
}

TEST_CASE("projection completeness and trace compatibility") {
  std::mt19937_64 rng(99);
  for (const auto& f : {Field::prime(5), Field::prime(7), Field::rationals()}) {
    std::vector<GroupedFrame> frames{
        GroupedFrame::singletons(IdempotentFrame::standard(f, {1, 1, 1})),
        GroupedFrame::singletons(IdempotentFrame::standard(f, {2, 1})),
        GroupedFrame(IdempotentFrame::standard(f, {1, 1, 1}), {{0, 1}, {2}}, {mpq_class(1), mpq_class(3)}),
        GroupedFrame(IdempotentFrame::standard(f, {1, 2, 1}), {{1}, {0, 2}}, {mpq_class(-1, 2), mpq_class(5)}),
    };
    for (const auto& g : frames)
      for (int i = 0; i < 20; ++i) {
        auto a = random_matrix(f, g.n(), rng);
        Matrix total(f, g.n(), g.n());
        for (std::size_t p = 0; p < g.part_count(); ++p)
          for (std::size_t q = 0; q < g.part_count(); ++q) total = total + weight_project(a, g, p, q);
        CHECK(total == a);
        CHECK(zero_weight_project(a, g).trace() == a.trace());
      }
  }
}

TEST_CASE("sigma condition") {
  auto f7 = Field::prime(7);
  // k1 + 2 k2 + 3 k3 over {0,1}^3 minus zero, checked by hand.
  for (int k1 = 0; k1 <= 1; ++k1)
    for (int k2 = 0; k2 <= 1; ++k2)
      for (int k3 = 0; k3 <= 1; ++k3)
        if (k1 + k2 + k3 > 0) CHECK((k1 + 2 * k2 + 3 * k3) % 7 != 0);
  CHECK(sigma_condition_failure(sig(f7, {1, 2, 3}), {1, 1, 1}).empty());
  CHECK(sigma_condition_failure(sig(f7, {1, 2, 4}), {1, 1, 1}) == std::vector<std::size_t>{1, 1, 1});
}

TEST_CASE("thm21_certify examples") {
  auto f7 = Field::prime(7);
  auto c = build_example22(f7, {1, 1, 1}, sig(f7, {1, 2, 3}));
  auto cert = thm21_certify(c.space, c.frame, c.lambda);
  CHECK(cert.sigma_tuples_checked == 7);
  CHECK(cert.positive_weights.size() == 3);

  auto bad = LambdaSpec::make(c.frame, sig(f7, {1, 2, 4}));
  try {
    thm21_certify(c.space, c.frame, bad);
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisFailed);
    CHECK(std::string(e.what()).find("sigma") != std::string::npos);
  }

  auto f5 = Field::prime(5);
  auto single = GroupedFrame(IdempotentFrame::standard(f5, {2}), {{0}}, {mpq_class(0)});
  auto e11 = MatSubspace::span_of(f5, 2, {Matrix::unit(f5, 2, 2, 0, 0)});
  try {
    thm21_certify(e11, single, LambdaSpec::make(single, sig(f5, {1})));
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisFailed);
    CHECK(std::string(e.what()).find("containment") != std::string::npos);
  }
}

TEST_CASE("thm21 product hypothesis detects upper-and-lower mixing") {
  auto f7 = Field::prime(7);
  auto g = GroupedFrame::singletons(IdempotentFrame::standard(f7, {1, 1}));
  // E21 has positive weight (f = 2 - 1), E12 negative; their product is E22.
  auto v = MatSubspace::span_of(f7, 2, {Matrix::unit(f7, 2, 2, 1, 0) + Matrix::unit(f7, 2, 2, 0, 1)});
  try {
    thm21_certify(v, g, LambdaSpec::make(g, sig(f7, {1, 2})));
    FAIL("expected HypothesisFailed");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("product") != std::string::npos);
  }
}

TEST_CASE("build_example22 examples") {
  auto f5 = Field::prime(5);
  auto c = build_example22(f5, {1, 1}, sig(f5, {1, 2}));
  CHECK(c.space.dim() == 2);
  // {[[x,0],[y,z]] : x + 2z = 0}
  CHECK(c.space.contains(Matrix::from_ints(f5, 2, 2, {3, 0, 0, 1})));
  CHECK(c.space.contains(Matrix::unit(f5, 2, 2, 1, 0)));
  CHECK_FALSE(c.space.contains(Matrix::unit(f5, 2, 2, 0, 1)));
  CHECK_FALSE(find_idempotent(c.space));

  auto f7 = Field::prime(7);
  auto c3 = build_example22(f7, {1, 1, 1}, sig(f7, {1, 2, 3}));
  CHECK(c3.space.dim() == 5);
  CHECK(c3.space.codim() == 4);

  auto h = build_example22(f7, {3}, sig(f7, {1}));
  CHECK(h.space == trace_zero_space(f7, 3));

  CHECK_THROWS_AS(build_example22(f7, {1, 1, 1}, sig(f7, {1, 2, 4})), Error);
}

TEST_CASE("upper-block family codimension formula and double certification") {
  struct Fx {
    std::uint32_t p;
    std::vector<std::size_t> ranks;
    std::vector<std::int64_t> s;
  };
  for (const auto& fx : std::vector<Fx>{{7, {1, 2}, {1, 2}}, {5, {1, 1}, {1, 3}}, {7, {2, 1}, {1, 3}}, {11, {1, 1, 1}, {1, 2, 4}}}) {
    auto f = Field::prime(fx.p);
    std::vector<Scalar> sv;
    for (auto x : fx.s) sv.push_back(Scalar::from_int(f, x));
    auto c = build_example22(f, fx.ranks, sv);
    std::size_t cross = 0;
    for (std::size_t i = 0; i < fx.ranks.size(); ++i)
      for (std::size_t j = i + 1; j < fx.ranks.size(); ++j) cross += fx.ranks[i] * fx.ranks[j];
    CHECK(c.space.codim() == 1 + cross);
    CHECK_NOTHROW(thm21_certify(c.space, c.frame, c.lambda));
    if (c.space.dim() <= 6) CHECK_FALSE(find_idempotent(c.space));
  }
}

TEST_CASE("upper-block family over the rationals certifies structurally") {
  auto q = Field::rationals();
  auto c = build_example22(q, {1, 2, 1}, sig(q, {1, 1, 1}));
  CHECK(c.space.codim() == 1 + 2 + 1 + 2);
  CHECK_NOTHROW(thm21_certify(c.space, c.frame, c.lambda));
}

TEST_CASE("build_example23_extension") {
  auto f7 = Field::prime(7);
  auto base = build_example22(f7, {1, 1, 1}, sig(f7, {1, 2, 3}));
  auto ext = build_example23_extension(base, U3(f7, 0, 1), U3(f7, 1, 2));
  CHECK(ext.space.dim() == base.space.dim() + 1);
  CHECK(ext.space.contains(base.space));
  CHECK(ext.corner_vanishes);
  CHECK_FALSE(find_idempotent(ext.space));

  try {
    build_example23_extension(base, U3(f7, 0, 1), U3(f7, 0, 2));
    FAIL("expected BadBlocks");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadBlocks);
  }
  // E12 * (0 in e2 M e3 except row?) -- a nonzero w with u w = 0 needs rank > 1 blocks.
  auto base2 = build_example22(f7, {1, 2, 1}, sig(f7, {1, 1, 1}));
  auto u = Matrix::unit(f7, 4, 4, 0, 1);
  auto w = Matrix::unit(f7, 4, 4, 2, 3);
  try {
    build_example23_extension(base2, u, w);
    FAIL("expected ProductZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ProductZero);
  }
  auto two = build_example22(f7, {1, 1}, sig(f7, {1, 2}));
  CHECK_THROWS_AS(build_example23_extension(two, Matrix::unit(f7, 2, 2, 0, 1), Matrix::unit(f7, 2, 2, 0, 1)), Error);
}

TEST_CASE("build_example24 examples") {
  auto f7 = Field::prime(7);
  auto ex = build_example24(f7, 1, 1, 1, Scalar::from_int(f7, 1), Scalar::from_int(f7, 2));
  CHECK(ex.construction.space.codim() == 3);
  CHECK_NOTHROW(thm21_certify(ex.construction.space, ex.construction.frame, ex.construction.lambda));
  CHECK_FALSE(find_idempotent(ex.construction.space));

  auto f5 = Field::prime(5);
  auto deg = build_example24(f5, 1, 0, 1, Scalar::from_int(f5, 1), Scalar::from_int(f5, 2));
  CHECK(deg.construction.space.codim() == 2);
  CHECK(deg.construction.space == build_cor26(f5, 2, 1, Scalar::from_int(f5, 1), Scalar::from_int(f5, 2)).construction.space);

  try {
    build_example24(f7, 1, 1, 1, Scalar::from_int(f7, 1), Scalar::from_int(f7, 1));
    FAIL("expected SigmaConditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SigmaConditionFailed);
  }
}

TEST_CASE("three-block family codimension formula") {
  struct Fx {
    std::size_t n1, n2, n3;
    std::uint32_t p;
    std::int64_t s1, s2;
  };
  for (const auto& fx : std::vector<Fx>{{1, 1, 1, 7, 1, 2}, {2, 1, 1, 11, 1, 2}, {1, 0, 2, 7, 1, 2}, {0, 2, 1, 7, 1, 3}, {1, 2, 1, 11, 1, 3}}) {
    auto f = Field::prime(fx.p);
    auto ex = build_example24(f, fx.n1, fx.n2, fx.n3, Scalar::from_int(f, fx.s1), Scalar::from_int(f, fx.s2));
    CHECK(ex.construction.space.codim() == (fx.n1 + fx.n2) * fx.n3 + 1);
    CHECK_NOTHROW(thm21_certify(ex.construction.space, ex.construction.frame, ex.construction.lambda));
    CHECK(family24_from(ex.construction.frame, ex.construction.lambda, ex.construction.space).subspace() == ex.construction.space);
  }
}

TEST_CASE("build_cor26 examples") {
  auto f5 = Field::prime(5);
  auto c = build_cor26(f5, 2, 1, Scalar::from_int(f5, 1), Scalar::from_int(f5, 2));
  const auto& v = c.construction.space;
  CHECK(v.codim() == 2);
  // {[[x,y],[0,z]] : x + 2z = 0}: the orthogonal complement of span{diag(1,2), E12}.
  CHECK(v.contains(Matrix::from_ints(f5, 2, 2, {3, 0, 0, 1})));
  CHECK(v.contains(Matrix::unit(f5, 2, 2, 0, 1)));
  CHECK_FALSE(v.contains(Matrix::unit(f5, 2, 2, 1, 0)));
  CHECK(v == trace_orthogonal(MatSubspace::span_of(f5, 2, {Matrix::from_ints(f5, 2, 2, {1, 0, 0, 2}), Matrix::unit(f5, 2, 2, 0, 1)})));

  auto f11 = Field::prime(11);
  for (std::size_t n = 2; n <= 4; ++n)
    for (std::size_t r = 1; r < n; ++r) {
      auto cc = build_cor26(f11, n, r, Scalar::from_int(f11, 1), Scalar::from_int(f11, 2));
      CHECK(cc.construction.space.codim() == r * n - r * r + 1);
    }
  CHECK(build_cor26(f11, 3, 1, Scalar::from_int(f11, 1), Scalar::from_int(f11, 2)).construction.space.codim() == 3);

  auto f3 = Field::prime(3);
  try {
    build_cor26(f3, 2, 1, Scalar::from_int(f3, 1), Scalar::from_int(f3, 2));
    FAIL("expected SigmaConditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SigmaConditionFailed);
  }
  CHECK_THROWS_AS(build_cor26(f5, 2, 0, Scalar::from_int(f5, 1), Scalar::from_int(f5, 2)), Error);
  CHECK_THROWS_AS(build_cor26(f5, 2, 2, Scalar::from_int(f5, 1), Scalar::from_int(f5, 2)), Error);
}

TEST_CASE("family24_from refuses other shapes") {
  auto f7 = Field::prime(7);
  auto c = build_example22(f7, {1, 1, 1}, sig(f7, {1, 2, 3}));
  try {
    family24_from(c.frame, c.lambda, c.space);
    FAIL("expected FamilyPrecondition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FamilyPrecondition);
  }
}
