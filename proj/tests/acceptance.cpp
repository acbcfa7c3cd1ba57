// Acceptance suite: one PASS/FAIL line per criterion. All checks are exact;
// the only tolerance anywhere is zero (no disagreements, exact counts).

#include <chrono>
#include <cstdio>
#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "mz/census.hpp"
#include "mz/maximality.hpp"
#include "oracles.hpp"

using namespace mz;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

template <class... T>
std::string cat(const T&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

Scalar S(const FieldPtr& f, std::int64_t v) { return Scalar::from_int(f, v); }

// Streams every element of s without materializing the list.
void for_each_element(const MatSubspace& s, const std::function<void(const Matrix&)>& visit) {
  const auto q = static_cast<std::uint32_t>(s.field()->order());
  std::vector<std::uint32_t> coords(s.dim(), 0);
  for (;;) {
    visit(s.element(coords));
    std::size_t i = coords.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (++coords[i] < q) break;
      coords[i] = 0;
    }
  }
}

std::uint64_t count_nonzero_idempotents(const MatSubspace& s, std::uint64_t* visited) {
  std::uint64_t hits = 0, seen = 0;
  for_each_element(s, [&](const Matrix& m) {
    ++seen;
    if (!m.is_zero() && m * m == m) ++hits;
  });
  if (visited) *visited = seen;
  return hits;
}

// x^2 - Tr(a) x + det(a) has a root in the (finite) field.
bool char_poly_has_root(const Matrix& a) {
  const auto& f = a.field();
  const Scalar tr = a.trace();
  const Scalar det = a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0);
  for (std::uint32_t c = 0; c < f->order(); ++c) {
    const Scalar x(f, c);
    if ((x * x - tr * x + det).is_zero()) return true;
  }
  return false;
}

std::optional<Matrix> irreducible_trace_nonzero_element(const MatSubspace& s) {
  std::optional<Matrix> found;
  for_each_element(s, [&](const Matrix& m) {
    if (!found && !m.trace().is_zero() && !char_poly_has_root(m)) found = m;
  });
  return found;
}

// Maximal MSs of M_2(F_q) by containment among all idempotent-free proper
// subspaces; independent of the one-step extension test in the library.
std::vector<MatSubspace> maximal_ms_by_containment(const FieldPtr& f) {
  std::vector<MatSubspace> ms;
  for (std::size_t k = 0; k < 4; ++k)
    for (const auto& s : enumerate_matrix_subspaces(f, 2, k))
      if (oracle::naive_idempotent_free(s)) ms.push_back(s);
  std::vector<MatSubspace> out;
  for (const auto& s : ms) {
    bool covered = false;
    for (const auto& t : ms)
      if (t.dim() > s.dim() && t.contains(s)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<MatSubspace> sorted(std::vector<MatSubspace> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// ---------------------------------------------------------------------------

Outcome c1_oracle_equivalence() {
  Outcome o;
  std::ostringstream sum;
  for (std::uint32_t q : {2u, 3u}) {
    auto f = Field::prime(q);
    const auto rep = oracle_compare(f, 2);
    std::uint64_t proper = 0;
    for (std::uint64_t k = 0; k < 4; ++k) proper += oracle::gaussian_binomial(4, k, q);
    o.require(rep.checked == proper, cat("F_", q, " checked ", rep.checked, " of ", proper));
    o.require(rep.disagreements.empty(), cat("F_", q, " has ", rep.disagreements.size(), " disagreements"));
    sum << "F_" << q << ": " << rep.checked - rep.disagreements.size() << "/" << rep.checked << " agree; ";
  }
  o.summary = sum.str() + "tolerance 0 disagreements";
  return o;
}

Outcome c2_codimension_one() {
  Outcome o;
  std::ostringstream sum;
  const std::map<std::uint32_t, std::pair<std::uint64_t, std::uint64_t>> expected = {{2, {15, 0}}, {3, {40, 1}}, {5, {156, 1}}};
  for (const auto& [q, want] : expected) {
    auto f = Field::prime(q);
    const auto h = trace_zero_space(f, 2);
    std::uint64_t total = 0, ms = 0;
    for (const auto& s : enumerate_matrix_subspaces(f, 2, 3)) {
      ++total;
      const bool naive = oracle::naive_idempotent_free(s);
      const bool fast = ms_by_idempotent_criterion(s).is_ms();
      o.require(naive == fast, cat("F_", q, " routes disagree on a hyperplane"));
      if (naive) {
        ++ms;
        o.require(s == h, cat("F_", q, " MS hyperplane differs from H"));
      }
    }
    o.require(total == oracle::gaussian_binomial(4, 3, q) && total == want.first, cat("F_", q, " hyperplane count ", total));
    o.require(ms == want.second, cat("F_", q, " MS hyperplanes ", ms, ", expected ", want.second));
    sum << "F_" << q << ": " << ms << "/" << total << "; ";
  }
  o.summary = sum.str() + "the MS hyperplane is H; exact counts";
  return o;
}

Outcome c3_upper_block_certified() {
  Outcome o;
  auto f7 = Field::prime(7);
  const auto c = build_example22(f7, {1, 1, 1}, {S(f7, 1), S(f7, 2), S(f7, 3)});
  const auto cert = thm21_certify(c.space, c.frame, c.lambda);
  std::uint64_t visited = 0;
  const auto hits = count_nonzero_idempotents(c.space, &visited);
  o.require(c.space.dim() == 5, "dimension 5");
  o.require(visited == 16807, cat("visited ", visited, " elements"));
  o.require(hits == 0, cat(hits, " nonzero idempotents found"));
  o.summary = cat("F_7 ranks (1,1,1) sigma (1,2,3): certificate ok (", cert.sigma_tuples_checked, " sigma tuples, ",
                  cert.product_checks, " product checks); scan ", visited, " elements, ", hits, " idempotents");
  return o;
}

Outcome c4_extension() {
  Outcome o;
  auto f7 = Field::prime(7);
  const auto c = build_example22(f7, {1, 1, 1}, {S(f7, 1), S(f7, 2), S(f7, 3)});
  const Matrix u = Matrix::unit(f7, 3, 3, 0, 1), w = Matrix::unit(f7, 3, 3, 1, 2);
  const auto ext = build_example23_extension(c, u, w);
  o.require(ext.space.contains(c.space), "U contains V");
  o.require(ext.space.dim() == c.space.dim() + 1, "dim U = dim V + 1");
  o.require(ext.space == extend(c.space, u + w), "U = F(u+w) + V");
  std::uint64_t visited = 0;
  const auto hits = count_nonzero_idempotents(ext.space, &visited);
  o.require(visited == 117649, cat("visited ", visited));
  o.require(hits == 0, cat(hits, " nonzero idempotents in U"));
  o.summary = cat("dim V = ", c.space.dim(), ", dim U = ", ext.space.dim(), "; scan ", visited, " elements, ", hits,
                  " idempotents; V is not maximal");
  return o;
}

// Test-side verification of one witness bundle.
void verify_bundle(Outcome& o, const Family24& fam, const MatSubspace& v, const WitnessBundle& b) {
  const Matrix& q = b.idempotent;
  const auto f = fam.field;
  const std::string dir = b.direction.to_string();
  o.require(!q.is_zero() && q * q == q, "Q nonzero idempotent for " + dir);
  o.require(extend(v, b.direction).contains(q), "Q in V + Fw for " + dir);
  o.require(v.contains(q - b.direction.scaled(b.coefficient)), "Q - c w in V for " + dir);
  const Scalar n3 = S(f, static_cast<std::int64_t>(fam.n3));
  switch (b.kind) {
    case WitnessCase::Central:
      o.require(q.is_identity(), "central Q = I");
      break;
    case WitnessCase::Case1:
    case WitnessCase::Case1Transposed: {
      const Matrix w1 = b.kind == WitnessCase::Case1 ? b.w1 : b.w2.transpose();
      if (!b.v || !b.beta) {
        o.require(false, "case 1 data present");
        return;
      }
      const Matrix& vv = *b.v;
      o.require(w1 * vv * w1 == w1 && vv * w1 * vv == vv, "w1 v w1 = w1, v w1 v = v");
      const Matrix vw = vv * w1, wv = w1 * vv;
      o.require(vw * vw == vw && wv * wv == wv, "v w1 and w1 v idempotent");
      const Scalar beta = *b.beta;
      o.require(!(beta + S(f, 1)).is_zero(), "beta != -1");
      const Scalar r = S(f, static_cast<std::int64_t>(rank(w1)));
      o.require(b.rank == rank(w1), "rank recorded");
      const Scalar law = fam.sigma2 * n3 + (fam.sigma1 - fam.sigma2) * beta * r / (beta + S(f, 1));
      o.require((fam.lambda * q).trace() == law, "trace law Tr(Lambda Q) for " + dir);
      o.require(b.trace_law && *b.trace_law == law, "recorded trace law");
      o.require(q.trace() == n3, "Tr Q = n3");
      const Scalar expected_beta = -(fam.sigma2 * n3) / (r * fam.sigma1 + (n3 - r) * fam.sigma2);
      o.require(beta == expected_beta, "beta closed form");
      break;
    }
    case WitnessCase::Case2: {
      if (!b.alpha || !b.x0) {
        o.require(false, "case 2 data present");
        return;
      }
      o.require(!b.alpha->is_zero(), "alpha != 0");
      o.require(b.w0.scaled(*b.alpha) + *b.x0 == fam.e3, "alpha w0 + x0 = e3");
      o.require((fam.lambda * *b.x0).trace().is_zero(), "x0 in Lambda-perp");
      o.require(fam.centralizer().contains(*b.x0), "x0 in Z(T')");
      o.require(v.contains(b.w2 * b.w1), "w2 w1 in V");
      o.require(q.trace() == n3, "Tr Q = n3");
      break;
    }
  }
}

Outcome certify_family(const Example24& ex, std::uint64_t expected_dirs, bool need_all_cases) {
  Outcome o;
  const auto& v = ex.construction.space;
  const auto cert = certify_maximal(ex.family, v);
  const auto q = ex.family.field->order();
  const std::uint64_t dirs = (oracle::ipow(q, v.codim()) - 1) / (q - 1);
  o.require(dirs == expected_dirs, cat("direction count ", dirs));
  o.require(cert.bundles.size() == dirs, cat(cert.bundles.size(), " bundles"));
  std::map<WitnessCase, int> cases;
  std::set<std::string> seen;
  for (const auto& b : cert.bundles) {
    ++cases[b.kind];
    seen.insert(MatSubspace::span_of(v.field(), v.n(), {b.direction}).echelon().to_string());
    verify_bundle(o, ex.family, v, b);
  }
  o.require(seen.size() == dirs, "bundles cover distinct quotient lines");
  const auto brute = is_maximal_ms(v);
  o.require(brute.is_maximal && cert.is_maximal, "engine and brute force both report maximal");
  if (need_all_cases)
    for (auto k : {WitnessCase::Central, WitnessCase::Case1, WitnessCase::Case1Transposed, WitnessCase::Case2})
      o.require(cases[k] > 0, cat("branch ", to_string(k), " exercised"));
  std::ostringstream sum;
  sum << cert.bundles.size() << "/" << dirs << " directions witnessed; cases";
  for (const auto& [k, n] : cases) sum << " " << to_string(k) << "=" << n;
  sum << "; brute force maximal=" << (brute.is_maximal ? "yes" : "no");
  o.summary = sum.str();
  return o;
}

Outcome c5_diagonal_weight_instance() {
  auto f5 = Field::prime(5);
  auto o = certify_family(build_cor26(f5, 2, 1, S(f5, 1), S(f5, 2)), 6, false);
  o.summary = "n=2 r=1 sigma=(1,2) F_5: " + o.summary + "; trace law exact";
  return o;
}

Outcome c6_three_block_instance() {
  auto f7 = Field::prime(7);
  auto o = certify_family(build_example24(f7, 1, 1, 1, S(f7, 1), S(f7, 2)), 57, true);
  o.summary = "n=3 ranks (1,1,1) sigma=(1,2) F_7: " + o.summary;
  return o;
}

Outcome c7_classification() {
  Outcome o;
  std::ostringstream sum;

  // F_2: set equality against the predicted list.
  {
    auto f2 = Field::prime(2);
    const auto oracle_max = maximal_ms_by_containment(f2);
    std::vector<MatSubspace> predicted;
    for (const auto& fam : predicted_maximal_families(f2)) predicted.push_back(fam.space);
    std::sort(predicted.begin(), predicted.end());
    CensusOptions opt;
    opt.compare_classification = true;
    const auto rep = ms_census(f2, 2, opt);
    o.require(sorted(rep.maximal_ms) == oracle_max, "F_2 census maximal MSs match the containment oracle");
    const bool equal = oracle_max == predicted;
    o.require(equal, cat("F_2 set equality: ", oracle_max.size(), " maximal MSs vs ", predicted.size(), " predicted"));
    for (const auto& s : oracle_max)
      if (!std::binary_search(predicted.begin(), predicted.end(), s)) {
        const auto irr = irreducible_trace_nonzero_element(s);
        o.notes.push_back(cat("F_2 extra maximal MS of dim ", s.dim(), " spanned by ", s.basis().front().to_string(),
                              irr ? ", trace-nonzero element with irreducible char poly" : ""));
      }
    sum << "F_2: " << oracle_max.size() << " maximal vs " << predicted.size() << " predicted (set equality "
        << (equal ? "holds" : "fails") << "); ";
  }

  // F_5: clause i and ii members maximal, clause iii reported, extras explained.
  {
    auto f5 = Field::prime(5);
    const auto oracle_max = maximal_ms_by_containment(f5);
    CensusOptions opt;
    opt.compare_classification = true;
    const auto rep = ms_census(f5, 2, opt);
    o.require(sorted(rep.maximal_ms) == oracle_max, "F_5 census maximal MSs match the containment oracle");
    std::map<std::string, std::pair<int, int>> clause;
    for (const auto& pc : rep.comparison->predicted) {
      const bool maximal = std::binary_search(oracle_max.begin(), oracle_max.end(), pc.family.space);
      o.require(maximal == pc.maximal_in_census, "census and oracle agree on a predicted member");
      auto& [members, max_count] = clause[pc.family.clause];
      ++members;
      max_count += maximal;
      if (!pc.family.closure_dependent) o.require(maximal, "F_5 " + pc.family.clause + " member maximal");
    }
    std::uint64_t explained = 0;
    for (const auto& e : rep.comparison->extras) {
      const auto irr = irreducible_trace_nonzero_element(e.space);
      explained += irr.has_value();
      o.require(irr.has_value(), "F_5 extra has a trace-nonzero element with irreducible char poly");
    }
    sum << "F_5:";
    for (const auto& [label, counts] : clause) sum << " " << label << " " << counts.second << "/" << counts.first << " maximal;";
    sum << " extras " << rep.comparison->extras.size() << ", explained " << explained;
  }
  o.summary = sum.str();
  return o;
}

Outcome c8_lines_over_f2() {
  Outcome o;
  auto f2 = Field::prime(2);
  std::uint64_t lines = 0;
  for (const auto& s : maximal_ms_by_containment(f2))
    if (s.dim() == 1) {
      ++lines;
      const Matrix a = s.basis().front();
      o.notes.push_back(cat("maximal line spanned by ", a.to_string(), ", char poly ",
                            char_poly_has_root(a) ? "reducible" : "irreducible", " over F_2"));
    }
  const auto rep = ms_census(f2, 2);
  o.require(rep.tallies[1].maximal_ms == lines, "census agrees with the containment oracle");
  o.require(lines == 0, cat(lines, " one-dimensional maximal MSs, expected 0"));
  o.summary = cat("exhaustive over 15 lines: ", lines, " maximal");
  return o;
}

Outcome c9_base_change() {
  Outcome o;
  auto f5 = Field::prime(5);
  const auto d = basechange_demo(f5, S(f5, 2));
  o.require(d.v_verdict.status == MsStatus::MS_Proper, "V is a proper MS over F_5");
  o.require(d.v_maximal && d.v_maximal_brute_force.value_or(false), "V maximal (brute force)");
  o.require(is_maximal_ms(d.v).is_maximal, "independent brute-force maximality");
  const auto& l = d.extension;
  o.require(l->order() == 25, "extension has 25 elements");
  std::optional<Scalar> root;
  for (std::uint32_t c = 0; c < 25; ++c) {
    const Scalar x(l, c);
    if (x * x == S(l, 2) && !root) root = x;
  }
  o.require(root.has_value(), "sqrt 2 exists in GF(25)");
  if (root) {
    const Matrix a = Matrix::from_ints(l, 2, 2, {1, 0, 0, 2});
    const Matrix b = Matrix::from_ints(l, 2, 2, {0, 1, 1, 0});
    bool match = false;
    for (const Scalar& t : {*root, -*root}) match = match || d.c == (a + b.scaled(t)).scaled(S(l, 2));
    o.require(match, "c = 2(a + sqrt2 b)");
  }
  o.require(d.c * d.c == d.c && !d.c.is_zero(), "c^2 = c, c != 0");
  o.require(d.u.contains(d.c), "c lies in V tensor GF(25)");
  o.require(d.u_verdict.status == MsStatus::NotMS, "verdict flips to NotMS");
  o.summary = cat("V maximal MS of M_2(F_5); over GF(25) c = ", d.c.to_string(), " is idempotent; verdict ",
                  to_string(d.v_verdict.status), " -> ", to_string(d.u_verdict.status));
  return o;
}

Matrix random_matrix(const FieldPtr& f, std::size_t m, std::size_t k, std::mt19937_64& rng) {
  Matrix a(f, m, k);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (f->is_finite()) {
        a.set(i, j, Scalar(f, static_cast<std::uint32_t>(rng() % f->order())));
      } else {
        const long num = static_cast<long>(rng() % 11) - 5;
        const unsigned long den = rng() % 4 + 1;
        a.set(i, j, Scalar::from_rational(f, mpq_class(num, den)));
      }
    }
  return a;
}

Outcome c10_rank_factorization() {
  Outcome o;
  std::mt19937_64 rng(20260101);
  std::ostringstream sum;
  for (const auto& f : {Field::prime(5), Field::rationals()}) {
    int ok = 0;
    std::map<std::size_t, int> ranks;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t m = rng() % 6 + 1, k = rng() % 6 + 1;
      Matrix a = random_matrix(f, m, k, rng);
      if (rng() % 2) {
        const std::size_t r = rng() % std::min(m, k) + 1;
        a = random_matrix(f, m, r, rng) * random_matrix(f, r, k, rng);
      }
      const Matrix b = rank_factorization(a);
      const Matrix ab = a * b, ba = b * a;
      const std::size_t ra = rank(a);
      ++ranks[ra];
      const bool good = b.rows() == k && b.cols() == m && a * b * a == a && b * a * b == b && ab * ab == ab &&
                        ba * ba == ba && rank(ab) == ra && rank(ba) == ra;
      ok += good;
    }
    o.require(ok == 1000, cat(f->describe(), ": ", ok, "/1000"));
    sum << f->describe() << " " << ok << "/1000 (ranks 0.." << ranks.rbegin()->first << "); ";
  }
  o.summary = sum.str() + "all identities exact";
  return o;
}

Outcome c11_sampled_codim_two() {
  Outcome o;
  const auto rep = debondt_sample(200, 42);
  o.require(rep.samples == 200, "200 samples");
  o.require(rep.with_idempotent == 200, cat(rep.with_idempotent, " with idempotent"));
  o.require(rep.exceptions.empty(), cat(rep.exceptions.size(), " exceptions"));
  auto f5 = Field::prime(5);
  const auto h = trace_zero_space(f5, 3);
  for (const auto& e : rep.examples) {
    o.require(e.space.codim() == 2 && !h.contains(e.space), "sample is codimension 2 and not inside H");
    o.require(!e.witness.is_zero() && e.witness * e.witness == e.witness && e.space.contains(e.witness),
              "sample idempotent verified");
  }
  o.summary = cat("M_3(F_5), seed 42: ", rep.with_idempotent, "/", rep.samples, " contain a nonzero idempotent, ",
                  rep.exceptions.size(), " exceptions (", rep.resampled_inside_h, " draws inside H redrawn)");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"oracle equivalence on M_2(F_2), M_2(F_3)", c1_oracle_equivalence},
      {"codimension-one MSs of M_2", c2_codimension_one},
      {"upper-block family certified and scanned", c3_upper_block_certified},
      {"one-step extension of the t=3 member", c4_extension},
      {"witness engine, two-block n=2 instance", c5_diagonal_weight_instance},
      {"witness engine, three-block n=3 instance", c6_three_block_instance},
      {"M_2 classification censuses", c7_classification},
      {"one-dimensional maximal MSs over F_2", c8_lines_over_f2},
      {"base-change demonstration", c9_base_change},
      {"rank factorization property suite", c10_rank_factorization},
      {"sampled codimension-2 subspaces of M_3(F_5)", c11_sampled_codim_two},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %zu: %s. %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.summary.c_str(), secs);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
