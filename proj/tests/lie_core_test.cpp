#include <gtest/gtest.h>

#include "nilpotent/fixtures.hpp"
#include "nilpotent/hall_basis.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "test_support.hpp"

using namespace nilpotent;
using testing_support::q;
using testing_support::Rng;
using Vec = SparseVector<Rational>;

namespace {

Vec random_vector(Rng& rng, std::size_t dim) {
  std::vector<Vec::Entry> e;
  for (std::size_t i = 0; i < dim; ++i) {
    if (rng.integer(0, 2) == 0) e.emplace_back(i, rng.rational(5, 3));
  }
  return Vec::from_entries(std::move(e));
}

std::size_t index_of(const HallBasis& b, const std::string& label) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.label(i) == label) return i;
  }
  throw std::runtime_error("no Hall word " + label);
}

// coordinate subspace on [lo, hi)
Subspace coordinate_block(std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<Vec> rows;
  for (std::size_t i = lo; i < hi; ++i) rows.push_back(Vec::unit(i));
  return Subspace::span(n, rows);
}

}  // namespace

TEST(Bracket, Heisenberg) {
  auto h = fixtures::heisenberg();
  EXPECT_EQ(h->bracket(Vec::unit(0), Vec::unit(1)), Vec::unit(2));
  EXPECT_EQ(h->bracket(Vec::unit(1), Vec::unit(0)), Vec::unit(2, q(-1)));
  EXPECT_EQ(h->bracket_dense<Rational>({q(1), q(0), q(0)}, {q(0), q(1), q(0)}), (std::vector<Rational>{q(0), q(0), q(1)}));
  EXPECT_THROW((void)h->bracket_dense<Rational>({q(1)}, {q(0), q(1), q(0)}), std::invalid_argument);
}

TEST(Bracket, AlternatingAndBilinearOnRandomVectors) {
  auto alg = fixtures::free_nilpotent(3, 4);
  Rng rng(11);
  for (int t = 0; t < 30; ++t) {
    auto u = random_vector(rng, alg->dim());
    auto v = random_vector(rng, alg->dim());
    auto w = random_vector(rng, alg->dim());
    EXPECT_TRUE(alg->bracket(u, u).empty());
    EXPECT_EQ(alg->bracket(u, v), -alg->bracket(v, u));
    const Rational lambda = rng.rational(3, 2);
    Vec vw = v;
    vw.add_scaled(w, lambda);
    Vec expected = alg->bracket(u, v);
    expected.add_scaled(alg->bracket(u, w), lambda);
    EXPECT_EQ(alg->bracket(u, vw), expected);
  }
}

TEST(Bracket, MultidegreeOfNestedBracketInFreeFourSix) {
  HallBasis b(4, 6);
  auto alg = LieAlgebra::free(b);
  auto x34 = alg.bracket(Vec::unit(2), Vec::unit(3));
  auto w = alg.bracket(Vec::unit(3), x34);
  ASSERT_FALSE(w.empty());
  EXPECT_EQ(alg.homogeneous_multidegree(w), (Multidegree{0, 0, 1, 2}));
}

TEST(Constructor, RejectsMalformedTables) {
  EXPECT_THROW(LieAlgebra(2, {{0, 0, Vec::unit(1)}}), std::invalid_argument);
  EXPECT_THROW(LieAlgebra(2, {{0, 1, Vec::unit(5)}}), std::out_of_range);
  EXPECT_THROW(LieAlgebra(3, {{0, 1, Vec::unit(2)}, {1, 0, Vec::unit(2)}}), std::invalid_argument);
  LieAlgebra flipped(3, {{1, 0, Vec::unit(2)}});
  EXPECT_EQ(flipped.basis_bracket(0, 1), Vec::unit(2, q(-1)));
}

TEST(IdealClosure, HeisenbergExamples) {
  auto h = fixtures::heisenberg();
  auto center = ideal_closure(h, {Vec::unit(2)});
  EXPECT_EQ(center.space(), Subspace::span(3, {Vec::unit(2)}));
  auto from_x = ideal_closure(h, {Vec::unit(0)});
  EXPECT_EQ(from_x.space(), Subspace::span(3, {Vec::unit(0), Vec::unit(2)}));
  auto none = ideal_closure(h, {});
  EXPECT_TRUE(none.space().is_zero());
}

TEST(IdealClosure, NonHomogeneousGeneratorsUseGlobalForm) {
  auto alg = fixtures::free_nilpotent(2, 4);
  auto mixed = Vec::unit(0) + Vec::unit(2);
  auto ideal = ideal_closure(alg, {mixed});
  EXPECT_FALSE(ideal_violation(*alg, ideal.space()).has_value());
  EXPECT_TRUE(ideal.space().contains(mixed));
  // an oracle: iterate V <- V + [alg, V] with dense spans until stable
  Subspace v = Subspace::span(alg->dim(), {mixed});
  while (true) {
    Subspace next = v + ad_span(*alg, v);
    if (next == v) break;
    v = next;
  }
  EXPECT_EQ(ideal.space(), v);
}

TEST(IdealClosure, ConstructorRejectsNonIdeal) {
  auto h = fixtures::heisenberg();
  EXPECT_THROW(Ideal(h, Subspace::span(3, {Vec::unit(0)})), NotAnIdeal);
}

TEST(Quotient, HeisenbergByCenterIsAbelian) {
  auto h = fixtures::heisenberg();
  auto qt = quotient(ideal_closure(h, {Vec::unit(2)}));
  EXPECT_EQ(qt.algebra->dim(), 2u);
  EXPECT_TRUE(qt.algebra->brackets().empty());
  EXPECT_EQ(qt.section, (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(qt.project(Vec::unit(2)).empty());
}

TEST(Quotient, ByZeroIdealIsIdentity) {
  auto alg = fixtures::free_nilpotent(3, 3);
  auto qt = quotient(Ideal::zero(alg));
  EXPECT_EQ(qt.algebra->dim(), alg->dim());
  EXPECT_TRUE(qt.projection.is_identity());
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    for (std::size_t j = 0; j < alg->dim(); ++j) EXPECT_EQ(qt.algebra->basis_bracket(i, j), alg->basis_bracket(i, j));
  }
}

TEST(Quotient, ProjectionIsHomomorphismAndJacobiIsInherited) {
  auto alg = fixtures::free_nilpotent(3, 4);
  HallBasis b(3, 4);
  Rng rng(5);
  auto ideal = ideal_closure(alg, {Vec::unit(index_of(b, "[X1,X2]")), Vec::unit(index_of(b, "[X3,[X1,X3]]"))});
  auto qt = quotient(ideal);
  EXPECT_EQ(qt.algebra->dim(), alg->dim() - ideal.dim());
  EXPECT_TRUE(verify_jacobi(*qt.algebra, JacobiMode::exhaustive).passed);
  for (int t = 0; t < 40; ++t) {
    auto u = random_vector(rng, alg->dim());
    auto v = random_vector(rng, alg->dim());
    EXPECT_EQ(qt.project(alg->bracket(u, v)), qt.algebra->bracket(qt.project(u), qt.project(v)));
    EXPECT_EQ(qt.projection.apply(u), qt.project(u));
  }
  EXPECT_TRUE(qt.algebra->has_multidegrees());
}

TEST(Jacobi, HeisenbergPasses) {
  auto r = verify_jacobi(*fixtures::heisenberg(), JacobiMode::exhaustive);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.triples_checked, 1u);
}

TEST(Jacobi, ThreeDimensionalTableWithoutViolation) {
  // [e1,e2] = e3, [e1,e3] = e2: every double bracket in the one triple vanishes
  LieAlgebra alg(3, {{0, 1, Vec::unit(2)}, {0, 2, Vec::unit(1)}});
  EXPECT_TRUE(verify_jacobi(alg, JacobiMode::exhaustive).passed);
}

TEST(Jacobi, ViolationIsReported) {
  // [e1,e2] = e3, [e1,e3] = e1: the Jacobiator of (e1,e2,e3) is e3
  LieAlgebra alg(3, {{0, 1, Vec::unit(2)}, {0, 2, Vec::unit(0)}});
  auto r = verify_jacobi(alg, JacobiMode::exhaustive);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(*r.violation, (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_EQ(r.residual, Vec::unit(2));
  auto sampled = verify_jacobi(alg, JacobiMode::sampled, 100, 0);
  EXPECT_FALSE(sampled.passed);
}

TEST(Series, HeisenbergAndAbelian) {
  auto lc = series(*fixtures::heisenberg(), SeriesKind::lower_central);
  std::vector<std::size_t> dims;
  for (const auto& s : lc) dims.push_back(s.dim());
  EXPECT_EQ(dims, (std::vector<std::size_t>{3, 1, 0}));
  auto ab = series(*fixtures::abelian(4), SeriesKind::lower_central);
  ASSERT_EQ(ab.size(), 2u);
  EXPECT_EQ(ab[0].dim(), 4u);
  EXPECT_EQ(ab[1].dim(), 0u);
}

TEST(Series, FreeFourSixLowerCentralIsTheDegreeFiltration) {
  HallBasis b(4, 6);
  auto alg = LieAlgebra::free(b);
  auto lc = series(alg, SeriesKind::lower_central);
  ASSERT_EQ(lc.size(), 7u);
  for (std::size_t k = 0; k < lc.size(); ++k) {
    const std::size_t lo = k < 6 ? b.degree_range(k + 1).first : b.size();
    EXPECT_EQ(lc[k], coordinate_block(b.size(), lo, b.size())) << k;
    if (k > 0) {
      EXPECT_LE(lc[k].dim(), lc[k - 1].dim());
    }
  }
  EXPECT_TRUE(lc.back().is_zero());
}

TEST(Series, FreeFourSixDerivedAndDegreeSixPartOfSecondTerm) {
  HallBasis b(4, 6);
  auto alg = LieAlgebra::free(b);
  const std::size_t n = b.size();
  auto d1 = derived_subalgebra(alg);
  EXPECT_EQ(d1.dim(), 960u);
  EXPECT_EQ(d1, coordinate_block(n, 4, n));
  auto m = bracket_span(alg, d1.rows(), d1.rows());
  EXPECT_TRUE(coordinate_block(n, b.degree_range(4).first, n).contains(m));
  // Hall words [b, d] with deg b = 2, deg d = 4, and [c1, c2] with both of degree 3
  std::vector<Vec> hall_words;
  const auto [lo6, hi6] = b.degree_range(6);
  for (std::size_t i = lo6; i < hi6; ++i) {
    const auto& w = b.word(i);
    const int dl = b.word(w.left).degree;
    const int dr = b.word(w.right).degree;
    if ((dl == 2 && dr == 4) || (dl == 3 && dr == 3)) hall_words.push_back(Vec::unit(i));
  }
  auto m6 = m.intersect(coordinate_block(n, lo6, hi6));
  EXPECT_EQ(m6, Subspace::span(n, hall_words));
  EXPECT_EQ(m6.dim(), hall_words.size());
  auto ds = series(alg, SeriesKind::derived);
  ASSERT_GE(ds.size(), 3u);
  EXPECT_EQ(ds[1], d1);
  EXPECT_EQ(ds[2], m);
}

TEST(ChangeBasis, PreservesJacobiAndIsIsomorphic) {
  auto alg = fixtures::free_nilpotent(2, 4);
  Rng rng(3);
  RatMatrix t;
  do {
    t = rng.matrix(alg->dim(), alg->dim(), 2, 2);
  } while (rank(t) != alg->dim());
  auto other = change_basis(*alg, t);
  EXPECT_TRUE(verify_jacobi(other, JacobiMode::exhaustive).passed);
  const auto ts = t.to_sparse();
  for (std::size_t i = 0; i < alg->dim(); ++i) {
    for (std::size_t j = 0; j < alg->dim(); ++j) {
      EXPECT_EQ(ts.apply(other.basis_bracket(i, j)), alg->bracket(ts.column(i), ts.column(j)));
    }
  }
}
