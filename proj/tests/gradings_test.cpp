#include <gtest/gtest.h>

#include <algorithm>

#include "nilpotent/fixtures.hpp"
#include "nilpotent/grading.hpp"
#include "random_graded.hpp"
#include "test_support.hpp"

using namespace nilpotent;
using testing_support::q;
using testing_support::Rng;
using Vec = SparseVector<Rational>;

namespace {

Subspace units(std::size_t n, std::initializer_list<std::size_t> idx) {
  std::vector<Vec> rows;
  for (auto i : idx) rows.push_back(Vec::unit(i));
  return Subspace::span(n, rows);
}

Grading standard_heisenberg() {
  auto h = fixtures::heisenberg();
  return Grading{h, {{1, units(3, {0, 1})}, {2, units(3, {2})}}};
}

SparseMatrix<Rational> diag(std::initializer_list<long> d) {
  std::vector<Rational> v;
  for (long x : d) v.push_back(q(x));
  return SparseMatrix<Rational>::diagonal(v);
}

}  // namespace

TEST(Classify, SpecExamples) {
  EXPECT_EQ(verify_and_classify(standard_heisenberg()), GradingClass::positive);
  auto h = fixtures::heisenberg();
  EXPECT_EQ(verify_and_classify(Grading{h, {{0, Subspace::whole(3)}}}), GradingClass::trivial);
  Grading mixed{h, {{1, units(3, {0})}, {-1, units(3, {1})}, {0, units(3, {2})}}};
  EXPECT_EQ(verify_and_classify(mixed), GradingClass::other);
  Grading nonneg{h, {{0, units(3, {0})}, {1, units(3, {1, 2})}}};
  EXPECT_EQ(verify_and_classify(nonneg), GradingClass::nonnegative_nontrivial);
}

TEST(Classify, InvalidGradingsAreErrors) {
  auto h = fixtures::heisenberg();
  try {
    verify_and_classify(Grading{h, {{1, units(3, {0, 1})}, {3, units(3, {2})}}});
    FAIL();
  } catch (const InvalidGrading& e) {
    EXPECT_EQ(e.kind, InvalidGrading::Kind::bracket_violation);
    ASSERT_TRUE(e.weights.has_value());
    EXPECT_EQ(*e.weights, std::make_pair(1L, 1L));
    EXPECT_EQ(e.witness, Vec::unit(2));
  }
  try {
    verify_and_classify(Grading{h, {{1, units(3, {0, 1})}}});
    FAIL();
  } catch (const InvalidGrading& e) {
    EXPECT_EQ(e.kind, InvalidGrading::Kind::not_direct_sum);
  }
  try {
    verify_and_classify(Grading{h, {{1, units(3, {0})}, {1, units(3, {1})}, {2, units(3, {2})}}});
    FAIL();
  } catch (const InvalidGrading& e) {
    EXPECT_EQ(e.kind, InvalidGrading::Kind::duplicate_weight);
  }
  auto overlap = Subspace::span(3, {Vec::unit(0) + Vec::unit(1)});
  EXPECT_THROW(verify_and_classify(Grading{h, {{1, units(3, {0, 1})}, {2, overlap}}}), InvalidGrading);
}

TEST(Classify, OrderOfComponentsIrrelevant) {
  auto g = standard_heisenberg();
  std::reverse(g.components.begin(), g.components.end());
  EXPECT_EQ(verify_and_classify(g), GradingClass::positive);
}

TEST(FromGrading, SpecExamples) {
  auto g = standard_heisenberg();
  auto a = automorphism_from_grading(g, q(2));
  EXPECT_EQ(a.matrix(), diag({2, 2, 4}));
  EXPECT_EQ(classify_spectrum(a).kind, SpectrumKind::expanding);
  EXPECT_TRUE(automorphism_from_grading(g, q(1)).is_identity());
  auto h = fixtures::heisenberg();
  EXPECT_TRUE(automorphism_from_grading(Grading{h, {{0, Subspace::whole(3)}}}, q(7)).is_identity());
  EXPECT_THROW(automorphism_from_grading(g, q(0)), std::invalid_argument);
  EXPECT_THROW(automorphism_from_grading(Grading{h, {{1, Subspace::whole(3)}}}, q(2)), InvalidGrading);
}

TEST(FromAutomorphism, SpecExamples) {
  auto h = fixtures::heisenberg();
  auto g = grading_from_diagonal_automorphism(Automorphism<Rational>(h, diag({2, 2, 4})));
  EXPECT_TRUE(testing_support::same_grading(g, standard_heisenberg()));

  auto ab = fixtures::abelian(2);
  auto g2 = grading_from_diagonal_automorphism(Automorphism<Rational>(ab, diag({3, 9})));
  ASSERT_EQ(g2.components.size(), 2u);
  EXPECT_EQ(g2.components[0].weight, 1);
  EXPECT_EQ(g2.components[0].space, units(2, {0}));
  EXPECT_EQ(g2.components[1].weight, 2);
  EXPECT_EQ(g2.components[1].space, units(2, {1}));

  // companion matrix of x^2 - x - 1 on the abelian plane
  auto golden = RatMatrix::companion(RatPolynomial{q(-1), q(-1), q(1)}).to_sparse();
  EXPECT_THROW(grading_from_diagonal_automorphism(Automorphism<Rational>(ab, golden)), GradingConstructionInapplicable);
}

TEST(FromAutomorphism, InapplicableCases) {
  auto ab = fixtures::abelian(2);
  // eigenvalues 2 and 3 are not powers of one rational
  EXPECT_THROW(grading_from_diagonal_automorphism(Automorphism<Rational>(ab, diag({2, 3}))), GradingConstructionInapplicable);
  // Jordan block at 2
  auto jordan = RatMatrix::from_rows({{q(2), q(1)}, {q(0), q(2)}}).to_sparse();
  EXPECT_THROW(grading_from_diagonal_automorphism(Automorphism<Rational>(ab, jordan)), GradingConstructionInapplicable);
  // negative and fractional eigenvalues: mu = -2 gives weights 1, -2 and 0
  auto g = grading_from_diagonal_automorphism(Automorphism<Rational>(fixtures::abelian(3), SparseMatrix<Rational>::diagonal({q(-2), q(1, 4), q(1)})));
  ASSERT_EQ(g.components.size(), 3u);
  EXPECT_EQ(g.components[0].weight, -2);
  EXPECT_EQ(g.components[1].weight, 0);
  EXPECT_EQ(g.components[2].weight, 1);
  EXPECT_EQ(verify_and_classify(g), GradingClass::other);
}

TEST(Preserves, SpecExamples) {
  auto g = standard_heisenberg();
  auto h = g.algebra;
  EXPECT_TRUE(preserves_grading(Automorphism<Rational>::identity(h), g));
  EXPECT_TRUE(preserves_grading(automorphism_from_grading(g, q(5)), g));
  auto swap = RatMatrix::from_rows({{q(0), q(1), q(0)}, {q(1), q(0), q(0)}, {q(0), q(0), q(-1)}}).to_sparse();
  Automorphism<Rational> s(h, swap);
  EXPECT_TRUE(preserves_grading(s, g));
  // x -> x + z is an automorphism that mixes weights 1 and 2
  auto shear = RatMatrix::from_rows({{q(1), q(0), q(0)}, {q(0), q(1), q(0)}, {q(1), q(0), q(1)}}).to_sparse();
  EXPECT_FALSE(preserves_grading(Automorphism<Rational>(h, shear), g));
}

TEST(RoundTrip, RandomPositiveGradings) {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    auto sample = testing_support::random_graded_sample(rng);
    ASSERT_EQ(verify_and_classify(sample.grading), GradingClass::positive);
    auto phi = automorphism_from_grading(sample.grading, q(2));
    EXPECT_EQ(classify_spectrum(phi).kind, SpectrumKind::expanding);
    auto back = grading_from_diagonal_automorphism(phi);
    EXPECT_TRUE(testing_support::same_grading(back, sample.grading)) << trial;
    for (const auto& psi : sample.preserving) {
      EXPECT_TRUE(preserves_grading(psi, sample.grading));
      EXPECT_EQ(psi.matrix() * phi.matrix(), phi.matrix() * psi.matrix());
    }
  }
}

TEST(RoundTrip, DetectedMuIsTheSmallestRationalRoot) {
  auto h = fixtures::heisenberg();
  Grading g{h, {{1, units(3, {0, 1})}, {2, units(3, {2})}}};
  auto phi = automorphism_from_grading(g, q(4));
  // eigenvalues 4, 4, 16 are read as powers of 2, doubling the weights
  auto detected = grading_from_diagonal_automorphism(phi);
  EXPECT_EQ(detected.components.front().weight, 2);
  EXPECT_EQ(detected.components.back().weight, 4);
  EXPECT_TRUE(testing_support::same_grading(grading_from_diagonal_automorphism(phi, q(4)), g));
  // mu = 2 is not a perfect power, so weights with a common factor survive
  Grading even{h, {{2, units(3, {0, 1})}, {4, units(3, {2})}}};
  EXPECT_TRUE(testing_support::same_grading(grading_from_diagonal_automorphism(automorphism_from_grading(even, q(2))), even));
}
