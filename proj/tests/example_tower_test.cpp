#include <gtest/gtest.h>

#include <deque>

#include "nilpotent/example_tower.hpp"
#include "test_support.hpp"

using namespace nilpotent;
using Vec = SparseVector<Rational>;

namespace {

const ExampleTower& tower() {
  static const ExampleTower t = build_example_tower();
  return t;
}

// Ideal of a Lie algebra generated by X_1..X_g: the span of the seeds closed
// under ad(X_j) only.
EchelonBuilder<Rational> generator_closure(const ExampleTower& t, const std::vector<Vec>& seeds) {
  EchelonBuilder<Rational> b(t.free->dim());
  std::deque<Vec> queue;
  for (const auto& s : seeds) {
    if (auto row = b.insert(s)) queue.push_back(*row);
  }
  while (!queue.empty()) {
    Vec x = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < 4; ++j) {
      if (auto row = b.insert(t.bracket(t.generator(j), x))) queue.push_back(*row);
    }
  }
  return b;
}

const EchelonBuilder<Rational>& oracle_i() {
  static const auto b = generator_closure(tower(), tower().ideal_generators);
  return b;
}

// Preimage of J in l: I plus the lifts of the alpha-orbit of v - [X2,X4].
const EchelonBuilder<Rational>& oracle_j_lift() {
  static const auto b = [] {
    const auto& t = tower();
    std::vector<Vec> seeds = t.ideal_generators;
    Vec w = t.v - t.bracket(t.generator(1), t.generator(3));
    for (int k = 0; k < 4; ++k) {
      seeds.push_back(w);
      w = t.alpha.apply(w);
    }
    return generator_closure(t, seeds);
  }();
  return b;
}

std::array<Rational, 4> random_lambda(testing_support::Rng& rng, bool product_one) {
  std::array<Rational, 4> l;
  for (auto& x : l) x = rng.nonzero_rational(5, 4);
  if (product_one) l[3] = Rational(1) / (l[0] * l[1] * l[2]);
  return l;
}

}  // namespace

TEST(ExampleTower, Dimensions) {
  const auto& t = tower();
  EXPECT_EQ(t.free->dim(), 964u);
  EXPECT_EQ(t.ideal_generators.size(), 32u);
  EXPECT_EQ(t.ntilde.ideal.dim(), oracle_i().rank());
  EXPECT_EQ(t.ntilde.algebra->dim(), 964u - oracle_i().rank());
  EXPECT_EQ(t.n.algebra->dim(), 964u - oracle_j_lift().rank());
  EXPECT_EQ(t.n.ideal.dim(), 2u);
}

TEST(ExampleTower, IdealAgreesWithGeneratorClosure) {
  const auto& t = tower();
  for (const auto& row : t.ntilde.ideal.space().rows()) EXPECT_TRUE(oracle_i().contains(row));
  EXPECT_EQ(t.ntilde.ideal.space(), Subspace::from_builder(oracle_i()));
}

TEST(ExampleTower, ClaimsAgainstOracle) {
  const auto& t = tower();
  const Vec x13 = t.bracket(t.generator(0), t.generator(2));
  const Vec x24 = t.bracket(t.generator(1), t.generator(3));
  auto b = oracle_i();
  EXPECT_FALSE(b.contains(t.v));
  const std::size_t r0 = b.rank();
  b.insert(t.v);
  b.insert(x13);
  b.insert(x24);
  EXPECT_EQ(b.rank(), r0 + 3);

  EXPECT_TRUE(oracle_j_lift().contains(t.v - x24));
  EXPECT_FALSE(oracle_j_lift().contains(t.v));
  EXPECT_FALSE(oracle_j_lift().contains(x24));
  EXPECT_TRUE(oracle_j_lift().contains(x13 - t.alpha.apply(t.v)) || oracle_j_lift().contains(x13 + t.alpha.apply(t.v)));

  // I contains the whole multilinear part of l_4, of dimension (4 - 1)!
  std::size_t block = 0;
  for (std::size_t i = 0; i < t.free->dim(); ++i) {
    if (t.free->multidegree(i) != Multidegree{1, 1, 1, 1}) continue;
    ++block;
    EXPECT_TRUE(oracle_i().contains(Vec::unit(i)));
  }
  EXPECT_EQ(block, 6u);
  for (std::size_t i = 0; i < 4 + 6; ++i) EXPECT_FALSE(oracle_i().contains(Vec::unit(i)));
}

TEST(ExampleTower, VerifiedClaims) {
  const auto r = verify_tower_claims(tower());
  for (const auto& c : r.claims) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  EXPECT_TRUE(r.passed());
  EXPECT_GE(r.claims.size(), 20u);
}

TEST(ExampleTower, VIsAHallWordUpToSign) {
  const auto& t = tower();
  ASSERT_EQ(t.v.nnz(), 1u);
  EXPECT_EQ(t.basis->label(t.v.leading_index()), "[[X2,[X1,X2]],[X4,[X3,X4]]]");
  EXPECT_EQ(t.v.begin()->second, Rational(-1));
}

TEST(ExampleTower, JPivots) {
  const auto& t = tower();
  const auto p = t.n.ideal.space().pivots();
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(t.ntilde.algebra->label(p[0]), "[X1,X3]");
  EXPECT_EQ(t.ntilde.algebra->label(p[1]), "[X2,X4]");
}

TEST(ExampleTower, DiagonalAutomorphismsWithProductOne) {
  const auto& t = tower();
  testing_support::Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const auto l = random_lambda(rng, true);
    auto phi = diagonal_automorphism_on_n(t, l);  // verified construction
    // the same map obtained by inducing the free diagonal map step by step
    std::vector<Vec> images;
    for (std::size_t i = 0; i < 4; ++i) images.push_back(Vec::unit(i, l[i]));
    Automorphism<Rational> on_free(t.free, detail::free_extension(*t.basis, *t.free, images));
    auto induced = induce_on_quotient(induce_on_quotient(on_free, t.ntilde), t.n);
    EXPECT_EQ(phi.matrix(), induced.matrix());
    // p(v) is an eigenvector with eigenvalue lambda_2 lambda_4
    const Vec pv = t.to_n(t.v);
    EXPECT_EQ(phi.apply(pv), (l[1] * l[3]) * pv);
  }
}

TEST(ExampleTower, ProductNotOneIsRejected) {
  const auto& t = tower();
  testing_support::Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto l = random_lambda(rng, false);
    if (l[0] * l[1] * l[2] * l[3] == Rational(1)) l[0] *= Rational(2);
    try {
      (void)diagonal_automorphism_on_n(t, l);
      ADD_FAILURE() << "accepted a diagonal map with product != 1";
    } catch (const ProductNotOne<Rational>& e) {
      EXPECT_FALSE(e.witness.empty());
      EXPECT_FALSE(t.n.ideal.space().contains(e.witness));
    }
  }
  EXPECT_THROW((void)diagonal_automorphism_on_n(t, std::array<Rational, 4>{Rational(2), Rational(1), Rational(1), Rational(1)}),
               ProductNotOne<Rational>);
  EXPECT_THROW((void)diagonal_automorphism_on_n(t, std::array<Rational, 4>{Rational(0), Rational(1), Rational(1), Rational(1)}),
               std::invalid_argument);
}

TEST(ExampleTower, Obstruction) {
  const auto r = verify_no_partial_expansion_obstruction(tower());
  for (const auto& c : r.claims) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
  EXPECT_TRUE(r.passed());
}

TEST(ExampleTower, CentralizerExamples) {
  EXPECT_EQ(centralizer({RatMatrix::identity(4)}).dim(), 16u);
  EXPECT_EQ(centralizer({RatMatrix::diagonal({Rational(1), Rational(2), Rational(3), Rational(4)})}).dim(), 4u);
  // diag(1,1,-1,-1) alone: block diagonal 2x2 + 2x2
  EXPECT_EQ(centralizer({RatMatrix::diagonal({Rational(1), Rational(1), Rational(-1), Rational(-1)})}).dim(), 8u);
  RatMatrix cycle(4, 4);
  for (std::size_t i = 0; i < 4; ++i) cycle((i + 1) % 4, i) = Rational(1);
  // polynomials in the cycle
  EXPECT_EQ(centralizer({cycle}).dim(), 4u);
}
