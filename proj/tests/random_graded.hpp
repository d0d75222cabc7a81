#pragma once

#include <numeric>
#include <vector>

#include "nilpotent/automorphism.hpp"
#include "nilpotent/grading.hpp"
#include "nilpotent/hall_basis.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "test_support.hpp"

namespace testing_support {

using namespace nilpotent;

/// A positively graded nilpotent algebra presented in a scrambled basis,
/// with automorphisms known (by construction) to preserve the grading.
struct GradedSample {
  LieAlgebraPtr algebra;
  Grading grading;
  std::vector<Automorphism<Rational>> preserving;
};

/// Quotient of a small free nilpotent algebra by an ideal generated by
/// random multihomogeneous vectors; generator i gets a random weight, the
/// weights having gcd 1 so that mu = 2 is recoverable from mu^w. The result
/// is moved to a random basis.
inline GradedSample random_graded_sample(Rng& rng, std::size_t max_dim = 8) {
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}};
  while (true) {
    const auto [g, c] = shapes[static_cast<std::size_t>(rng.integer(0, static_cast<long>(shapes.size()) - 1))];
    HallBasis basis(g, c);
    auto free = make_algebra(LieAlgebra::free(basis));
    std::vector<long> gen_weights(g);
    do {
      for (auto& w : gen_weights) w = rng.integer(1, 3);
    } while (std::accumulate(gen_weights.begin(), gen_weights.end(), 0L, [](long a, long b) { return std::gcd(a, b); }) != 1);

    std::vector<SparseVector<Rational>> gens;
    const auto lo2 = basis.degree_range(2).first;
    const long count = rng.integer(1, 4);
    for (long k = 0; k < count; ++k) {
      const auto pick = static_cast<std::size_t>(rng.integer(static_cast<long>(lo2), static_cast<long>(basis.size()) - 1));
      std::vector<SparseVector<Rational>::Entry> e;
      for (std::size_t i = lo2; i < basis.size(); ++i) {
        if (basis.word(i).multidegree == basis.word(pick).multidegree) e.emplace_back(i, rng.rational(3, 2));
      }
      gens.push_back(SparseVector<Rational>::from_entries(std::move(e)));
    }
    auto qt = quotient(ideal_closure(free, gens));
    const std::size_t n = qt.algebra->dim();
    if (n > max_dim) continue;

    std::vector<long> weights;
    for (auto s : qt.section) {
      long w = 0;
      for (std::size_t i = 0; i < g; ++i) w += basis.word(s).multidegree[i] * gen_weights[i];
      weights.push_back(w);
    }

    RatMatrix t;
    do {
      t = rng.matrix(n, n, 2, 2);
    } while (rank(t) != n);
    const RatMatrix t_inv = inverse(t);
    auto alg = make_algebra(change_basis(*qt.algebra, t));

    Grading grading{alg, {}};
    std::vector<long> distinct = weights;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (long w : distinct) {
      std::vector<std::vector<Rational>> rows;
      for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] == w) rows.push_back(t_inv * SparseVector<Rational>::unit(k).to_dense(n));
      }
      grading.components.push_back({w, Subspace::span_dense(n, rows)});
    }

    GradedSample out{alg, grading, {}};
    for (int a = 0; a < 2; ++a) {
      // generator scalings X_i -> s_i X_i act on every Hall word diagonally
      std::vector<Rational> s(g);
      for (auto& x : s) x = rng.nonzero_rational(3, 3);
      std::vector<Rational> diag;
      for (auto idx : qt.section) {
        Rational v(1);
        for (std::size_t i = 0; i < g; ++i) v *= s[i].pow(basis.word(idx).multidegree[i]);
        diag.push_back(v);
      }
      const RatMatrix m = t_inv * RatMatrix::diagonal(diag) * t;
      out.preserving.emplace_back(alg, m.to_sparse());
    }
    out.preserving.push_back(automorphism_from_grading(grading, Rational(3)));
    out.preserving.push_back(automorphism_from_grading(grading, Rational(-1, 2)));
    return out;
  }
}

/// Same components with the same weights, in any order.
inline bool same_grading(const Grading& a, const Grading& b) {
  auto key = [](const Grading& g) {
    std::vector<std::pair<long, const Subspace*>> out;
    for (const auto& c : g.components) {
      if (!c.space.is_zero()) out.emplace_back(c.weight, &c.space);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };
  const auto ka = key(a);
  const auto kb = key(b);
  if (ka.size() != kb.size()) return false;
  for (std::size_t i = 0; i < ka.size(); ++i) {
    if (ka[i].first != kb[i].first || !(*ka[i].second == *kb[i].second)) return false;
  }
  return true;
}

}  // namespace testing_support
