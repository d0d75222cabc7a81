#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nilpotent/automorphism.hpp"
#include "nilpotent/hall_basis.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/sparse.hpp"
#include "nilpotent/subspace.hpp"

namespace nilpotent {

/// The tower l -> ntilde = l / I -> n = ntilde / J built from the free
/// 6-step nilpotent Lie algebra l on X1..X4.
///
/// I is generated by [X_i,[X_1,X_3]], [X_i,[X_2,X_4]] and
/// [X_a,[X_b,[X_c,X_d]]] for distinct a, b, c, d; alpha permutes the
/// generators cyclically (X_i -> X_{i+1}, X_4 -> X_1);
/// v = [[X_4,[X_3,X_4]],[X_2,[X_1,X_2]]]; J is spanned by the orbit of
/// u = p~(v) - p~([X_2,X_4]) under the induced map.
struct ExampleTower {
  std::shared_ptr<const HallBasis> basis;
  LieAlgebraPtr free;
  std::vector<SparseVector<Rational>> ideal_generators;
  Quotient ntilde;
  SparseVector<Rational> v;
  SparseVector<Rational> u;
  Automorphism<Rational> alpha;
  Automorphism<Rational> alpha_tilde;
  Quotient n;
  Automorphism<Rational> alpha_bar;

  [[nodiscard]] SparseVector<Rational> generator(std::size_t i) const { return SparseVector<Rational>::unit(i); }
  [[nodiscard]] SparseVector<Rational> bracket(const SparseVector<Rational>& a, const SparseVector<Rational>& b) const {
    return free->bracket(a, b);
  }
  /// p~
  [[nodiscard]] SparseVector<Rational> to_ntilde(const SparseVector<Rational>& x) const { return ntilde.project(x); }
  /// p = (ntilde -> n) o p~
  [[nodiscard]] SparseVector<Rational> to_n(const SparseVector<Rational>& x) const { return n.project(ntilde.project(x)); }
  /// Generator multidegree of a basis vector of n.
  [[nodiscard]] const Multidegree& n_multidegree(std::size_t k) const { return free->multidegree(ntilde.section[n.section[k]]); }
};

namespace detail {

/// Matrix of the automorphism of a free nilpotent algebra determined by
/// X_i -> images[i]; Hall words are mapped recursively.
inline SparseMatrix<Rational> free_extension(const HallBasis& basis, const LieAlgebra& free,
                                             const std::vector<SparseVector<Rational>>& images) {
  std::vector<SparseVector<Rational>> columns(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& w = basis.word(i);
    columns[i] = w.is_generator() ? images.at(w.generator) : free.bracket(columns[w.left], columns[w.right]);
  }
  return SparseMatrix<Rational>(basis.size(), std::move(columns));
}

}  // namespace detail

/// Builds the tower; the Ideal and Automorphism constructors re-verify
/// closure and bracket preservation, so a failure here throws.
inline ExampleTower build_example_tower() {
  auto basis = std::make_shared<const HallBasis>(4, 6);
  auto free = make_algebra(LieAlgebra::free(*basis));
  using Vec = SparseVector<Rational>;
  auto x = [](std::size_t i) { return Vec::unit(i); };
  auto br = [&](const Vec& a, const Vec& b) { return free->bracket(a, b); };

  std::vector<Vec> gens;
  for (std::size_t i = 0; i < 4; ++i) gens.push_back(br(x(i), br(x(0), x(2))));
  for (std::size_t i = 0; i < 4; ++i) gens.push_back(br(x(i), br(x(1), x(3))));
  std::array<std::size_t, 4> perm{0, 1, 2, 3};
  do {
    gens.push_back(br(x(perm[0]), br(x(perm[1]), br(x(perm[2]), x(perm[3])))));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto ideal_i = ideal_closure(free, gens);
  auto ntilde = quotient(ideal_i);

  std::vector<Vec> shifted;
  for (std::size_t i = 0; i < 4; ++i) shifted.push_back(x((i + 1) % 4));
  Automorphism<Rational> alpha(free, detail::free_extension(*basis, *free, shifted));
  auto alpha_tilde = induce_on_quotient(alpha, ntilde);

  const Vec v = br(br(x(3), br(x(2), x(3))), br(x(1), br(x(0), x(1))));
  const Vec u = ntilde.project(v) - ntilde.project(br(x(1), x(3)));
  std::vector<Vec> orbit{u};
  for (int k = 1; k < 4; ++k) orbit.push_back(alpha_tilde.apply(orbit.back()));
  Ideal ideal_j(ntilde.algebra, Subspace::span(ntilde.algebra->dim(), orbit));
  auto n = quotient(ideal_j);
  auto alpha_bar = induce_on_quotient(alpha_tilde, n);

  return ExampleTower{basis, free, std::move(gens), std::move(ntilde), v, u,
                      std::move(alpha), std::move(alpha_tilde), std::move(n), std::move(alpha_bar)};
}

struct Claim {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ClaimReport {
  std::vector<Claim> claims;
  [[nodiscard]] bool passed() const {
    for (const auto& c : claims) {
      if (!c.passed) return false;
    }
    return !claims.empty();
  }
  void add(std::string name, bool ok, std::string detail = {}) { claims.push_back({std::move(name), ok, std::move(detail)}); }
};

/// Multidegree of a homogeneous vector of the free algebra.
inline Multidegree multidegree_of(const ExampleTower& t, const SparseVector<Rational>& x) {
  auto md = t.free->homogeneous_multidegree(x);
  if (!md) throw std::invalid_argument("multidegree_of: vector is not multihomogeneous");
  return *md;
}

/// The claims about the tower: (a) p~(v) != 0; (b) p~(v), p~([X1,X3]),
/// p~([X2,X4]) independent; (c) alpha~^2 p~(v) = -p~(v); (d) p(v) =
/// p([X2,X4]) != 0; (e) I is graded, alpha-invariant, with I meet l_2 = 0;
/// (f) the multidegree (1,1,1,1) part of ntilde is zero; plus the
/// structural facts the construction relies on.
inline ClaimReport verify_tower_claims(const ExampleTower& t) {
  using Vec = SparseVector<Rational>;
  ClaimReport r;
  const auto& basis = *t.basis;
  const auto& ideal = t.ntilde.ideal.space();
  const Vec x13 = t.bracket(t.generator(0), t.generator(2));
  const Vec x24 = t.bracket(t.generator(1), t.generator(3));
  const Vec pv = t.to_ntilde(t.v);

  r.add("I has 32 generators", t.ideal_generators.size() == 32, std::to_string(t.ideal_generators.size()));
  r.add("dim l = 964", t.free->dim() == 964, std::to_string(t.free->dim()));

  const bool hall = t.v.nnz() == 1 && t.v.begin()->second.abs() == Rational(1);
  std::string hall_detail = hall ? (t.v.begin()->second.sign() > 0 ? "+" : "-") + basis.label(t.v.leading_index()) : "not a single Hall word";
  bool in_b2 = false;
  if (hall) {
    const auto& w = basis.word(t.v.leading_index());
    in_b2 = basis.word(w.left).degree == 3 && basis.word(w.right).degree == 3;
  }
  r.add("v or -v is a Hall word [c1,c2] with c1, c2 of degree 3", hall && in_b2, hall_detail);
  r.add("multidegree of v is (1,2,1,2)", multidegree_of(t, t.v) == Multidegree{1, 2, 1, 2});

  r.add("(a) p~(v) != 0", !pv.empty());
  const auto indep = Subspace::span(t.ntilde.algebra->dim(), {pv, t.to_ntilde(x13), t.to_ntilde(x24)});
  r.add("(b) p~(v), p~([X1,X3]), p~([X2,X4]) linearly independent", indep.dim() == 3, "rank " + std::to_string(indep.dim()));
  r.add("(c) alpha~^2 p~(v) = -p~(v)", t.alpha_tilde.apply(t.alpha_tilde.apply(pv)) == -pv);
  r.add("alpha^2 v = -v in l", t.alpha.apply(t.alpha.apply(t.v)) == -t.v);
  const Vec nv = t.to_n(t.v);
  r.add("(d) p(v) = p([X2,X4]) != 0", nv == t.to_n(x24) && !nv.empty());

  bool graded = true;
  bool multigraded = true;
  for (const auto& row : ideal.rows()) {
    multigraded = multigraded && t.free->homogeneous_multidegree(row).has_value();
    int d = -1;
    for (const auto& [i, c] : row) {
      if (d < 0) d = t.free->degree(i);
      graded = graded && t.free->degree(i) == d;
    }
  }
  r.add("(e) I is graded", graded);
  r.add("I is the direct sum of its multidegree components", multigraded);
  const auto [lo2, hi2] = basis.degree_range(2);
  std::vector<Vec> l2;
  for (std::size_t i = lo2; i < hi2; ++i) l2.push_back(Vec::unit(i));
  const auto i2 = ideal.intersect(Subspace::span(t.free->dim(), l2));
  r.add("(e) I meet l_2 = 0", i2.is_zero(), "dim " + std::to_string(i2.dim()));
  r.add("(e) I is alpha-invariant", !invariance_violation(t.alpha.matrix(), ideal).has_value());

  std::size_t block_l4 = 0;
  std::size_t block_i = 0;
  std::size_t block_ntilde = 0;
  for (std::size_t i = 0; i < t.free->dim(); ++i) {
    if (t.free->multidegree(i) != Multidegree{1, 1, 1, 1}) continue;
    ++block_l4;
    if (ideal.is_pivot(i)) ++block_i;
    if (t.ntilde.position[i] != Quotient::none) ++block_ntilde;
  }
  r.add("(f) multidegree (1,1,1,1) part of ntilde is zero", block_ntilde == 0 && block_i == block_l4,
        "I block " + std::to_string(block_i) + " of " + std::to_string(block_l4));

  r.add("dim J = 2", t.n.ideal.dim() == 2, std::to_string(t.n.ideal.dim()));
  r.add("J is an alpha~-invariant ideal", !invariance_violation(t.alpha_tilde.matrix(), t.n.ideal.space()).has_value() &&
                                              !ideal_violation(*t.ntilde.algebra, t.n.ideal.space()).has_value());
  r.add("dim n = dim ntilde - 2", t.n.algebra->dim() + 2 == t.ntilde.algebra->dim(),
        std::to_string(t.n.algebra->dim()) + " = " + std::to_string(t.ntilde.algebra->dim()) + " - 2");

  auto order = [](const auto& a) {
    auto o = element_order(a, 8);
    return o ? std::to_string(*o) : std::string("> 8");
  };
  r.add("alpha has order 4", element_order(t.alpha, 8) == std::optional<std::size_t>(4), order(t.alpha));
  r.add("alpha~ has order 4", element_order(t.alpha_tilde, 8) == std::optional<std::size_t>(4), order(t.alpha_tilde));
  r.add("alpha-bar has order 4", element_order(t.alpha_bar, 8) == std::optional<std::size_t>(4), order(t.alpha_bar));

  Matrix<Rational> cycle(4, 4);
  for (std::size_t i = 0; i < 4; ++i) cycle((i + 1) % 4, i) = Rational(1);
  r.add("alpha-bar acts on n/[n,n] as the 4-cycle", abelianization_matrix(t.alpha_bar) == cycle);
  return r;
}

/// Raised by diagonal_automorphism_on_n when lambda_1..lambda_4 do not
/// multiply to 1; the witness is the image of a spanning vector of J that
/// leaves J.
template <class S>
class ProductNotOne : public std::runtime_error {
 public:
  ProductNotOne(SparseVector<S> witness, std::size_t row)
      : std::runtime_error("lambda_1 lambda_2 lambda_3 lambda_4 != 1: J is not invariant"), witness(std::move(witness)), row(row) {}
  SparseVector<S> witness;
  std::size_t row;
};

/// prod_i lambda_i^{d_i}
template <class S>
S weight_monomial(const std::array<S, 4>& lambda, const Multidegree& d) {
  S out(1);
  for (std::size_t i = 0; i < 4; ++i) {
    for (int k = 0; k < d[i]; ++k) out *= lambda[i];
    for (int k = 0; k > d[i]; --k) out /= lambda[i];
  }
  return out;
}

/// The map X_i -> lambda_i X_i extended to l (each Hall word of multidegree
/// d is scaled by prod lambda_i^{d_i}) and pushed through both quotients.
/// I is spanned by multihomogeneous vectors, so the map on ntilde is the
/// same diagonal in the section basis; J is checked for invariance, which
/// fails exactly when the product of the lambda_i is not 1.
template <class S>
Automorphism<S> diagonal_automorphism_on_n(const ExampleTower& t, const std::array<S, 4>& lambda) {
  for (const auto& l : lambda) {
    if (scalar_zero(l)) throw std::invalid_argument("diagonal_automorphism_on_n: lambda_i must be nonzero");
  }
  const std::size_t dt = t.ntilde.algebra->dim();
  std::vector<S> diag;
  diag.reserve(dt);
  for (std::size_t k = 0; k < dt; ++k) diag.push_back(weight_monomial(lambda, t.free->multidegree(t.ntilde.section[k])));
  const auto on_ntilde = SparseMatrix<S>::diagonal(diag);
  if (auto bad = invariance_violation(on_ntilde, t.n.ideal.space())) throw ProductNotOne<S>(std::move(bad->second), bad->first);
  std::vector<SparseVector<S>> columns;
  columns.reserve(t.n.section.size());
  for (auto s : t.n.section) columns.push_back(t.n.project(on_ntilde.column(s)));
  return Automorphism<S>(t.n.algebra, SparseMatrix<S>(t.n.section.size(), std::move(columns)));
}

/// The two generators of H, diag(1,1,-1,-1) and diag(1,-1,1,-1).
inline std::array<std::array<Rational, 4>, 2> h_generators() {
  const Rational one(1);
  const Rational minus(-1);
  return {{{one, one, minus, minus}, {one, minus, one, minus}}};
}

/// Centralizer of a set of 4x4 matrices in M(4, Q), as the kernel of the
/// linear equations XA - AX = 0 in the 16 entries of X (row-major).
inline Subspace centralizer(const std::vector<RatMatrix>& mats) {
  RatMatrix eq(16 * mats.size(), 16);
  for (std::size_t m = 0; m < mats.size(); ++m) {
    const auto& a = mats[m];
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const std::size_t row = 16 * m + 4 * i + j;
        // (XA - AX)_{ij} = sum_k X_{ik} A_{kj} - A_{ik} X_{kj}
        for (std::size_t k = 0; k < 4; ++k) {
          eq(row, 4 * i + k) += a(k, j);
          eq(row, 4 * k + j) -= a(i, k);
        }
      }
    }
  }
  return rref_kernel(eq).kernel;
}

/// The finite-dimensional steps of the argument that n has no partially
/// expanding automorphism: (a) H acts faithfully on n by automorphisms;
/// (b) its centralizer in GL(4, Q) is the diagonal matrices; (c) p(v) =
/// p([X2,X4]) with multidegrees differing by (1,1,1,1) forces
/// lambda_1 lambda_2 lambda_3 lambda_4 = 1; (d) for diagonal lambda with
/// each lambda_i = 1 or |lambda_i| > 1, not all 1, the product has modulus
/// > 1. The reduction of an arbitrary partially expanding automorphism to
/// one commuting with H is an existence theorem and is not computed.
inline ClaimReport verify_no_partial_expansion_obstruction(const ExampleTower& t) {
  using Vec = SparseVector<Rational>;
  ClaimReport r;
  const auto gens = h_generators();
  std::vector<Automorphism<Rational>> images;
  bool induced = true;
  for (const auto& h : gens) {
    try {
      images.push_back(diagonal_automorphism_on_n(t, h));
    } catch (const std::exception&) {
      induced = false;
    }
  }
  r.add("(a) both generators of H induce automorphisms of n", induced);
  if (induced) {
    const auto& a = images[0];
    const auto& b = images[1];
    const auto ab = a * b;
    const bool relations = (a * a).is_identity() && (b * b).is_identity() && ab.matrix() == (b * a).matrix();
    const bool faithful = !a.is_identity() && !b.is_identity() && !ab.is_identity();
    r.add("(a) i(H) is Z2 + Z2 and i is faithful", relations && faithful);
    r.add("(a) i(h) acts on n/[n,n] as h", abelianization_matrix(a) == RatMatrix::diagonal({gens[0].begin(), gens[0].end()}) &&
                                                 abelianization_matrix(b) == RatMatrix::diagonal({gens[1].begin(), gens[1].end()}));
  }

  const auto c = centralizer({RatMatrix::diagonal({gens[0].begin(), gens[0].end()}), RatMatrix::diagonal({gens[1].begin(), gens[1].end()})});
  std::vector<Vec> diagonal_units;
  for (std::size_t i = 0; i < 4; ++i) diagonal_units.push_back(Vec::unit(5 * i));
  r.add("(b) centralizer of H has dimension 4", c.dim() == 4, std::to_string(c.dim()));
  r.add("(b) centralizer of H is the diagonal matrices", c == Subspace::span(16, diagonal_units));

  const Vec x24 = t.bracket(t.generator(1), t.generator(3));
  const Multidegree dv = multidegree_of(t, t.v);
  const Multidegree dx = multidegree_of(t, x24);
  Multidegree diff(4);
  for (std::size_t i = 0; i < 4; ++i) diff[i] = dv[i] - dx[i];
  r.add("(c) p(v) = p([X2,X4]) != 0", t.to_n(t.v) == t.to_n(x24) && !t.to_n(x24).empty());
  r.add("(c) multidegree(v) - multidegree([X2,X4]) = (1,1,1,1)", diff == Multidegree{1, 1, 1, 1});

  const std::vector<Rational> choices{Rational(1), Rational(2), Rational(-2), Rational(3, 2), Rational(-5, 3), Rational(7)};
  bool all_large = true;
  std::size_t checked = 0;
  std::array<std::size_t, 4> idx{};
  for (idx[0] = 0; idx[0] < choices.size(); ++idx[0]) {
    for (idx[1] = 0; idx[1] < choices.size(); ++idx[1]) {
      for (idx[2] = 0; idx[2] < choices.size(); ++idx[2]) {
        for (idx[3] = 0; idx[3] < choices.size(); ++idx[3]) {
          if (idx == std::array<std::size_t, 4>{}) continue;
          Rational p(1);
          for (auto k : idx) p *= choices[k];
          ++checked;
          all_large = all_large && p.abs() > Rational(1);
        }
      }
    }
  }
  r.add("(d) partially expanding diagonal weights have |product| > 1", all_large, std::to_string(checked) + " weight vectors");
  return r;
}

}  // namespace nilpotent
