#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilpotent/automorphism.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/roots.hpp"
#include "nilpotent/subspace.hpp"

namespace nilpotent {

struct GradingComponent {
  long weight = 0;
  Subspace space;
};

/// A Z-grading: weights with subspaces, claimed to decompose the algebra.
/// Nothing is checked on construction; see verify_and_classify.
struct Grading {
  LieAlgebraPtr algebra;
  std::vector<GradingComponent> components;

  /// Component of the given weight (zero subspace if absent).
  [[nodiscard]] Subspace space(long weight) const {
    for (const auto& c : components) {
      if (c.weight == weight) return c.space;
    }
    return Subspace(algebra->dim());
  }
};

enum class GradingClass { positive, nonnegative_nontrivial, trivial, other };

inline std::string to_string(GradingClass c) {
  switch (c) {
    case GradingClass::positive: return "positive";
    case GradingClass::nonnegative_nontrivial: return "nonnegative_nontrivial";
    case GradingClass::trivial: return "trivial";
    case GradingClass::other: return "other";
  }
  return "other";
}

/// Invalid grading. For bracket violations the weights and the offending
/// bracket are recorded.
class InvalidGrading : public std::runtime_error {
 public:
  enum class Kind { duplicate_weight, not_direct_sum, bracket_violation };

  InvalidGrading(Kind kind, const std::string& what) : std::runtime_error(what), kind(kind) {}
  InvalidGrading(long wi, long wj, SparseVector<Rational> witness)
      : std::runtime_error("bracket of weights " + std::to_string(wi) + " and " + std::to_string(wj) +
                           " leaves weight " + std::to_string(wi + wj)),
        kind(Kind::bracket_violation), weights(std::make_pair(wi, wj)), witness(std::move(witness)) {}

  Kind kind;
  std::optional<std::pair<long, long>> weights;
  SparseVector<Rational> witness;
};

/// Checks that the components form a direct sum equal to the whole algebra
/// and that [V_i, V_j] lies in V_{i+j}; then classifies. Zero components are
/// ignored.
inline GradingClass verify_and_classify(const Grading& g) {
  const std::size_t n = g.algebra->dim();
  std::map<long, const Subspace*> by_weight;
  std::size_t total = 0;
  EchelonBuilder<Rational> all(n);
  for (const auto& c : g.components) {
    if (c.space.ambient_dim() != n) throw InvalidGrading(InvalidGrading::Kind::not_direct_sum, "component has wrong ambient dimension");
    if (c.space.is_zero()) continue;
    if (!by_weight.emplace(c.weight, &c.space).second) {
      throw InvalidGrading(InvalidGrading::Kind::duplicate_weight, "weight " + std::to_string(c.weight) + " listed twice");
    }
    total += c.space.dim();
    for (const auto& r : c.space.rows()) all.insert(r);
  }
  if (total != n || all.rank() != n) {
    throw InvalidGrading(InvalidGrading::Kind::not_direct_sum, "components do not form a direct sum decomposition");
  }
  const auto& alg = *g.algebra;
  for (const auto& [wi, vi] : by_weight) {
    for (const auto& [wj, vj] : by_weight) {
      if (wj < wi) continue;
      auto target = by_weight.find(wi + wj);
      for (const auto& a : vi->rows()) {
        for (const auto& b : vj->rows()) {
          auto w = alg.bracket(a, b);
          if (w.empty()) continue;
          if (target == by_weight.end() || !target->second->contains(w)) throw InvalidGrading(wi, wj, std::move(w));
        }
      }
    }
  }
  if (by_weight.size() == 1 && by_weight.begin()->first == 0) return GradingClass::trivial;
  if (by_weight.empty()) return GradingClass::trivial;
  const long lowest = by_weight.begin()->first;
  if (lowest > 0) return GradingClass::positive;
  if (lowest == 0) return GradingClass::nonnegative_nontrivial;
  return GradingClass::other;
}

/// Change-of-basis matrix whose columns are the component basis rows, in
/// component order, with the weight of each column.
inline std::pair<RatMatrix, std::vector<long>> adapted_basis(const Grading& g) {
  const std::size_t n = g.algebra->dim();
  RatMatrix b(n, n);
  std::vector<long> weights;
  std::size_t col = 0;
  for (const auto& c : g.components) {
    for (const auto& r : c.space.rows()) {
      if (col >= n) throw InvalidGrading(InvalidGrading::Kind::not_direct_sum, "components exceed the dimension");
      for (const auto& [i, x] : r) b(i, col) = x;
      weights.push_back(c.weight);
      ++col;
    }
  }
  if (col != n) throw InvalidGrading(InvalidGrading::Kind::not_direct_sum, "components do not span");
  return {std::move(b), std::move(weights)};
}

/// The map x -> mu^i x on component i. The grading is verified first.
template <class S>
Automorphism<S> automorphism_from_grading(const Grading& g, const S& mu) {
  if (scalar_zero(mu)) throw std::invalid_argument("automorphism_from_grading: mu must be nonzero");
  verify_and_classify(g);
  auto [b, weights] = adapted_basis(g);
  const std::size_t n = b.rows();
  Matrix<S> bs(n, n);
  Matrix<S> b_inv(n, n);
  const auto inv = inverse(b);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bs(i, j) = S(b(i, j));
      b_inv(i, j) = S(inv(i, j));
    }
  }
  std::vector<S> diag;
  diag.reserve(n);
  for (long w : weights) {
    S p(1);
    const S base = w >= 0 ? mu : S(1) / mu;
    for (long k = 0; k < (w >= 0 ? w : -w); ++k) p = p * base;
    diag.push_back(p);
  }
  const Matrix<S> m = bs * Matrix<S>::diagonal(diag) * b_inv;
  // Exact by construction; the automorphism check re-verifies it.
  return Automorphism<S>(g.algebra, m.to_sparse());
}

/// Raised when an automorphism does not have the restricted spectral shape
/// (diagonalizable over Q, all eigenvalues integer powers of one rational
/// mu with |mu| > 1). This says the construction does not apply, not that
/// the algebra has no grading.
class GradingConstructionInapplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Exact k-th root of a positive rational, if it is rational.
inline std::optional<Rational> rational_root(const Rational& r, unsigned long k) {
  Integer num, den;
  const Integer n = r.numerator();
  const Integer d = r.denominator();
  if (mpz_root(num.get_mpz_t(), n.get_mpz_t(), k) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), d.get_mpz_t(), k) == 0) return std::nullopt;
  return Rational(num, den);
}

/// e with mu^e = lambda, if any.
inline std::optional<long> integer_log(const Rational& lambda, const Rational& mu) {
  if (lambda.is_zero()) return std::nullopt;
  Rational p(1);
  if (lambda == p) return 0;
  const bool up = lambda.abs() > Rational(1);
  const Rational step = up ? mu : mu.inverse();
  for (long e = 1; e < 4096; ++e) {
    p *= step;
    if (p == lambda) return up ? e : -e;
    if (p.abs() > lambda.abs() && up) return std::nullopt;
    if (p.abs() < lambda.abs() && !up) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace detail

/// Eigenvalues of a rational matrix with multiplicity, if all are rational.
inline std::optional<std::vector<RationalRoot>> rational_spectrum(const std::vector<RatPolynomial>& factors) {
  std::map<Rational, std::size_t> mult;
  std::size_t total = 0;
  std::size_t degree = 0;
  for (const auto& f : factors) {
    degree += static_cast<std::size_t>(f.degree());
    for (const auto& r : rational_roots(f)) {
      mult[r.value] += r.multiplicity;
      total += r.multiplicity;
    }
  }
  if (total != degree) return std::nullopt;
  std::vector<RationalRoot> out;
  for (const auto& [v, m] : mult) out.push_back({v, m});
  return out;
}

/// Picks mu for a rational spectrum: among rationals |mu| > 1 of which every
/// eigenvalue is an integer power, the one of smallest modulus, positive
/// preferred. Candidates are the rational k-th roots of the eigenvalue
/// modulus m > 1 closest to 1 (with |lambda| < 1 inverted).
inline std::optional<Rational> detect_mu(const std::vector<RationalRoot>& spectrum) {
  std::optional<Rational> m;
  for (const auto& r : spectrum) {
    Rational a = r.value.abs();
    if (a == Rational(1)) continue;
    if (a < Rational(1)) a = a.inverse();
    if (!m || a < *m) m = a;
  }
  if (!m) return std::nullopt;
  const auto bits = static_cast<unsigned long>(mpz_sizeinbase(m->numerator().get_mpz_t(), 2));
  for (unsigned long k = bits; k >= 1; --k) {
    auto root = detail::rational_root(*m, k);
    if (!root || !(*root > Rational(1))) continue;
    for (const Rational& mu : {*root, -*root}) {
      bool all = true;
      for (const auto& r : spectrum) {
        if (!detail::integer_log(r.value, mu)) {
          all = false;
          break;
        }
      }
      if (all) return mu;
    }
  }
  return std::nullopt;
}

/// Recovers the grading of a Q-diagonalizable automorphism whose
/// eigenvalues are integer powers mu^i of a single rational mu, |mu| > 1;
/// the component of weight i is the eigenspace of mu^i. When mu is given it
/// is used instead of being detected. An automorphism with every eigenvalue
/// 1 yields the trivial grading.
inline Grading grading_from_diagonal_automorphism(const Automorphism<Rational>& a, std::optional<Rational> mu = std::nullopt) {
  const auto& alg = a.algebra();
  const std::size_t n = alg->dim();
  auto spectrum = rational_spectrum(charpoly_factors(a.matrix()));
  if (!spectrum) throw GradingConstructionInapplicable("restricted construction inapplicable: spectrum is not rational");
  const bool unipotent = std::all_of(spectrum->begin(), spectrum->end(), [](const RationalRoot& r) { return r.value == Rational(1); });
  if (!mu) {
    if (unipotent) {
      mu = Rational(2);
    } else {
      mu = detect_mu(*spectrum);
      if (!mu) throw GradingConstructionInapplicable("restricted construction inapplicable: eigenvalues are not powers of one rational");
    }
  }
  if (!(mu->abs() > Rational(1))) throw std::invalid_argument("grading_from_diagonal_automorphism: need |mu| > 1");
  const RatMatrix m = RatMatrix::from_sparse(a.matrix());
  Grading g{alg, {}};
  std::size_t total = 0;
  for (const auto& r : *spectrum) {
    auto e = detail::integer_log(r.value, *mu);
    if (!e) throw GradingConstructionInapplicable("restricted construction inapplicable: eigenvalue " + r.value.str() + " is not a power of mu");
    const RatMatrix shifted = m - r.value * RatMatrix::identity(n);
    auto space = Subspace::span_dense(n, kernel_vectors(shifted));
    if (space.dim() != r.multiplicity) {
      throw GradingConstructionInapplicable("restricted construction inapplicable: not diagonalizable at eigenvalue " + r.value.str());
    }
    total += space.dim();
    g.components.push_back({*e, std::move(space)});
  }
  if (total != n) throw GradingConstructionInapplicable("restricted construction inapplicable: not diagonalizable");
  std::sort(g.components.begin(), g.components.end(), [](const GradingComponent& x, const GradingComponent& y) { return x.weight < y.weight; });
  verify_and_classify(g);
  return g;
}

/// True iff a maps every component into (hence onto) itself.
template <class S>
bool preserves_grading(const Automorphism<S>& a, const Grading& g) {
  if (a.algebra()->dim() != g.algebra->dim()) throw std::invalid_argument("preserves_grading: algebra mismatch");
  for (const auto& c : g.components) {
    if (invariance_violation(a.matrix(), c.space)) return false;
  }
  return true;
}

}  // namespace nilpotent
