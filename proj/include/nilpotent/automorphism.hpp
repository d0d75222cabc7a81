#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/polynomial.hpp"
#include "nilpotent/roots.hpp"
#include "nilpotent/sparse.hpp"

namespace nilpotent {

struct AutomorphismCheck {
  bool ok = false;
  bool invertible = false;
  /// First basis pair (i, j) with m[e_i, e_j] != [m e_i, m e_j].
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Exact test that m is an invertible bracket-preserving map. Only pairs
/// i < j are tested; antisymmetry covers the rest.
template <class S>
AutomorphismCheck check_automorphism(const LieAlgebra& alg, const SparseMatrix<S>& m) {
  const std::size_t n = alg.dim();
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("check_automorphism: matrix size does not match algebra");
  AutomorphismCheck out;
  out.invertible = rank(m) == n;
  for (std::size_t i = 0; i < n && !out.witness; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto lhs = m.apply(alg.basis_bracket(i, j).map([](const Rational& r) { return S(r); }));
      const auto rhs = alg.bracket(m.column(i), m.column(j));
      if (!(lhs == rhs)) {
        out.witness = std::make_pair(i, j);
        break;
      }
    }
  }
  out.ok = out.invertible && !out.witness;
  return out;
}

class NotAnAutomorphism : public std::runtime_error {
 public:
  explicit NotAnAutomorphism(const AutomorphismCheck& check)
      : std::runtime_error(describe(check)), check(check) {}
  AutomorphismCheck check;

 private:
  static std::string describe(const AutomorphismCheck& c) {
    if (!c.invertible) return "not an automorphism: matrix is singular";
    return "not an automorphism: bracket of basis pair (" + std::to_string(c.witness->first + 1) + ", " +
           std::to_string(c.witness->second + 1) + ") not preserved";
  }
};

/// Verified automorphism of a Lie algebra over Q, with matrix entries in an
/// extension field S (columns are images of basis vectors).
template <class S>
class Automorphism {
 public:
  Automorphism(LieAlgebraPtr alg, SparseMatrix<S> matrix) : alg_(std::move(alg)), matrix_(std::move(matrix)) {
    auto c = check_automorphism(*alg_, matrix_);
    if (!c.ok) throw NotAnAutomorphism(c);
  }

  static Automorphism identity(LieAlgebraPtr alg) {
    const std::size_t n = alg->dim();
    return Automorphism(std::move(alg), SparseMatrix<S>::identity(n), Trusted{});
  }

  /// For maps known to be automorphisms by construction (compositions and
  /// powers of verified automorphisms).
  static Automorphism trusted(LieAlgebraPtr alg, SparseMatrix<S> matrix) {
    return Automorphism(std::move(alg), std::move(matrix), Trusted{});
  }

  [[nodiscard]] const LieAlgebraPtr& algebra() const { return alg_; }
  [[nodiscard]] const SparseMatrix<S>& matrix() const { return matrix_; }
  [[nodiscard]] SparseVector<S> apply(const SparseVector<S>& v) const { return matrix_.apply(v); }

  friend Automorphism operator*(const Automorphism& a, const Automorphism& b) {
    if (a.alg_ != b.alg_ && a.alg_->dim() != b.alg_->dim()) throw std::invalid_argument("Automorphism: algebra mismatch");
    return Automorphism(a.alg_, a.matrix_ * b.matrix_, Trusted{});
  }

  [[nodiscard]] Automorphism pow(std::size_t k) const {
    auto out = identity(alg_);
    for (std::size_t i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  [[nodiscard]] bool is_identity() const { return matrix_.is_identity(); }

 private:
  struct Trusted {};
  Automorphism(LieAlgebraPtr alg, SparseMatrix<S> matrix, Trusted) : alg_(std::move(alg)), matrix_(std::move(matrix)) {}

  LieAlgebraPtr alg_;
  SparseMatrix<S> matrix_;
};

enum class SpectrumKind { expanding, partially_expanding, neither };

inline std::string to_string(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::expanding: return "expanding";
    case SpectrumKind::partially_expanding: return "partially_expanding";
    case SpectrumKind::neither: return "neither";
  }
  return "neither";
}

/// Verdict plus witness: the characteristic polynomial, the multiplicity of
/// eigenvalue 1, and the unit-disk partition of the remaining roots.
struct SpectrumClass {
  SpectrumKind kind = SpectrumKind::neither;
  RatPolynomial charpoly;
  std::size_t eigenvalue_one_multiplicity = 0;
  UnitDiskCount remaining;
};

/// Largest m with (x - 1)^m | p, and the cofactor.
inline std::pair<std::size_t, RatPolynomial> divide_out_one(RatPolynomial p) {
  const RatPolynomial x_minus_one{Rational(-1), Rational(1)};
  std::size_t m = 0;
  while (p.degree() >= 1) {
    auto [q, r] = p.divmod(x_minus_one);
    if (!r.is_zero()) break;
    p = std::move(q);
    ++m;
  }
  return {m, std::move(p)};
}

/// Classification from a factorization of the characteristic polynomial
/// (the product of the factors).
inline SpectrumClass classify_spectrum_factors(const std::vector<RatPolynomial>& factors) {
  SpectrumClass out;
  out.charpoly = RatPolynomial::constant(Rational(1));
  for (const auto& f : factors) {
    out.charpoly *= f;
    auto [m, rest] = divide_out_one(f);
    out.eigenvalue_one_multiplicity += m;
    out.remaining += unit_disk_root_count(rest);
  }
  const bool nothing_small = out.remaining.inside == 0 && out.remaining.on_circle == 0;
  if (nothing_small && out.eigenvalue_one_multiplicity == 0) {
    out.kind = SpectrumKind::expanding;
  } else if (nothing_small && out.remaining.outside > 0) {
    out.kind = SpectrumKind::partially_expanding;
  } else {
    out.kind = SpectrumKind::neither;
  }
  return out;
}

inline SpectrumClass classify_spectrum(const RatPolynomial& charpoly) {
  if (charpoly.is_zero()) throw std::domain_error("classify_spectrum: zero polynomial");
  return classify_spectrum_factors({charpoly.monic()});
}

/// Uses the block triangular structure of the matrix, so large sparse maps
/// (diagonal ones in particular) never need a full determinant.
inline SpectrumClass classify_spectrum(const Automorphism<Rational>& a) {
  return classify_spectrum_factors(charpoly_factors(a.matrix()));
}

/// Raised by induce_on_quotient when a spanning row of the ideal is mapped
/// outside the ideal.
template <class S>
class IdealNotInvariant : public std::runtime_error {
 public:
  IdealNotInvariant(std::size_t row, SparseVector<S> image)
      : std::runtime_error("ideal is not invariant: basis row " + std::to_string(row + 1) + " leaves it"),
        row(row), image(std::move(image)) {}
  std::size_t row;
  SparseVector<S> image;
};

/// Lift of a rational vector to S.
template <class S>
SparseVector<S> extend_scalars(const SparseVector<Rational>& v) {
  return v.map([](const Rational& r) { return S(r); });
}

/// Index of the first ideal row whose image leaves the ideal, if any.
template <class S>
std::optional<std::pair<std::size_t, SparseVector<S>>> invariance_violation(const SparseMatrix<S>& m, const Subspace& space) {
  const auto& rows = space.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto image = m.apply(extend_scalars<S>(rows[r]));
    if (!space.contains(image)) return std::make_pair(r, std::move(image));
  }
  return std::nullopt;
}

/// The map induced on q.algebra by an automorphism a of the ambient algebra;
/// requires a(ideal) = ideal. For an invertible map, a(I) contained in I
/// already forces equality by dimension.
template <class S>
Automorphism<S> induce_on_quotient(const Automorphism<S>& a, const Quotient& q) {
  if (a.algebra()->dim() != q.ideal.ambient()->dim()) throw std::invalid_argument("induce_on_quotient: algebra mismatch");
  if (auto bad = invariance_violation(a.matrix(), q.ideal.space())) {
    throw IdealNotInvariant<S>(bad->first, std::move(bad->second));
  }
  std::vector<SparseVector<S>> columns;
  columns.reserve(q.section.size());
  for (auto s : q.section) columns.push_back(q.project(a.matrix().column(s)));
  return Automorphism<S>::trusted(q.algebra, SparseMatrix<S>(q.section.size(), std::move(columns)));
}

/// The induced map on alg / [alg, alg] in the basis of non-pivot coordinate
/// classes of the derived subalgebra.
template <class S>
Matrix<S> abelianization_matrix(const Automorphism<S>& a) {
  const auto& alg = *a.algebra();
  const Subspace derived = derived_subalgebra(alg);
  const auto section = derived.complement_indices();
  std::vector<std::size_t> position(alg.dim(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < section.size(); ++k) position[section[k]] = k;
  Matrix<S> out(section.size(), section.size());
  for (std::size_t c = 0; c < section.size(); ++c) {
    for (const auto& [i, x] : derived.reduce(a.matrix().column(section[c]))) out(position[i], c) = x;
  }
  return out;
}

/// Smallest k <= bound with a^k = id.
template <class S>
std::optional<std::size_t> element_order(const Automorphism<S>& a, std::size_t bound) {
  if (bound < 1) throw std::invalid_argument("element_order: bound must be positive");
  auto power = a;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (power.is_identity()) return k;
    power = power * a;
  }
  return std::nullopt;
}

}  // namespace nilpotent
