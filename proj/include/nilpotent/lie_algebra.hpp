#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nilpotent/hall_basis.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/rational.hpp"
#include "nilpotent/sparse.hpp"
#include "nilpotent/subspace.hpp"

namespace nilpotent {

using Multidegree = std::vector<int>;

/// One stored structure-constant entry: [e_i, e_j] = value, with i < j.
struct BracketEntry {
  std::size_t i = 0;
  std::size_t j = 0;
  SparseVector<Rational> value;
};

/// Finite-dimensional Lie algebra over Q given by structure constants in a
/// fixed basis. Vectors over any extension field S of Q can be bracketed.
/// Antisymmetry is built in; the Jacobi identity is checked separately.
class LieAlgebra {
 public:
  LieAlgebra() = default;

  /// Entries with i > j are flipped; i == j must be zero; repeated pairs are
  /// rejected.
  LieAlgebra(std::size_t dim, std::vector<BracketEntry> brackets,
             std::vector<std::string> labels = {}, std::vector<Multidegree> multidegrees = {})
      : dim_(dim), labels_(std::move(labels)), multidegrees_(std::move(multidegrees)), adjacency_(dim) {
    if (!labels_.empty() && labels_.size() != dim_) throw std::invalid_argument("LieAlgebra: label count does not match dimension");
    if (!multidegrees_.empty() && multidegrees_.size() != dim_) {
      throw std::invalid_argument("LieAlgebra: multidegree count does not match dimension");
    }
    if (labels_.empty()) {
      for (std::size_t k = 0; k < dim_; ++k) labels_.push_back("e" + std::to_string(k + 1));
    }
    std::map<std::pair<std::size_t, std::size_t>, SparseVector<Rational>> table;
    for (auto& b : brackets) {
      if (b.i >= dim_ || b.j >= dim_) throw std::out_of_range("LieAlgebra: bracket index beyond dimension");
      if (!b.value.empty() && b.value.max_index() >= dim_) throw std::out_of_range("LieAlgebra: bracket value beyond dimension");
      if (b.i == b.j) {
        if (!b.value.empty()) throw std::invalid_argument("LieAlgebra: [e_i, e_i] must vanish");
        continue;
      }
      if (b.i > b.j) {
        std::swap(b.i, b.j);
        b.value = -b.value;
      }
      if (!table.emplace(std::make_pair(b.i, b.j), std::move(b.value)).second) {
        throw std::invalid_argument("LieAlgebra: repeated bracket entry");
      }
    }
    for (auto& [key, value] : table) {
      if (value.empty()) continue;
      entries_.push_back({key.first, key.second, std::move(value)});
    }
    for (std::size_t e = 0; e < entries_.size(); ++e) {
      adjacency_[entries_[e].i].push_back({entries_[e].j, e, 1});
      adjacency_[entries_[e].j].push_back({entries_[e].i, e, -1});
    }
    for (auto& row : adjacency_) {
      std::sort(row.begin(), row.end(), [](const Link& a, const Link& b) { return a.other < b.other; });
    }
  }

  /// The free nilpotent Lie algebra on the given Hall basis.
  static LieAlgebra free(const HallBasis& basis) {
    HallRewriter rewriter(basis);
    std::vector<BracketEntry> brackets;
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (basis.word(i).degree + basis.word(j).degree > basis.nilpotency_class()) break;
        auto value = rewriter.bracket_words(i, j);
        if (!value.empty()) brackets.push_back({i, j, std::move(value)});
      }
    }
    std::vector<std::string> labels;
    std::vector<Multidegree> multidegrees;
    for (std::size_t i = 0; i < n; ++i) {
      labels.push_back(basis.label(i));
      multidegrees.push_back(basis.word(i).multidegree);
    }
    return LieAlgebra(n, std::move(brackets), std::move(labels), std::move(multidegrees));
  }

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<std::string>& labels() const { return labels_; }
  [[nodiscard]] const std::string& label(std::size_t i) const { return labels_.at(i); }
  [[nodiscard]] bool has_multidegrees() const { return !multidegrees_.empty(); }
  [[nodiscard]] const std::vector<Multidegree>& multidegrees() const { return multidegrees_; }
  [[nodiscard]] const Multidegree& multidegree(std::size_t i) const { return multidegrees_.at(i); }

  /// Nonzero structure constants, i < j, sorted by (i, j).
  [[nodiscard]] const std::vector<BracketEntry>& brackets() const { return entries_; }

  /// [e_i, e_j]
  [[nodiscard]] SparseVector<Rational> basis_bracket(std::size_t i, std::size_t j) const {
    check_index(i);
    check_index(j);
    const auto& row = adjacency_[i];
    auto it = std::lower_bound(row.begin(), row.end(), j, [](const Link& l, std::size_t k) { return l.other < k; });
    if (it == row.end() || it->other != j) return {};
    const auto& value = entries_[it->entry].value;
    return it->sign > 0 ? value : -value;
  }

  /// [e_i, v]
  template <class S>
  [[nodiscard]] SparseVector<S> ad(std::size_t i, const SparseVector<S>& v) const {
    check_index(i);
    SparseAccumulator<S> acc;
    const auto& row = adjacency_[i];
    auto it = row.begin();
    for (const auto& [j, x] : v) {
      it = std::lower_bound(it, row.end(), j, [](const Link& l, std::size_t k) { return l.other < k; });
      if (it == row.end()) break;
      if (it->other != j) continue;
      const S c = it->sign > 0 ? x : -x;
      for (const auto& [k, y] : entries_[it->entry].value) acc.add(k, S(y) * c);
    }
    return acc.finish();
  }

  /// [u, v]
  template <class S>
  [[nodiscard]] SparseVector<S> bracket(const SparseVector<S>& u, const SparseVector<S>& v) const {
    SparseAccumulator<S> acc;
    for (const auto& [i, x] : u) {
      check_index(i);
      for (const auto& [k, y] : ad(i, v)) acc.add(k, y * x);
    }
    return acc.finish();
  }

  /// Dense-vector bracket, for callers holding full coordinate arrays.
  template <class S>
  [[nodiscard]] std::vector<S> bracket_dense(const std::vector<S>& u, const std::vector<S>& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw std::invalid_argument("LieAlgebra::bracket: dimension mismatch");
    return bracket(SparseVector<S>::from_dense(u), SparseVector<S>::from_dense(v)).to_dense(dim_);
  }

  /// Multidegree of a vector if all its terms share one.
  [[nodiscard]] std::optional<Multidegree> homogeneous_multidegree(const SparseVector<Rational>& v) const {
    if (!has_multidegrees() || v.empty()) return std::nullopt;
    const auto& first = multidegrees_[v.leading_index()];
    for (const auto& [i, x] : v) {
      if (multidegrees_[i] != first) return std::nullopt;
    }
    return first;
  }

  /// Total degree of a basis vector (sum of its multidegree), when known.
  [[nodiscard]] int degree(std::size_t i) const {
    int d = 0;
    for (int x : multidegrees_.at(i)) d += x;
    return d;
  }

 private:
  struct Link {
    std::size_t other;
    std::size_t entry;
    int sign;
  };

  void check_index(std::size_t i) const {
    if (i >= dim_) throw std::out_of_range("LieAlgebra: basis index beyond dimension");
  }

  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<Multidegree> multidegrees_;
  std::vector<BracketEntry> entries_;
  std::vector<std::vector<Link>> adjacency_;
};

using LieAlgebraPtr = std::shared_ptr<const LieAlgebra>;

inline LieAlgebraPtr make_algebra(LieAlgebra alg) { return std::make_shared<const LieAlgebra>(std::move(alg)); }

/// Raised when a subspace expected to be an ideal is not bracket-closed.
class NotAnIdeal : public std::runtime_error {
 public:
  NotAnIdeal(std::size_t basis_index, SparseVector<Rational> member, SparseVector<Rational> escape)
      : std::runtime_error("subspace is not an ideal: [e_" + std::to_string(basis_index + 1) + ", member] leaves it"),
        basis_index(basis_index), member(std::move(member)), escape(std::move(escape)) {}
  std::size_t basis_index;
  SparseVector<Rational> member;
  SparseVector<Rational> escape;
};

struct IdealWitness {
  std::size_t basis_index;
  SparseVector<Rational> member;
  SparseVector<Rational> bracket;
};

/// First (basis vector, spanning row) pair whose bracket leaves the
/// subspace, or nullopt if [alg, space] is contained in space.
inline std::optional<IdealWitness> ideal_violation(const LieAlgebra& alg, const Subspace& space) {
  if (space.ambient_dim() != alg.dim()) throw std::invalid_argument("ideal_violation: dimension mismatch");
  for (const auto& row : space.rows()) {
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      auto w = alg.ad(i, row);
      if (!w.empty() && !space.contains(w)) return IdealWitness{i, row, std::move(w)};
    }
  }
  return std::nullopt;
}

/// An ideal of a Lie algebra; construction verifies bracket closure.
class Ideal {
 public:
  Ideal(LieAlgebraPtr ambient, Subspace space) : ambient_(std::move(ambient)), space_(std::move(space)) {
    if (space_.ambient_dim() != ambient_->dim()) throw std::invalid_argument("Ideal: dimension mismatch");
    if (auto bad = ideal_violation(*ambient_, space_)) {
      throw NotAnIdeal(bad->basis_index, bad->member, bad->bracket);
    }
  }

  static Ideal zero(LieAlgebraPtr ambient) {
    const std::size_t n = ambient->dim();
    return Ideal(std::move(ambient), Subspace(n), Trusted{});
  }

  [[nodiscard]] const LieAlgebraPtr& ambient() const { return ambient_; }
  [[nodiscard]] const Subspace& space() const { return space_; }
  [[nodiscard]] std::size_t dim() const { return space_.dim(); }

 private:
  struct Trusted {};
  Ideal(LieAlgebraPtr ambient, Subspace space, Trusted) : ambient_(std::move(ambient)), space_(std::move(space)) {}

  LieAlgebraPtr ambient_;
  Subspace space_;
};

namespace detail {

/// Closure of span(generators) under ad of every basis vector. When the
/// algebra carries multidegrees and every vector met is multihomogeneous the
/// work splits into independent echelon forms per multidegree; otherwise
/// nullopt signals that the caller must fall back to one global form.
inline std::optional<Subspace> blocked_closure(const LieAlgebra& alg, const std::vector<SparseVector<Rational>>& generators) {
  if (!alg.has_multidegrees()) return std::nullopt;
  std::map<Multidegree, EchelonBuilder<Rational>> blocks;
  std::deque<std::pair<Multidegree, SparseVector<Rational>>> work;
  auto insert = [&](const SparseVector<Rational>& v) -> bool {
    if (v.empty()) return true;
    auto md = alg.homogeneous_multidegree(v);
    if (!md) return false;
    auto it = blocks.try_emplace(*md, alg.dim()).first;
    if (auto row = it->second.insert(v)) work.emplace_back(*md, std::move(*row));
    return true;
  };
  for (const auto& g : generators) {
    if (!insert(g)) return std::nullopt;
  }
  while (!work.empty()) {
    auto [md, row] = std::move(work.front());
    work.pop_front();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      if (!insert(alg.ad(i, row))) return std::nullopt;
    }
  }
  std::vector<std::vector<SparseVector<Rational>>> rows;
  rows.reserve(blocks.size());
  for (const auto& [md, b] : blocks) rows.push_back(b.rref_rows());
  return Subspace::direct_sum_of_blocks(alg.dim(), rows);
}

inline Subspace global_closure(const LieAlgebra& alg, const std::vector<SparseVector<Rational>>& generators) {
  EchelonBuilder<Rational> builder(alg.dim());
  std::deque<SparseVector<Rational>> work;
  for (const auto& g : generators) {
    if (auto row = builder.insert(g)) work.push_back(std::move(*row));
  }
  while (!work.empty()) {
    auto row = std::move(work.front());
    work.pop_front();
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      if (auto fresh = builder.insert(alg.ad(i, row))) work.push_back(std::move(*fresh));
    }
  }
  return Subspace::from_builder(builder);
}

}  // namespace detail

/// Smallest ideal containing the generators. The result is re-verified to be
/// bracket-closed by the Ideal constructor.
inline Ideal ideal_closure(const LieAlgebraPtr& alg, const std::vector<SparseVector<Rational>>& generators) {
  for (const auto& g : generators) {
    if (!g.empty() && g.max_index() >= alg->dim()) throw std::out_of_range("ideal_closure: generator beyond dimension");
  }
  auto blocked = detail::blocked_closure(*alg, generators);
  return Ideal(alg, blocked ? std::move(*blocked) : detail::global_closure(*alg, generators));
}

/// Quotient of a Lie algebra by an ideal. The section is spanned by the
/// coordinate vectors at the non-pivot positions of the ideal's RREF basis;
/// quotient basis vector k is the image of e_{section[k]}.
struct Quotient {
  LieAlgebraPtr algebra;
  Ideal ideal;
  std::vector<std::size_t> section;
  /// position[i] = k if section[k] = i, or none.
  std::vector<std::size_t> position;
  SparseMatrix<Rational> projection;

  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  /// Image of a vector of the ambient algebra.
  template <class S>
  [[nodiscard]] SparseVector<S> project(const SparseVector<S>& v) const {
    const auto reduced = ideal.space().reduce(v);
    std::vector<typename SparseVector<S>::Entry> out;
    out.reserve(reduced.nnz());
    for (const auto& [i, x] : reduced) out.emplace_back(position[i], x);
    return SparseVector<S>::from_entries(std::move(out));
  }

  /// Preimage along the section.
  template <class S>
  [[nodiscard]] SparseVector<S> lift(const SparseVector<S>& v) const {
    std::vector<typename SparseVector<S>::Entry> out;
    out.reserve(v.nnz());
    for (const auto& [k, x] : v) out.emplace_back(section.at(k), x);
    return SparseVector<S>::from_entries(std::move(out));
  }
};

inline Quotient quotient(const Ideal& ideal) {
  const auto& alg = *ideal.ambient();
  const std::size_t n = alg.dim();
  Quotient q{nullptr, ideal, ideal.space().complement_indices(), std::vector<std::size_t>(n, Quotient::none), {}};
  for (std::size_t k = 0; k < q.section.size(); ++k) q.position[q.section[k]] = k;
  std::vector<BracketEntry> brackets;
  for (std::size_t a = 0; a < q.section.size(); ++a) {
    for (std::size_t b = a + 1; b < q.section.size(); ++b) {
      auto value = q.project(alg.basis_bracket(q.section[a], q.section[b]));
      if (!value.empty()) brackets.push_back({a, b, std::move(value)});
    }
  }
  std::vector<std::string> labels;
  std::vector<Multidegree> multidegrees;
  bool homogeneous = alg.has_multidegrees();
  for (const auto& row : ideal.space().rows()) {
    if (!homogeneous) break;
    homogeneous = alg.homogeneous_multidegree(row).has_value();
  }
  for (auto s : q.section) {
    labels.push_back(alg.label(s));
    if (homogeneous) multidegrees.push_back(alg.multidegree(s));
  }
  q.algebra = make_algebra(LieAlgebra(q.section.size(), std::move(brackets), std::move(labels), std::move(multidegrees)));
  std::vector<SparseVector<Rational>> columns;
  columns.reserve(n);
  for (std::size_t j = 0; j < n; ++j) columns.push_back(q.project(SparseVector<Rational>::unit(j)));
  q.projection = SparseMatrix<Rational>(q.section.size(), std::move(columns));
  return q;
}

struct JacobiReport {
  bool passed = true;
  bool exhaustive = false;
  std::size_t triples_checked = 0;
  /// Triples with at least one nonzero double bracket.
  std::size_t nontrivial = 0;
  std::optional<std::array<std::size_t, 3>> violation;
  SparseVector<Rational> residual;
};

/// Jacobiator [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]].
inline SparseVector<Rational> jacobiator(const LieAlgebra& alg, std::size_t i, std::size_t j, std::size_t k) {
  SparseAccumulator<Rational> acc;
  acc.add_scaled(alg.ad(i, alg.basis_bracket(j, k)), Rational(1));
  acc.add_scaled(alg.ad(j, alg.basis_bracket(k, i)), Rational(1));
  acc.add_scaled(alg.ad(k, alg.basis_bracket(i, j)), Rational(1));
  return acc.finish();
}

enum class JacobiMode { automatic, exhaustive, sampled };

/// Checks the Jacobi identity on basis triples. Exhaustive mode visits all
/// i < j < k (the Jacobiator is alternating). Sampled mode draws triples
/// from a seeded 64-bit Mersenne twister; uniform triples are almost always
/// trivially zero in a large nilpotent algebra, so each draw picks a stored
/// entry [e_j, e_k] outside the center and then e_i among the basis vectors
/// bracketing nontrivially with its support. Automatic picks
/// exhaustive up to dimension 60.
inline JacobiReport verify_jacobi(const LieAlgebra& alg, JacobiMode mode = JacobiMode::automatic,
                                  std::size_t samples = 10000, std::uint64_t seed = 0) {
  const std::size_t n = alg.dim();
  if (mode == JacobiMode::automatic) mode = n <= 60 ? JacobiMode::exhaustive : JacobiMode::sampled;
  JacobiReport report;
  report.exhaustive = mode == JacobiMode::exhaustive;
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    ++report.triples_checked;
    if (!alg.ad(i, alg.basis_bracket(j, k)).empty() || !alg.ad(j, alg.basis_bracket(k, i)).empty() ||
        !alg.ad(k, alg.basis_bracket(i, j)).empty()) {
      ++report.nontrivial;
    }
    auto r = jacobiator(alg, i, j, k);
    if (r.empty()) return true;
    report.passed = false;
    report.violation = std::array<std::size_t, 3>{i, j, k};
    report.residual = std::move(r);
    return false;
  };
  if (report.exhaustive) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
          if (!check(i, j, k)) return report;
        }
      }
    }
    return report;
  }
  if (n == 0) return report;
  std::vector<std::vector<std::size_t>> partners(n);
  for (const auto& e : alg.brackets()) {
    partners[e.i].push_back(e.j);
    partners[e.j].push_back(e.i);
  }
  // entries [e_j, e_k] that are not central, so that some e_i acts on them
  std::vector<std::size_t> deep;
  for (std::size_t e = 0; e < alg.brackets().size(); ++e) {
    for (const auto& [t, x] : alg.brackets()[e].value) {
      if (!partners[t].empty()) {
        deep.push_back(e);
        break;
      }
    }
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    if (deep.empty()) {
      if (!check(rng() % n, rng() % n, rng() % n)) return report;
      continue;
    }
    const auto& entry = alg.brackets()[deep[rng() % deep.size()]];
    std::vector<std::size_t> acting;
    for (const auto& [t, x] : entry.value) acting.insert(acting.end(), partners[t].begin(), partners[t].end());
    std::sort(acting.begin(), acting.end());
    acting.erase(std::unique(acting.begin(), acting.end()), acting.end());
    if (!check(acting[rng() % acting.size()], entry.i, entry.j)) return report;
  }
  return report;
}

/// span{[a, b] : a in A, b in B} for subspaces given by spanning rows.
inline Subspace bracket_span(const LieAlgebra& alg, const std::vector<SparseVector<Rational>>& a,
                             const std::vector<SparseVector<Rational>>& b) {
  EchelonBuilder<Rational> builder(alg.dim());
  for (const auto& x : a) {
    for (const auto& y : b) builder.insert(alg.bracket(x, y));
  }
  return Subspace::from_builder(builder);
}

/// [alg, V] using basis vectors on the left.
inline Subspace ad_span(const LieAlgebra& alg, const Subspace& v) {
  EchelonBuilder<Rational> builder(alg.dim());
  for (const auto& row : v.rows()) {
    for (std::size_t i = 0; i < alg.dim(); ++i) builder.insert(alg.ad(i, row));
  }
  return Subspace::from_builder(builder);
}

enum class SeriesKind { lower_central, derived };

/// Lower central series g = C1 > C2 = [g, C1] > ... down to the first zero
/// term, or derived series D0 = g > D1 = [D0, D0] > ... until it stabilizes
/// (the stable term is listed once).
inline std::vector<Subspace> series(const LieAlgebra& alg, SeriesKind kind) {
  std::vector<Subspace> out{Subspace::whole(alg.dim())};
  while (true) {
    const Subspace& last = out.back();
    Subspace next = kind == SeriesKind::lower_central ? ad_span(alg, last) : bracket_span(alg, last.rows(), last.rows());
    if (next == last) break;
    const bool zero = next.is_zero();
    out.push_back(std::move(next));
    if (zero) break;
  }
  return out;
}

/// [alg, alg]
inline Subspace derived_subalgebra(const LieAlgebra& alg) {
  EchelonBuilder<Rational> builder(alg.dim());
  for (const auto& e : alg.brackets()) builder.insert(e.value);
  return Subspace::from_builder(builder);
}

/// Same algebra in the basis f_j = sum_i t(i, j) e_i (columns of t are the
/// new basis vectors in old coordinates). Labels become f1..fn; multidegrees
/// are dropped.
inline LieAlgebra change_basis(const LieAlgebra& alg, const RatMatrix& t) {
  const std::size_t n = alg.dim();
  if (t.rows() != n || t.cols() != n) throw std::invalid_argument("change_basis: matrix size mismatch");
  const RatMatrix t_inv = inverse(t);
  const auto ts = t.to_sparse();
  const auto t_inv_s = t_inv.to_sparse();
  std::vector<BracketEntry> brackets;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      auto value = t_inv_s.apply(alg.bracket(ts.column(a), ts.column(b)));
      if (!value.empty()) brackets.push_back({a, b, std::move(value)});
    }
  }
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < n; ++k) labels.push_back("f" + std::to_string(k + 1));
  return LieAlgebra(n, std::move(brackets), std::move(labels));
}

}  // namespace nilpotent
