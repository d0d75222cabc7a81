#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nilpotent/rational.hpp"
#include "nilpotent/sparse.hpp"

namespace nilpotent {

/// Incremental row echelon form over a field. Rows are kept with leading
/// coefficient 1 but are only semi-reduced; rref_rows() produces the
/// canonical reduced form.
template <class S>
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t dim) : dim_(dim) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return rows_.size(); }

  /// Remainder of v after eliminating every pivot coordinate.
  [[nodiscard]] SparseVector<S> reduce(const SparseVector<S>& v) const {
    if (rows_.empty() || v.empty()) return v;
    std::map<std::size_t, S> acc;
    for (const auto& [i, x] : v) {
      if (i >= dim_) throw std::out_of_range("EchelonBuilder: vector index beyond dimension");
      acc.emplace(i, x);
    }
    for (auto it = acc.begin(); it != acc.end();) {
      auto row = rows_.find(it->first);
      if (row == rows_.end()) {
        ++it;
        continue;
      }
      const S c = it->second;
      for (const auto& [j, y] : row->second) {
        auto [slot, inserted] = acc.try_emplace(j, S(0));
        slot->second -= c * y;
      }
      // The pivot entry cancels exactly; drop zeros at and after it lazily.
      it = acc.erase(it);
    }
    std::vector<typename SparseVector<S>::Entry> out;
    for (auto& [i, x] : acc) {
      if (!scalar_zero(x)) out.emplace_back(i, std::move(x));
    }
    return SparseVector<S>::from_entries(std::move(out));
  }

  /// Adds v to the span. Returns the new (normalized) row if the rank grew.
  std::optional<SparseVector<S>> insert(const SparseVector<S>& v) {
    auto r = reduce(v);
    if (r.empty()) return std::nullopt;
    const S lead = r.entries().front().second;
    r *= S(1) / lead;
    rows_.emplace(r.leading_index(), r);
    return r;
  }

  [[nodiscard]] bool contains(const SparseVector<S>& v) const { return reduce(v).empty(); }

  [[nodiscard]] std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& [p, row] : rows_) out.push_back(p);
    return out;
  }

  /// Canonical reduced row echelon rows, sorted by pivot.
  [[nodiscard]] std::vector<SparseVector<S>> rref_rows() const {
    std::map<std::size_t, SparseVector<S>> reduced;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
      const std::size_t p = it->first;
      SparseAccumulator<S> acc;
      acc.add_scaled(it->second, S(1));
      for (const auto& [q, c] : it->second) {
        if (q == p) continue;
        auto done = reduced.find(q);
        if (done != reduced.end()) acc.add_scaled(done->second, -c);
      }
      reduced.emplace(p, acc.finish());
    }
    std::vector<SparseVector<S>> out;
    out.reserve(reduced.size());
    for (auto& [p, row] : reduced) out.push_back(std::move(row));
    return out;
  }

 private:
  std::size_t dim_;
  std::map<std::size_t, SparseVector<S>> rows_;
};

/// Subspace of Q^n held as its unique reduced row echelon basis (pivot
/// leftmost), so equality of subspaces is equality of representations.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0)
      : ambient_(ambient_dim), pivot_row_(ambient_dim, -1) {}

  static Subspace span(std::size_t ambient_dim, const std::vector<SparseVector<Rational>>& vectors) {
    EchelonBuilder<Rational> builder(ambient_dim);
    for (const auto& v : vectors) builder.insert(v);
    return from_builder(builder);
  }

  static Subspace span_dense(std::size_t ambient_dim, const std::vector<std::vector<Rational>>& vectors) {
    std::vector<SparseVector<Rational>> sparse;
    sparse.reserve(vectors.size());
    for (const auto& v : vectors) {
      if (v.size() != ambient_dim) throw std::invalid_argument("Subspace::span_dense: vector length mismatch");
      sparse.push_back(SparseVector<Rational>::from_dense(v));
    }
    return span(ambient_dim, sparse);
  }

  static Subspace whole(std::size_t n) {
    std::vector<SparseVector<Rational>> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rows.push_back(SparseVector<Rational>::unit(i));
    return Subspace(n, std::move(rows));
  }

  template <class S>
  static Subspace from_builder(const EchelonBuilder<S>& builder) {
    return Subspace(builder.dim(), builder.rref_rows());
  }

  /// Union of bases of subspaces with pairwise disjoint coordinate supports.
  static Subspace direct_sum_of_blocks(std::size_t ambient_dim, const std::vector<std::vector<SparseVector<Rational>>>& blocks) {
    std::map<std::size_t, SparseVector<Rational>> by_pivot;
    for (const auto& block : blocks) {
      for (const auto& row : block) {
        if (!by_pivot.emplace(row.leading_index(), row).second) {
          throw std::logic_error("Subspace::direct_sum_of_blocks: overlapping pivots");
        }
      }
    }
    std::vector<SparseVector<Rational>> rows;
    rows.reserve(by_pivot.size());
    for (auto& [p, row] : by_pivot) rows.push_back(std::move(row));
    return Subspace(ambient_dim, std::move(rows));
  }

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return rows_.size(); }
  [[nodiscard]] bool is_zero() const { return rows_.empty(); }
  [[nodiscard]] const std::vector<SparseVector<Rational>>& rows() const { return rows_; }
  [[nodiscard]] std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.leading_index());
    return out;
  }
  [[nodiscard]] bool is_pivot(std::size_t i) const { return pivot_row_.at(i) >= 0; }

  /// Coordinates not used as pivots; these coordinate vectors span a
  /// complement.
  [[nodiscard]] std::vector<std::size_t> complement_indices() const {
    std::vector<std::size_t> out;
    out.reserve(ambient_ - rows_.size());
    for (std::size_t i = 0; i < ambient_; ++i) {
      if (pivot_row_[i] < 0) out.push_back(i);
    }
    return out;
  }

  /// v minus its component along the pivot coordinates; zero iff v lies in
  /// the span (over any extension field S of Q).
  template <class S>
  [[nodiscard]] SparseVector<S> reduce(const SparseVector<S>& v) const {
    SparseAccumulator<S> acc;
    bool touched = false;
    for (const auto& [i, x] : v) {
      if (i >= ambient_) throw std::out_of_range("Subspace::reduce: vector index beyond dimension");
      const auto r = pivot_row_[i];
      if (r < 0) continue;
      touched = true;
      for (const auto& [j, y] : rows_[static_cast<std::size_t>(r)]) acc.add(j, S(y) * x);
    }
    if (!touched) return v;
    SparseVector<S> out = v;
    out -= acc.finish();
    return out;
  }

  template <class S>
  [[nodiscard]] bool contains(const SparseVector<S>& v) const { return reduce(v).empty(); }

  [[nodiscard]] bool contains(const Subspace& other) const {
    for (const auto& r : other.rows_) {
      if (!contains(r)) return false;
    }
    return true;
  }

  /// Coordinates of a member vector with respect to the RREF rows (its
  /// entries at the pivot positions).
  [[nodiscard]] std::vector<Rational> coordinates(const SparseVector<Rational>& v) const {
    if (!contains(v)) throw std::invalid_argument("Subspace::coordinates: vector not in subspace");
    std::vector<Rational> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(v[r.leading_index()]);
    return out;
  }

  [[nodiscard]] Subspace operator+(const Subspace& other) const {
    check_ambient(other);
    EchelonBuilder<Rational> b(ambient_);
    for (const auto& r : rows_) b.insert(r);
    for (const auto& r : other.rows_) b.insert(r);
    return from_builder(b);
  }

  /// Zassenhaus intersection.
  [[nodiscard]] Subspace intersect(const Subspace& other) const {
    check_ambient(other);
    const std::size_t n = ambient_;
    EchelonBuilder<Rational> b(2 * n);
    for (const auto& r : rows_) {
      SparseVector<Rational> doubled = r;
      std::vector<SparseVector<Rational>::Entry> shifted;
      for (const auto& [i, x] : r) shifted.emplace_back(i + n, x);
      doubled += SparseVector<Rational>::from_entries(std::move(shifted));
      b.insert(doubled);
    }
    for (const auto& r : other.rows_) b.insert(r);
    std::vector<SparseVector<Rational>> result;
    for (const auto& row : b.rref_rows()) {
      if (row.leading_index() < n) continue;
      std::vector<SparseVector<Rational>::Entry> back;
      for (const auto& [i, x] : row) back.emplace_back(i - n, x);
      result.push_back(SparseVector<Rational>::from_entries(std::move(back)));
    }
    return span(n, result);
  }

  /// Dense basis matrix, one RREF row per basis vector.
  [[nodiscard]] std::vector<std::vector<Rational>> basis_rows() const {
    std::vector<std::vector<Rational>> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r.to_dense(ambient_));
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

 private:
  Subspace(std::size_t ambient_dim, std::vector<SparseVector<Rational>> rows)
      : ambient_(ambient_dim), rows_(std::move(rows)), pivot_row_(ambient_dim, -1) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (rows_[r].empty()) throw std::logic_error("Subspace: zero basis row");
      if (rows_[r].max_index() >= ambient_) throw std::out_of_range("Subspace: row beyond ambient dimension");
      pivot_row_[rows_[r].leading_index()] = static_cast<std::ptrdiff_t>(r);
    }
  }

  void check_ambient(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("Subspace: ambient dimension mismatch");
  }

  std::size_t ambient_ = 0;
  std::vector<SparseVector<Rational>> rows_;
  std::vector<std::ptrdiff_t> pivot_row_;
};

}  // namespace nilpotent
