#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilpotent/rational.hpp"

namespace nilpotent {

/// Zero test dispatched through ADL so that scalar types declared after this
/// header (number-field elements) participate.
template <class S>
bool scalar_zero(const S& s) {
  return is_zero(s);
}

/// Sparse coordinate vector: entries sorted by index, no stored zeros.
template <class S>
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, S>;

  SparseVector() = default;

  /// Builds from arbitrary (index, value) pairs; duplicates are summed.
  static SparseVector from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector out;
    for (auto& [i, value] : entries) {
      if (!out.entries_.empty() && out.entries_.back().first == i) {
        out.entries_.back().second += value;
        if (scalar_zero(out.entries_.back().second)) out.entries_.pop_back();
      } else if (!scalar_zero(value)) {
        out.entries_.emplace_back(i, std::move(value));
      }
    }
    return out;
  }

  static SparseVector unit(std::size_t index, S value = S(1)) {
    SparseVector out;
    if (!scalar_zero(value)) out.entries_.emplace_back(index, std::move(value));
    return out;
  }

  static SparseVector from_dense(const std::vector<S>& dense) {
    SparseVector out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      if (!scalar_zero(dense[i])) out.entries_.emplace_back(i, dense[i]);
    }
    return out;
  }

  [[nodiscard]] std::vector<S> to_dense(std::size_t dim) const {
    std::vector<S> out(dim, S(0));
    for (const auto& [i, v] : entries_) {
      if (i >= dim) throw std::out_of_range("SparseVector::to_dense: index beyond dimension");
      out[i] = v;
    }
    return out;
  }

  [[nodiscard]] const std::vector<Entry>& entries() const { return entries_; }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] std::size_t leading_index() const { return entries_.front().first; }
  [[nodiscard]] std::size_t max_index() const { return entries_.back().first; }
  [[nodiscard]] auto begin() const { return entries_.begin(); }
  [[nodiscard]] auto end() const { return entries_.end(); }

  [[nodiscard]] S operator[](std::size_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) return it->second;
    return S(0);
  }

  SparseVector& operator*=(const S& c) {
    if (scalar_zero(c)) {
      entries_.clear();
      return *this;
    }
    for (auto& e : entries_) e.second *= c;
    return *this;
  }

  /// this += c * other
  SparseVector& add_scaled(const SparseVector& other, const S& c) {
    if (scalar_zero(c) || other.empty()) return *this;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
        merged.push_back(std::move(*a++));
      } else if (a == entries_.end() || b->first < a->first) {
        merged.emplace_back(b->first, b->second * c);
        ++b;
      } else {
        S sum = a->second + b->second * c;
        if (!scalar_zero(sum)) merged.emplace_back(a->first, std::move(sum));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(merged);
    return *this;
  }

  SparseVector& operator+=(const SparseVector& o) { return add_scaled(o, S(1)); }
  SparseVector& operator-=(const SparseVector& o) { return add_scaled(o, S(-1)); }
  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const S& c, SparseVector v) { return v *= c; }
  friend SparseVector operator-(SparseVector v) { return v *= S(-1); }

  friend bool operator==(const SparseVector& a, const SparseVector& b) {
    return a.entries_ == b.entries_;
  }

  template <class F>
  [[nodiscard]] auto map(F&& f) const {
    using T = decltype(f(std::declval<const S&>()));
    std::vector<typename SparseVector<T>::Entry> out;
    out.reserve(entries_.size());
    for (const auto& [i, v] : entries_) out.emplace_back(i, f(v));
    return SparseVector<T>::from_entries(std::move(out));
  }

 private:
  std::vector<Entry> entries_;
};

/// Accumulates scaled sparse vectors; cheaper than repeated merges when many
/// small contributions land on the same result.
template <class S>
class SparseAccumulator {
 public:
  void add(std::size_t index, const S& value) {
    if (scalar_zero(value)) return;
    auto [it, inserted] = terms_.try_emplace(index, value);
    if (!inserted) it->second += value;
  }
  void add_scaled(const SparseVector<S>& v, const S& c) {
    for (const auto& [i, x] : v) add(i, x * c);
  }
  [[nodiscard]] SparseVector<S> finish() {
    std::vector<typename SparseVector<S>::Entry> out;
    out.reserve(terms_.size());
    for (auto& [i, v] : terms_) {
      if (!scalar_zero(v)) out.emplace_back(i, std::move(v));
    }
    terms_.clear();
    return SparseVector<S>::from_entries(std::move(out));
  }
  [[nodiscard]] bool empty() const { return terms_.empty(); }

 private:
  std::map<std::size_t, S> terms_;
};

/// Column-sparse matrix: column j is the image of the j-th basis vector.
template <class S>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}
  SparseMatrix(std::size_t rows, std::vector<SparseVector<S>> columns)
      : rows_(rows), columns_(std::move(columns)) {
    for (const auto& c : columns_) {
      if (!c.empty() && c.max_index() >= rows_) {
        throw std::out_of_range("SparseMatrix: column entry beyond row count");
      }
    }
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out.columns_[i] = SparseVector<S>::unit(i);
    return out;
  }

  static SparseMatrix diagonal(const std::vector<S>& diag) {
    SparseMatrix out(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out.columns_[i] = SparseVector<S>::unit(i, diag[i]);
    return out;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return columns_.size(); }
  [[nodiscard]] bool square() const { return rows_ == columns_.size(); }
  [[nodiscard]] const SparseVector<S>& column(std::size_t j) const { return columns_.at(j); }
  [[nodiscard]] const std::vector<SparseVector<S>>& columns() const { return columns_; }
  void set_column(std::size_t j, SparseVector<S> c) { columns_.at(j) = std::move(c); }

  [[nodiscard]] S at(std::size_t i, std::size_t j) const { return columns_.at(j)[i]; }

  [[nodiscard]] SparseVector<S> apply(const SparseVector<S>& v) const {
    SparseAccumulator<S> acc;
    for (const auto& [j, x] : v) {
      if (j >= cols()) throw std::out_of_range("SparseMatrix::apply: dimension mismatch");
      acc.add_scaled(columns_[j], x);
    }
    return acc.finish();
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("SparseMatrix: dimension mismatch in product");
    SparseMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) out.columns_[j] = a.apply(b.columns_[j]);
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.columns_ == b.columns_;
  }

  [[nodiscard]] bool is_identity() const { return *this == identity(rows_) && square(); }

  /// Entrywise image under f (used for scalar extension and Galois twists).
  template <class F>
  [[nodiscard]] auto map(F&& f) const {
    using T = decltype(f(std::declval<const S&>()));
    SparseMatrix<T> out(rows_, cols());
    for (std::size_t j = 0; j < cols(); ++j) out.set_column(j, columns_[j].map(f));
    return out;
  }

  /// Row-major dense copy.
  [[nodiscard]] std::vector<std::vector<S>> to_rows() const {
    std::vector<std::vector<S>> out(rows_, std::vector<S>(cols(), S(0)));
    for (std::size_t j = 0; j < cols(); ++j) {
      for (const auto& [i, v] : columns_[j]) out[i][j] = v;
    }
    return out;
  }

  static SparseMatrix from_rows(const std::vector<std::vector<S>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    std::vector<std::vector<typename SparseVector<S>::Entry>> cols(m);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m) throw std::invalid_argument("SparseMatrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < m; ++j) {
        if (!scalar_zero(rows[i][j])) cols[j].emplace_back(i, rows[i][j]);
      }
    }
    SparseMatrix out(n, m);
    for (std::size_t j = 0; j < m; ++j) out.columns_[j] = SparseVector<S>::from_entries(std::move(cols[j]));
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector<S>> columns_;
};

}  // namespace nilpotent
