#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilpotent/polynomial.hpp"
#include "nilpotent/rational.hpp"
#include "nilpotent/sparse.hpp"
#include "nilpotent/subspace.hpp"

namespace nilpotent {

/// Dense row-major matrix over a field.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: entry count does not match shape");
  }

  static Matrix from_rows(const std::vector<std::vector<S>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    Matrix out(n, m);
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m) throw std::invalid_argument("Matrix::from_rows: ragged rows");
      for (std::size_t j = 0; j < m; ++j) out(i, j) = rows[i][j];
    }
    return out;
  }

  static Matrix identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = S(1);
    return out;
  }

  static Matrix diagonal(const std::vector<S>& d) {
    Matrix out(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
    return out;
  }

  /// Companion matrix of a monic polynomial (ones on the subdiagonal, last
  /// column minus the low coefficients).
  static Matrix companion(const Polynomial<S>& p) {
    if (p.degree() < 1) throw std::invalid_argument("Matrix::companion: degree must be positive");
    const auto monic = p.monic();
    const auto n = static_cast<std::size_t>(monic.degree());
    Matrix out(n, n);
    for (std::size_t i = 1; i < n; ++i) out(i, i - 1) = S(1);
    for (std::size_t i = 0; i < n; ++i) out(i, n - 1) = -monic.coefficient(i);
    return out;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }
  [[nodiscard]] const std::vector<S>& entries() const { return data_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] std::vector<S> row(std::size_t i) const {
    return std::vector<S>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  [[nodiscard]] std::vector<std::vector<S>> to_rows() const {
    std::vector<std::vector<S>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const S& x = a(i, k);
        if (scalar_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(k, j);
      }
    }
    return out;
  }

  friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v) {
    if (a.cols_ != v.size()) throw std::invalid_argument("Matrix: dimension mismatch in matrix-vector product");
    std::vector<S> out(a.rows_, S(0));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
    }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    a.check_same_shape(b);
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }
  friend Matrix operator*(const S& s, Matrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  [[nodiscard]] SparseMatrix<S> to_sparse() const { return SparseMatrix<S>::from_rows(to_rows()); }
  static Matrix from_sparse(const SparseMatrix<S>& m) { return from_rows(m.to_rows()); }

 private:
  void check_same_shape(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

using RatMatrix = Matrix<Rational>;

template <class S>
struct RrefResult {
  Matrix<S> rref;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

/// Gauss-Jordan reduction to reduced row echelon form.
template <class S>
RrefResult<S> rref(Matrix<S> m) {
  RrefResult<S> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && scalar_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    }
    const S inv = S(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || scalar_zero(m(i, c))) continue;
      const S f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  out.rank = r;
  out.rref = std::move(m);
  return out;
}

/// Right null space basis vectors, one per free column, read off the RREF.
template <class S>
std::vector<std::vector<S>> kernel_vectors(const Matrix<S>& m) {
  const auto red = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : red.pivot_columns) is_pivot[c] = true;
  std::vector<std::vector<S>> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<S> v(m.cols(), S(0));
    v[f] = S(1);
    for (std::size_t r = 0; r < red.pivot_columns.size(); ++r) v[red.pivot_columns[r]] = -red.rref(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

struct RrefKernel {
  RatMatrix rref;
  std::size_t rank = 0;
  Subspace kernel;
};

inline RrefKernel rref_kernel(const RatMatrix& m) {
  auto red = rref(m);
  auto kernel = Subspace::span_dense(m.cols(), kernel_vectors(m));
  return RrefKernel{std::move(red.rref), red.rank, std::move(kernel)};
}

template <class S>
std::size_t rank(const Matrix<S>& m) {
  return rref(m).rank;
}

template <class S>
S determinant(Matrix<S> m) {
  if (!m.square()) throw std::invalid_argument("determinant: non-square matrix");
  const std::size_t n = m.rows();
  S det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && scalar_zero(m(p, c))) ++p;
    if (p == n) return S(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const S inv = S(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (scalar_zero(m(i, c))) continue;
      const S f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

template <class S>
Matrix<S> inverse(const Matrix<S>& m) {
  if (!m.square()) throw std::invalid_argument("inverse: non-square matrix");
  const std::size_t n = m.rows();
  Matrix<S> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = S(1);
  }
  auto red = rref(std::move(aug));
  if (red.rank < n || red.pivot_columns[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
  Matrix<S> out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = red.rref(i, n + j);
  }
  return out;
}

/// det(xI - m) by fraction-free (Bareiss) elimination over S[x]. The k-th
/// pivot is the k-th leading principal minor of xI - m, a monic polynomial
/// of degree k, so no pivoting is ever needed and every division is exact.
template <class S>
Polynomial<S> charpoly(const Matrix<S>& m) {
  if (!m.square()) throw std::invalid_argument("charpoly: non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial<S>::constant(S(1));
  using P = Polynomial<S>;
  std::vector<P> a(n * n);
  auto at = [&](std::size_t i, std::size_t j) -> P& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      at(i, j) = P::constant(-m(i, j));
      if (i == j) at(i, j) += P::x();
    }
  }
  P previous = P::constant(S(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const P pivot = at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (pivot * at(i, j) - at(i, k) * at(k, j)).exact_div(previous);
      }
      at(i, k) = P();
    }
    previous = pivot;
  }
  return at(n - 1, n - 1);
}

/// Strongly connected components of the nonzero pattern of a square sparse
/// matrix (edge i -> j when entry (i, j) is nonzero), in an order that makes
/// the permuted matrix block triangular.
template <class S>
std::vector<std::vector<std::size_t>> diagonal_blocks(const SparseMatrix<S>& m) {
  if (!m.square()) throw std::invalid_argument("diagonal_blocks: non-square matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& [i, v] : m.column(j)) out_edges[i].push_back(j);
  }
  // Iterative Tarjan.
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < out_edges[v].size()) {
        const std::size_t w = out_edges[v][next++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      } else {
        const std::size_t finished = v;
        if (low[finished] == index[finished]) {
          std::vector<std::size_t> comp;
          std::size_t w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
          } while (w != finished);
          std::sort(comp.begin(), comp.end());
          components.push_back(std::move(comp));
        }
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[finished]);
      }
    }
  }
  return components;
}

/// Characteristic polynomials of the diagonal blocks of the block triangular
/// form; their product is det(xI - m).
template <class S>
std::vector<Polynomial<S>> charpoly_factors(const SparseMatrix<S>& m) {
  std::vector<Polynomial<S>> out;
  std::vector<std::size_t> position(m.rows(), 0);
  for (const auto& block : diagonal_blocks(m)) {
    for (std::size_t k = 0; k < block.size(); ++k) position[block[k]] = k;
    Matrix<S> sub(block.size(), block.size());
    std::vector<bool> in_block(m.rows(), false);
    for (auto b : block) in_block[b] = true;
    for (std::size_t c = 0; c < block.size(); ++c) {
      for (const auto& [i, v] : m.column(block[c])) {
        if (in_block[i]) sub(position[i], c) = v;
      }
    }
    out.push_back(charpoly(sub));
  }
  return out;
}

template <class S>
Polynomial<S> charpoly(const SparseMatrix<S>& m) {
  auto p = Polynomial<S>::constant(S(1));
  for (const auto& f : charpoly_factors(m)) p *= f;
  return p;
}

/// Rank of a sparse matrix (by columns).
template <class S>
std::size_t rank(const SparseMatrix<S>& m) {
  EchelonBuilder<S> b(m.rows());
  for (const auto& c : m.columns()) b.insert(c);
  return b.rank();
}

/// Evaluates a polynomial at a square matrix (Horner).
template <class S>
Matrix<S> evaluate_at_matrix(const Polynomial<S>& p, const Matrix<S>& m) {
  const std::size_t n = m.rows();
  Matrix<S> acc(n, n);
  const auto& c = p.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * m + (*it) * Matrix<S>::identity(n);
  return acc;
}

}  // namespace nilpotent
