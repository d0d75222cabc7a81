#pragma once

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "nilpotent/rational.hpp"
#include "nilpotent/sparse.hpp"

namespace nilpotent {

/// A basis element of the free nilpotent Lie algebra: either a generator or
/// the bracket of two earlier words, referenced by index.
struct HallWord {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);

  std::size_t left = none;
  std::size_t right = none;
  std::size_t generator = none;  // 0-based, generators only
  std::size_t degree = 1;
  std::vector<int> multidegree;

  [[nodiscard]] bool is_generator() const { return left == none; }
};

/// Hall basis of the free c-step nilpotent Lie algebra on g generators.
/// Words are indexed by their position in the global order: degree-major,
/// and within a degree in order of construction, which enumerates pairs
/// (left, right) lexicographically by index.
class HallBasis {
 public:
  HallBasis(std::size_t generators, std::size_t nilpotency_class)
      : g_(generators), c_(nilpotency_class) {
    if (g_ < 1 || c_ < 1) throw std::invalid_argument("HallBasis: need at least one generator and class >= 1");
    degree_begin_.push_back(0);
    for (std::size_t k = 0; k < g_; ++k) {
      HallWord w;
      w.generator = k;
      w.multidegree.assign(g_, 0);
      w.multidegree[k] = 1;
      words_.push_back(std::move(w));
    }
    degree_begin_.push_back(words_.size());
    for (std::size_t d = 2; d <= c_; ++d) {
      const std::size_t existing = words_.size();
      for (std::size_t a = 0; a < existing; ++a) {
        const std::size_t da = words_[a].degree;
        if (da >= d) break;
        const std::size_t db = d - da;
        for (std::size_t b = degree_begin_[db - 1]; b < degree_begin_[db]; ++b) {
          if (!(a < b)) continue;
          if (!words_[b].is_generator() && words_[b].left > a) continue;
          HallWord w;
          w.left = a;
          w.right = b;
          w.degree = d;
          w.multidegree = words_[a].multidegree;
          for (std::size_t k = 0; k < g_; ++k) w.multidegree[k] += words_[b].multidegree[k];
          pair_index_.emplace(key(a, b), words_.size());
          words_.push_back(std::move(w));
        }
      }
      degree_begin_.push_back(words_.size());
    }
  }

  [[nodiscard]] std::size_t generators() const { return g_; }
  [[nodiscard]] std::size_t nilpotency_class() const { return c_; }
  [[nodiscard]] std::size_t size() const { return words_.size(); }
  [[nodiscard]] const HallWord& word(std::size_t i) const { return words_.at(i); }
  [[nodiscard]] const std::vector<HallWord>& words() const { return words_; }

  /// Index range [first, last) of the degree-d words.
  [[nodiscard]] std::pair<std::size_t, std::size_t> degree_range(std::size_t d) const {
    if (d < 1 || d > c_) throw std::out_of_range("HallBasis: degree out of range");
    return {degree_begin_[d - 1], degree_begin_[d]};
  }

  [[nodiscard]] std::vector<std::size_t> degree_sizes() const {
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d <= c_; ++d) out.push_back(degree_begin_[d] - degree_begin_[d - 1]);
    return out;
  }

  /// Index of the Hall word [a, b], if that pair is a Hall word.
  [[nodiscard]] std::optional<std::size_t> find(std::size_t a, std::size_t b) const {
    auto it = pair_index_.find(key(a, b));
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Bracket notation, e.g. "[X1,[X1,X2]]", generators numbered from 1.
  [[nodiscard]] std::string label(std::size_t i) const {
    const auto& w = words_.at(i);
    if (w.is_generator()) return "X" + std::to_string(w.generator + 1);
    return "[" + label(w.left) + "," + label(w.right) + "]";
  }

 private:
  static std::uint64_t key(std::size_t a, std::size_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  }

  std::size_t g_;
  std::size_t c_;
  std::vector<HallWord> words_;
  std::vector<std::size_t> degree_begin_;
  std::unordered_map<std::uint64_t, std::size_t> pair_index_;
};

/// Rewrites brackets of Hall words into Hall normal form.
///
/// For a < b with b = [b1, b2] and a < b1 the pair is not a Hall word, and
/// the Jacobi identity gives [a,[b1,b2]] = [[a,b1],b2] + [b1,[a,b2]].
/// Termination: the inner calls [a,b1] and [a,b2] keep a and have a smaller
/// right index than b; every outer pair has both indices above a (b1 > a,
/// b2 > b1, and words in [a,*] have larger degree than a). So the pair
/// (smaller index, larger index) increases in its first component or
/// decreases in its second, which cannot go on forever.
class HallRewriter {
 public:
  using Vector = SparseVector<Rational>;

  explicit HallRewriter(const HallBasis& basis) : basis_(basis) {}

  [[nodiscard]] const HallBasis& basis() const { return basis_; }

  /// [e_a, e_b] in Hall coordinates.
  [[nodiscard]] Vector bracket_words(std::size_t a, std::size_t b) const {
    if (a >= basis_.size() || b >= basis_.size()) throw std::out_of_range("HallRewriter: word index out of range");
    if (a == b) return {};
    if (basis_.word(a).degree + basis_.word(b).degree > basis_.nilpotency_class()) return {};
    if (a > b) return -bracket_words(b, a);
    if (auto hit = basis_.find(a, b)) return Vector::unit(*hit);
    const std::uint64_t k = (static_cast<std::uint64_t>(a) << 32) | b;
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = memo_.find(k);
      if (it != memo_.end()) return it->second;
    }
    const auto& wb = basis_.word(b);
    const std::size_t b1 = wb.left;
    const std::size_t b2 = wb.right;
    SparseAccumulator<Rational> acc;
    for (const auto& [i, x] : bracket_words(a, b1)) acc.add_scaled(bracket_words(i, b2), x);
    for (const auto& [i, x] : bracket_words(a, b2)) acc.add_scaled(bracket_words(b1, i), x);
    Vector result = acc.finish();
    std::lock_guard<std::mutex> lock(mutex_);
    return memo_.emplace(k, std::move(result)).first->second;
  }

  /// Bilinear extension to arbitrary elements.
  [[nodiscard]] Vector bracket(const Vector& u, const Vector& v) const {
    SparseAccumulator<Rational> acc;
    for (const auto& [i, x] : u) {
      for (const auto& [j, y] : v) acc.add_scaled(bracket_words(i, j), x * y);
    }
    return acc.finish();
  }

  /// Right-normed bracket [w1,[w2,[...,wk]]] of the given words.
  [[nodiscard]] Vector right_normed(const std::vector<Vector>& elements) const {
    if (elements.empty()) throw std::invalid_argument("HallRewriter::right_normed: no elements");
    Vector acc = elements.back();
    for (auto it = elements.rbegin() + 1; it != elements.rend(); ++it) acc = bracket(*it, acc);
    return acc;
  }

  [[nodiscard]] Vector generator(std::size_t k) const {
    if (k >= basis_.generators()) throw std::out_of_range("HallRewriter: generator index out of range");
    return Vector::unit(k);
  }

 private:
  const HallBasis& basis_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::uint64_t, Vector> memo_;
};

}  // namespace nilpotent
