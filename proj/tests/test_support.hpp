#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nilpotent/matrix.hpp"
#include "nilpotent/rational.hpp"

namespace testing_support {

using nilpotent::Rational;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(long num_bound, long den_bound) {
    return Rational(nilpotent::Integer(integer(-num_bound, num_bound)), nilpotent::Integer(integer(1, den_bound)));
  }

  Rational nonzero_rational(long num_bound, long den_bound) {
    while (true) {
      auto r = rational(num_bound, den_bound);
      if (!r.is_zero()) return r;
    }
  }

  nilpotent::RatMatrix matrix(std::size_t rows, std::size_t cols, long num_bound, long den_bound) {
    nilpotent::RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rational(num_bound, den_bound);
    }
    return m;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline Rational q(long p, long d = 1) { return Rational(nilpotent::Integer(p), nilpotent::Integer(d)); }

}  // namespace testing_support
