#pragma once

#include <cstddef>
#include <vector>

#include "nilpotent/hall_basis.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/number_field.hpp"

namespace nilpotent::fixtures {

/// Heisenberg algebra with basis (x, y, z) and [x, y] = z.
inline LieAlgebraPtr heisenberg() {
  return make_algebra(LieAlgebra(3, {{0, 1, SparseVector<Rational>::unit(2)}}, {"x", "y", "z"}, {{1, 0}, {0, 1}, {1, 1}}));
}

inline LieAlgebraPtr abelian(std::size_t n) { return make_algebra(LieAlgebra(n, {})); }

inline LieAlgebraPtr free_nilpotent(std::size_t generators, std::size_t nilpotency_class) {
  return make_algebra(LieAlgebra::free(HallBasis(generators, nilpotency_class)));
}

/// Q(sqrt(2 + sqrt 2)) = Q[t]/(t^4 - 4t^2 + 2), the maximal real subfield of
/// the 16th cyclotomic field; sigma: t -> t^3 - 3t generates its cyclic
/// Galois group.
inline NumberFieldPtr quartic_field() {
  return make_field(RatPolynomial{Rational(2), Rational(0), Rational(-4), Rational(0), Rational(1)},
                    RatPolynomial{Rational(0), Rational(-3), Rational(0), Rational(1)});
}

/// -t^3 + 2t^2 - 1, the unit returned by find_pisot_unit(quartic_field(), 10).
inline NumberFieldElement quartic_pisot_unit() {
  return NumberFieldElement::from_coordinates(quartic_field(), {Rational(-1), Rational(0), Rational(2), Rational(-1)});
}

}  // namespace nilpotent::fixtures
