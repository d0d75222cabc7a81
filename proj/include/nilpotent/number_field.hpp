#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "nilpotent/matrix.hpp"
#include "nilpotent/polynomial.hpp"
#include "nilpotent/rational.hpp"
#include "nilpotent/roots.hpp"

namespace nilpotent {

/// Q[x]/(f) for a monic integer polynomial f, with a field automorphism
/// sigma given by x -> g(x). Only the shape is checked here; galois_check
/// verifies irreducibility, the automorphism property and the order.
class NumberField {
 public:
  NumberField(RatPolynomial min_poly, RatPolynomial sigma)
      : f_(std::move(min_poly)), g_(std::move(sigma)) {
    if (f_.degree() < 1 || !(f_.leading() == Rational(1)) || !has_integer_coefficients(f_)) {
      throw std::invalid_argument("NumberField: minimal polynomial must be monic with integer coefficients");
    }
    g_ = g_ % f_;
  }

  [[nodiscard]] const RatPolynomial& min_poly() const { return f_; }
  [[nodiscard]] const RatPolynomial& sigma_poly() const { return g_; }
  [[nodiscard]] std::size_t degree() const { return static_cast<std::size_t>(f_.degree()); }

  friend bool operator==(const NumberField& a, const NumberField& b) { return a.f_ == b.f_ && a.g_ == b.g_; }

 private:
  RatPolynomial f_;
  RatPolynomial g_;
};

using NumberFieldPtr = std::shared_ptr<const NumberField>;

inline NumberFieldPtr make_field(RatPolynomial min_poly, RatPolynomial sigma) {
  return std::make_shared<const NumberField>(std::move(min_poly), std::move(sigma));
}

/// Element of a number field, stored as its reduced representative of
/// degree < deg f. An element without a field is a rational constant; it
/// adopts the field of the other operand in mixed arithmetic, which lets
/// the generic matrix and polynomial code build constants from int and
/// Rational.
class NumberFieldElement {
 public:
  NumberFieldElement() = default;
  template <class T, std::enable_if_t<std::is_integral_v<T>, int> = 0>
  NumberFieldElement(T value) : rep_(RatPolynomial::constant(Rational(value))) {}  // NOLINT(implicit)
  NumberFieldElement(const Rational& value) : rep_(RatPolynomial::constant(value)) {}  // NOLINT(implicit)
  NumberFieldElement(NumberFieldPtr field, const RatPolynomial& rep) : field_(std::move(field)), rep_(rep) {
    if (!field_) throw std::invalid_argument("NumberFieldElement: null field");
    rep_ = rep_ % field_->min_poly();
  }

  /// The class of x.
  static NumberFieldElement generator(NumberFieldPtr field) { return NumberFieldElement(std::move(field), RatPolynomial::x()); }

  /// sum_i coordinates[i] x^i
  static NumberFieldElement from_coordinates(NumberFieldPtr field, const std::vector<Rational>& coordinates) {
    return NumberFieldElement(std::move(field), RatPolynomial(coordinates));
  }

  [[nodiscard]] const NumberFieldPtr& field() const { return field_; }
  [[nodiscard]] const RatPolynomial& rep() const { return rep_; }
  [[nodiscard]] bool is_zero() const { return rep_.is_zero(); }
  [[nodiscard]] bool is_rational() const { return rep_.degree() <= 0; }
  [[nodiscard]] Rational rational_value() const {
    if (!is_rational()) throw std::domain_error("NumberFieldElement: not rational");
    return rep_.coefficient(0);
  }

  /// Power-basis coordinates, padded to the field degree.
  [[nodiscard]] std::vector<Rational> coordinates() const {
    const std::size_t n = field_ ? field_->degree() : 1;
    std::vector<Rational> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = rep_.coefficient(i);
    return out;
  }

  NumberFieldElement& operator+=(const NumberFieldElement& o) {
    adopt(o);
    rep_ += o.rep_;
    return *this;
  }
  NumberFieldElement& operator-=(const NumberFieldElement& o) {
    adopt(o);
    rep_ -= o.rep_;
    return *this;
  }
  NumberFieldElement& operator*=(const NumberFieldElement& o) {
    adopt(o);
    rep_ = rep_ * o.rep_;
    if (field_) rep_ = rep_ % field_->min_poly();
    return *this;
  }
  NumberFieldElement& operator/=(const NumberFieldElement& o) {
    adopt(o);
    return *this *= o.with_field(field_).inverse();
  }

  friend NumberFieldElement operator+(NumberFieldElement a, const NumberFieldElement& b) { return a += b; }
  friend NumberFieldElement operator-(NumberFieldElement a, const NumberFieldElement& b) { return a -= b; }
  friend NumberFieldElement operator*(NumberFieldElement a, const NumberFieldElement& b) { return a *= b; }
  friend NumberFieldElement operator/(NumberFieldElement a, const NumberFieldElement& b) { return a /= b; }
  friend NumberFieldElement operator-(NumberFieldElement a) {
    a.rep_ *= Rational(-1);
    return a;
  }

  friend bool operator==(const NumberFieldElement& a, const NumberFieldElement& b) {
    if (a.field_ && b.field_ && a.field_ != b.field_ && !(*a.field_ == *b.field_)) return false;
    return a.rep_ == b.rep_;
  }

  /// Inverse via the extended Euclidean algorithm against f.
  [[nodiscard]] NumberFieldElement inverse() const {
    if (is_zero()) throw std::domain_error("NumberFieldElement: division by zero");
    if (!field_) return NumberFieldElement(rep_.coefficient(0).inverse());
    auto [g, s, t] = extended_gcd(rep_, field_->min_poly());
    if (g.degree() != 0) throw std::domain_error("NumberFieldElement: element is a zero divisor (f is reducible)");
    return NumberFieldElement(field_, s);
  }

  [[nodiscard]] NumberFieldElement pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    NumberFieldElement result = with_field(field_, Rational(1));
    NumberFieldElement base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  /// sigma^k applied to this element, k >= 0.
  [[nodiscard]] NumberFieldElement sigma(std::size_t k = 1) const {
    if (!field_) return *this;
    RatPolynomial r = rep_;
    for (std::size_t i = 0; i < k; ++i) r = r.compose(field_->sigma_poly()) % field_->min_poly();
    return NumberFieldElement(field_, r);
  }

  /// sigma^{-1}, assuming sigma generates a cyclic Galois group of order
  /// deg f (so sigma^{-1} = sigma^{deg f - 1}).
  [[nodiscard]] NumberFieldElement sigma_inverse() const {
    if (!field_) return *this;
    return sigma(field_->degree() - 1);
  }

  /// Matrix of y -> this * y in the power basis (columns are images).
  [[nodiscard]] RatMatrix multiplication_matrix() const {
    if (!field_) throw std::domain_error("multiplication_matrix: element has no field");
    const std::size_t n = field_->degree();
    RatMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      auto col = (*this * NumberFieldElement(field_, RatPolynomial::monomial(Rational(1), j))).coordinates();
      for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
  }

  /// N(a) = det of multiplication by a = product of the conjugates.
  [[nodiscard]] Rational norm() const {
    if (!field_) return rep_.coefficient(0);
    return determinant(multiplication_matrix());
  }

  /// Trace of multiplication by a.
  [[nodiscard]] Rational trace() const {
    const RatMatrix m = multiplication_matrix();
    Rational t;
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
  }

  /// Monic minimal polynomial over Q: the squarefree part of the
  /// characteristic polynomial of multiplication by a (which is a power of
  /// the minimal polynomial).
  [[nodiscard]] RatPolynomial minimal_polynomial() const {
    if (!field_) return RatPolynomial{-rep_.coefficient(0), Rational(1)};
    return squarefree_part(charpoly(multiplication_matrix()));
  }

  [[nodiscard]] std::string str() const { return rep_.is_zero() ? "0" : rep_.str("t"); }

 private:
  void adopt(const NumberFieldElement& o) {
    if (!o.field_) return;
    if (!field_) {
      field_ = o.field_;
      return;
    }
    if (field_ != o.field_ && !(*field_ == *o.field_)) throw std::invalid_argument("NumberFieldElement: field mismatch");
  }

  [[nodiscard]] NumberFieldElement with_field(const NumberFieldPtr& f) const {
    if (!f || field_) return *this;
    return NumberFieldElement(f, rep_);
  }
  [[nodiscard]] NumberFieldElement with_field(const NumberFieldPtr& f, const Rational& c) const {
    if (!f) return NumberFieldElement(c);
    return NumberFieldElement(f, RatPolynomial::constant(c));
  }

  NumberFieldPtr field_;
  RatPolynomial rep_;
};

inline bool is_zero(const NumberFieldElement& a) { return a.is_zero(); }
inline std::string to_string(const NumberFieldElement& a) { return a.str(); }
inline std::ostream& operator<<(std::ostream& os, const NumberFieldElement& a) { return os << a.str(); }

/// Conjugates mu_i = sigma^{i-1}(mu), i = 1..deg f.
inline std::vector<NumberFieldElement> conjugates(const NumberFieldElement& mu) {
  std::vector<NumberFieldElement> out{mu};
  const std::size_t n = mu.field() ? mu.field()->degree() : 1;
  for (std::size_t i = 1; i < n; ++i) out.push_back(out.back().sigma());
  return out;
}

namespace detail {

inline bool is_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

/// A monic integer quartic splits over Q into two quadratics iff it splits
/// into monic integer quadratics (Gauss). Solve (x^2+px+q)(x^2+rx+s) for
/// each divisor q of the constant term.
inline bool has_quadratic_factor(const RatPolynomial& f) {
  const Integer a = f.coefficient(3).numerator();
  const Integer b = f.coefficient(2).numerator();
  const Integer c = f.coefficient(1).numerator();
  const Integer d = f.coefficient(0).numerator();
  if (d == 0) return true;
  Integer bound = abs(d);
  for (Integer q = 1; q <= bound; ++q) {
    if (d % q != 0) continue;
    for (const Integer& qq : {Integer(q), Integer(-q)}) {
      const Integer s = d / qq;
      if (s != qq) {
        const Integer num = c - qq * a;
        const Integer den = s - qq;
        if (num % den != 0) continue;
        const Integer p = num / den;
        const Integer r = a - p;
        if (qq + s + p * r == b) return true;
      } else {
        if (c != qq * a) continue;
        // p + r = a, p r = b - 2q
        if (is_square(a * a - 4 * (b - 2 * qq))) return true;
      }
    }
  }
  return false;
}

}  // namespace detail

/// Irreducibility over Q of a monic integer polynomial of degree <= 4.
inline bool irreducible_up_to_quartic(const RatPolynomial& f) {
  if (f.degree() < 1) return false;
  if (f.degree() > 4) throw std::invalid_argument("irreducible_up_to_quartic: degree above 4");
  if (f.degree() == 1) return true;
  if (!rational_roots(f).empty()) return false;
  if (f.degree() <= 3) return true;
  return !detail::has_quadratic_factor(f);
}

/// Smallest k >= 1 with sigma^k(x) = x, or nullopt if none up to bound.
inline std::optional<std::size_t> sigma_order(const NumberFieldPtr& field, std::size_t bound = 64) {
  const auto x = NumberFieldElement::generator(field);
  auto y = x;
  for (std::size_t k = 1; k <= bound; ++k) {
    y = y.sigma();
    if (y == x) return k;
  }
  return std::nullopt;
}

struct GaloisReport {
  bool irreducible = false;
  bool sigma_is_automorphism = false;
  std::optional<std::size_t> sigma_order;
  bool cyclic_of_full_order = false;
  std::size_t real_roots = 0;
  bool totally_real = false;
  bool passed = false;
};

/// Verifies that f is irreducible, f(g(x)) = 0 mod f, sigma has order
/// exactly deg f, and all roots of f are real.
inline GaloisReport galois_check(const NumberFieldPtr& field) {
  GaloisReport r;
  const auto& f = field->min_poly();
  r.irreducible = irreducible_up_to_quartic(f);
  r.sigma_is_automorphism = (f.compose(field->sigma_poly()) % f).is_zero();
  if (r.sigma_is_automorphism) r.sigma_order = sigma_order(field, field->degree());
  r.cyclic_of_full_order = r.sigma_order && *r.sigma_order == field->degree();
  r.real_roots = real_root_count(f);
  r.totally_real = r.real_roots == field->degree();
  r.passed = r.irreducible && r.sigma_is_automorphism && r.cyclic_of_full_order && r.totally_real;
  return r;
}

/// Calls visit on every integer vector of length n with max |c_i| = h, in
/// lexicographic order (first coordinate most significant), until visit
/// returns true. Returns whether it stopped early.
inline bool enumerate_height(std::size_t n, long h, const std::function<bool(const std::vector<long>&)>& visit) {
  std::vector<long> c(n, -h);
  while (true) {
    bool at_height = false;
    for (long v : c) at_height = at_height || v == h || v == -h;
    if (at_height && visit(c)) return true;
    std::size_t i = n;
    while (i > 0 && c[i - 1] == h) {
      c[i - 1] = -h;
      --i;
    }
    if (i == 0) return false;
    ++c[i - 1];
  }
}

/// Searches integer polynomials g of degree < deg f, ordered by height and
/// then lexicographically in (g_0, g_1, ...), for one defining a field
/// automorphism x -> g(x) of order exactly deg f.
inline std::optional<RatPolynomial> find_galois_generator(const RatPolynomial& f, long height_bound = 3) {
  const auto n = static_cast<std::size_t>(f.degree());
  std::optional<RatPolynomial> found;
  for (long h = 1; h <= height_bound && !found; ++h) {
    enumerate_height(n, h, [&](const std::vector<long>& c) {
      std::vector<Rational> coeffs(c.begin(), c.end());
      RatPolynomial g(coeffs);
      if (!(f.compose(g) % f).is_zero()) return false;
      auto order = sigma_order(make_field(f, g), n);
      if (!order || *order != n) return false;
      found = g;
      return true;
    });
  }
  return found;
}

struct PisotReport {
  RatPolynomial min_poly;
  bool algebraic_integer = false;
  bool unit = false;
  /// deg of the minimal polynomial equals the field degree, so the field
  /// embeddings send mu to distinct numbers.
  bool generates_field = false;
  /// Number of real embeddings in (1, inf) and in (-1, 1); all roots of the
  /// minimal polynomial are counted by Sturm sequences.
  std::size_t above_one = 0;
  std::size_t inside = 0;
  bool passed = false;
};

/// Exact unit-Pisot test: the minimal polynomial is monic with integer
/// coefficients and constant term +-1, has full degree, exactly one root in
/// (1, inf) and every other root in (-1, 1).
inline PisotReport pisot_unit_check(const NumberFieldElement& mu) {
  PisotReport r;
  r.min_poly = mu.minimal_polynomial();
  const auto& m = r.min_poly;
  r.algebraic_integer = has_integer_coefficients(m);
  r.unit = r.algebraic_integer && m.coefficient(0).abs() == Rational(1);
  const std::size_t n = mu.field() ? mu.field()->degree() : 1;
  r.generates_field = static_cast<std::size_t>(m.degree()) == n;
  const Rational big = cauchy_root_bound(m) + Rational(1);
  r.above_one = real_roots_in_interval(m, Rational(1), big);
  // (-1, 1) = (-1, 1] minus a possible root at 1
  r.inside = real_roots_in_interval(m, Rational(-1), Rational(1)) - (m(Rational(1)).is_zero() ? 1 : 0);
  r.passed = r.unit && r.generates_field && r.above_one == 1 && r.inside + 1 == static_cast<std::size_t>(m.degree());
  return r;
}

/// First element, by height h = 1..height_bound and then lexicographic order
/// of its power-basis integer coordinates, that passes pisot_unit_check.
/// Elements of norm other than +-1 are skipped before the full check.
inline std::optional<NumberFieldElement> find_pisot_unit(const NumberFieldPtr& field, long height_bound) {
  std::optional<NumberFieldElement> found;
  for (long h = 1; h <= height_bound && !found; ++h) {
    enumerate_height(field->degree(), h, [&](const std::vector<long>& c) {
      auto a = NumberFieldElement::from_coordinates(field, std::vector<Rational>(c.begin(), c.end()));
      if (a.norm().abs() != Rational(1)) return false;
      if (!pisot_unit_check(a).passed) return false;
      found = a;
      return true;
    });
  }
  return found;
}

/// mu, or mu^2 when N(mu) = -1, so that the conjugates multiply to 1.
inline std::pair<NumberFieldElement, bool> normalize_norm(const NumberFieldElement& mu) {
  const Rational n = mu.norm();
  if (n == Rational(1)) return {mu, false};
  if (n == Rational(-1)) return {mu * mu, true};
  throw std::domain_error("normalize_norm: element is not a unit");
}

struct FullRankReport {
  bool passed = true;
  std::size_t checked = 0;
  std::optional<std::vector<long>> offending;
};

/// Checks prod_i mu_i^{d_i} != +-1 for every d with sum |d_i| <= max_len
/// and not all d_i equal, where mu_i = sigma^{i-1}(mu). Equality with +-1 is
/// tested exactly in the field.
inline FullRankReport full_rank_check(const NumberFieldElement& mu, long max_len = 6) {
  const auto mus = conjugates(mu);
  const std::size_t n = mus.size();
  // powers[i][e + max_len] = mu_i^e
  std::vector<std::vector<NumberFieldElement>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (long e = -max_len; e <= max_len; ++e) powers[i].push_back(mus[i].pow(e));
  }
  const NumberFieldElement one(mu.field(), RatPolynomial::constant(Rational(1)));
  FullRankReport r;
  std::vector<long> d(n, -max_len);
  while (true) {
    long len = 0;
    bool all_equal = true;
    for (std::size_t i = 0; i < n; ++i) {
      len += d[i] < 0 ? -d[i] : d[i];
      all_equal = all_equal && d[i] == d[0];
    }
    if (len <= max_len && !all_equal) {
      ++r.checked;
      NumberFieldElement p = one;
      for (std::size_t i = 0; i < n; ++i) p *= powers[i][static_cast<std::size_t>(d[i] + max_len)];
      if (p == one || p == -one) {
        r.passed = false;
        r.offending = d;
        return r;
      }
    }
    std::size_t i = n;
    while (i > 0 && d[i - 1] == max_len) {
      d[i - 1] = -max_len;
      --i;
    }
    if (i == 0) break;
    ++d[i - 1];
  }
  return r;
}

}  // namespace nilpotent
