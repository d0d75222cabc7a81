#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nilpotent/rational.hpp"
#include "nilpotent/sparse.hpp"

namespace nilpotent {

/// Univariate polynomial over a field S, coefficients lowest degree first.
/// The zero polynomial has no coefficients; otherwise the leading
/// coefficient is nonzero.
template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<S> coefficients) : c_(std::move(coefficients)) { trim(); }
  Polynomial(std::initializer_list<S> coefficients) : c_(coefficients) { trim(); }

  static Polynomial constant(S value) { return Polynomial(std::vector<S>{std::move(value)}); }
  static Polynomial x() { return Polynomial(std::vector<S>{S(0), S(1)}); }
  /// c * x^k
  static Polynomial monomial(S c, std::size_t k) {
    std::vector<S> out(k + 1, S(0));
    out[k] = std::move(c);
    return Polynomial(std::move(out));
  }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<S>& coefficients() const { return c_; }
  [[nodiscard]] S coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : S(0); }
  [[nodiscard]] const S& leading() const {
    if (c_.empty()) throw std::domain_error("Polynomial: leading coefficient of zero");
    return c_.back();
  }

  template <class T>
  [[nodiscard]] T evaluate(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }
  [[nodiscard]] S operator()(const S& x) const { return evaluate<S>(x); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), S(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const S& s) {
    if (scalar_zero(s)) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= S(-1); }
  friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
  friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> out(a.c_.size() + b.c_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (scalar_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<S> rem = c_;
    std::vector<S> quo(c_.size() - d.c_.size() + 1, S(0));
    const S lead_inv = S(1) / d.leading();
    const std::size_t dn = d.c_.size();
    for (std::size_t k = quo.size(); k-- > 0;) {
      S coeff = rem[k + dn - 1] * lead_inv;
      if (scalar_zero(coeff)) continue;
      for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= coeff * d.c_[j];
      quo[k] = std::move(coeff);
    }
    rem.resize(dn - 1);
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  /// Division that must leave no remainder.
  [[nodiscard]] Polynomial exact_div(const Polynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::logic_error("Polynomial::exact_div: nonzero remainder");
    return q;
  }

  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) { return a.divmod(b).second; }

  [[nodiscard]] Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * (S(1) / leading());
  }

  [[nodiscard]] Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<S> out(c_.size() - 1, S(0));
    for (std::size_t k = 1; k < c_.size(); ++k) out[k - 1] = c_[k] * S(static_cast<long>(k));
    return Polynomial(std::move(out));
  }

  /// x^n p(1/x) where n = deg p.
  [[nodiscard]] Polynomial reversed() const {
    return Polynomial(std::vector<S>(c_.rbegin(), c_.rend()));
  }

  /// p(q(x))
  [[nodiscard]] Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  /// p(s * x)
  [[nodiscard]] Polynomial scale_argument(const S& s) const {
    std::vector<S> out = c_;
    S power(1);
    for (auto& c : out) {
      c *= power;
      power *= s;
    }
    return Polynomial(std::move(out));
  }

  /// Largest k with x^k | p, for nonzero p.
  [[nodiscard]] std::size_t x_valuation() const {
    std::size_t k = 0;
    while (k < c_.size() && scalar_zero(c_[k])) ++k;
    return k;
  }

  [[nodiscard]] Polynomial shift_down(std::size_t k) const {
    if (k >= c_.size()) return {};
    return Polynomial(std::vector<S>(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end()));
  }

  [[nodiscard]] std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (scalar_zero(c_[k])) continue;
      std::string coeff = to_string(c_[k]);
      if (!out.empty()) out += " + ";
      if (k == 0) {
        out += coeff;
      } else {
        if (coeff != "1") out += (coeff.find_first_of("+ ") != std::string::npos ? "(" + coeff + ")" : coeff) + "*";
        out += var;
        if (k > 1) out += "^" + std::to_string(k);
      }
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && scalar_zero(c_.back())) c_.pop_back();
  }

  std::vector<S> c_;
};

using RatPolynomial = Polynomial<Rational>;

/// Monic gcd; gcd(0, 0) = 0.
template <class S>
Polynomial<S> gcd(Polynomial<S> a, Polynomial<S> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class S>
std::tuple<Polynomial<S>, Polynomial<S>, Polynomial<S>> extended_gcd(Polynomial<S> a, Polynomial<S> b) {
  Polynomial<S> s0 = Polynomial<S>::constant(S(1)), s1;
  Polynomial<S> t0, t1 = Polynomial<S>::constant(S(1));
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    a = std::move(b);
    b = std::move(r);
    auto s2 = s0 - q * s1;
    auto t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (a.is_zero()) return {a, s0, t0};
  const S inv = S(1) / a.leading();
  return {a * inv, s0 * inv, t0 * inv};
}

/// Squarefree part p / gcd(p, p'), monic.
template <class S>
Polynomial<S> squarefree_part(const Polynomial<S>& p) {
  if (p.degree() <= 0) return p.monic();
  return p.exact_div(gcd(p, p.derivative())).monic();
}

/// Yun's algorithm: p = c * prod_k f_k^k with f_k monic, squarefree, pairwise
/// coprime. Element k-1 of the result is f_k (possibly constant 1).
template <class S>
std::vector<Polynomial<S>> squarefree_decomposition(const Polynomial<S>& p) {
  if (p.is_zero()) throw std::domain_error("squarefree_decomposition: zero polynomial");
  std::vector<Polynomial<S>> out;
  if (p.degree() == 0) return out;
  auto a = p.monic();
  auto b = a.derivative();
  auto c = gcd(a, b);
  auto w = a.exact_div(c);
  auto y = b.exact_div(c);
  auto z = y - w.derivative();
  while (w.degree() > 0) {
    auto f = gcd(w, z);
    out.push_back(f);
    w = w.exact_div(f);
    y = z.exact_div(f);
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

/// Integer-coefficient primitive associate of a rational polynomial with
/// positive leading coefficient.
inline RatPolynomial primitive_part(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  Integer lcm_den = 1;
  for (const auto& c : p.coefficients()) {
    Integer d = c.denominator();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
  }
  Integer content = 0;
  std::vector<Integer> ints;
  ints.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    Integer v = c.numerator() * (lcm_den / c.denominator());
    ints.push_back(v);
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  if (p.leading().sign() < 0) content = -content;
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (const auto& v : ints) out.emplace_back(Integer(v / content));
  return RatPolynomial(std::move(out));
}

inline bool has_integer_coefficients(const RatPolynomial& p) {
  for (const auto& c : p.coefficients()) {
    if (!c.is_integer()) return false;
  }
  return true;
}

}  // namespace nilpotent
