#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilpotent/polynomial.hpp"
#include "nilpotent/rational.hpp"

namespace nilpotent {

/// Sturm chain p0 = p, p1 = p', p_{k+1} = -(p_{k-1} mod p_k).
/// Integer associate scaled by a positive factor only; Sturm sign patterns
/// survive this, unlike primitive_part's sign normalization.
inline RatPolynomial positive_rescale(const RatPolynomial& p) {
  if (p.is_zero()) return p;
  auto q = primitive_part(p);
  return p.leading().sign() < 0 ? -q : q;
}

inline std::vector<RatPolynomial> sturm_chain(const RatPolynomial& p) {
  std::vector<RatPolynomial> chain{positive_rescale(p)};
  auto d = positive_rescale(chain.front().derivative());
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    auto r = chain[chain.size() - 2] % chain.back();
    if (r.is_zero()) break;
    chain.push_back(positive_rescale(-r));
  }
  return chain;
}

/// Sign variations of the chain at x, zeros skipped.
inline std::size_t sign_variations(const std::vector<RatPolynomial>& chain, const Rational& x) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Sign variations at +infinity (sign = true) or -infinity.
inline std::size_t sign_variations_at_infinity(const std::vector<RatPolynomial>& chain, bool positive) {
  std::size_t changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = q.leading().sign();
    if (!positive && q.degree() % 2 == 1) s = -s;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots in (lo, hi]. The chain is built on the
/// squarefree part; with zeros skipped, V(a) - V(b) counts roots in (a, b]
/// even when a or b is itself a root.
inline std::size_t real_roots_in_interval(const RatPolynomial& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::domain_error("real_roots_in_interval: zero polynomial");
  if (!(lo < hi)) return 0;
  if (p.degree() == 0) return 0;
  const auto chain = sturm_chain(squarefree_part(p));
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

/// Number of distinct real roots.
inline std::size_t real_root_count(const RatPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("real_root_count: zero polynomial");
  if (p.degree() == 0) return 0;
  const auto chain = sturm_chain(squarefree_part(p));
  return sign_variations_at_infinity(chain, false) - sign_variations_at_infinity(chain, true);
}

/// Cauchy bound: every complex root has modulus < 1 + max |a_i / a_n|.
inline Rational cauchy_root_bound(const RatPolynomial& p) {
  if (p.degree() < 1) return Rational(1);
  Rational best(0);
  for (long i = 0; i < p.degree(); ++i) {
    auto r = (p.coefficient(static_cast<std::size_t>(i)) / p.leading()).abs();
    if (best < r) best = r;
  }
  return best + Rational(1);
}

/// Half-open interval (lo, hi] containing exactly one real root.
struct RootInterval {
  Rational lo;
  Rational hi;
};

/// Isolates the distinct real roots of p, in increasing order.
inline std::vector<RootInterval> isolate_real_roots(const RatPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
  std::vector<RootInterval> out;
  if (p.degree() < 1) return out;
  const auto sf = squarefree_part(p);
  const auto chain = sturm_chain(sf);
  const Rational bound = cauchy_root_bound(sf);
  std::vector<RootInterval> work{{-bound, bound}};
  while (!work.empty()) {
    auto iv = work.back();
    work.pop_back();
    const std::size_t n = sign_variations(chain, iv.lo) - sign_variations(chain, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    const Rational mid = (iv.lo + iv.hi) / Rational(2);
    work.push_back({mid, iv.hi});
    work.push_back({iv.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

/// Halves an isolating interval of a squarefree p until it is no wider
/// than width.
inline RootInterval refine_root(const RatPolynomial& p, RootInterval iv, const Rational& width) {
  const auto chain = sturm_chain(squarefree_part(p));
  while (width < iv.hi - iv.lo) {
    const Rational mid = (iv.lo + iv.hi) / Rational(2);
    if (sign_variations(chain, iv.lo) - sign_variations(chain, mid) == 1) {
      iv.hi = mid;
    } else {
      iv.lo = mid;
    }
  }
  return iv;
}

/// A rational root together with its multiplicity.
struct RationalRoot {
  Rational value;
  std::size_t multiplicity = 0;
};

/// All rational roots of p with multiplicities. For primitive integer q with
/// leading coefficient L, any rational root r has L*r integral, so each real
/// root is refined below width 1/L and the integer candidates tested exactly.
inline std::vector<RationalRoot> rational_roots(const RatPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("rational_roots: zero polynomial");
  std::vector<RationalRoot> out;
  if (p.degree() < 1) return out;
  const auto q = primitive_part(squarefree_part(p));
  const Rational lead = q.leading();
  const Rational width = Rational(1) / (Rational(2) * lead);
  for (auto iv : isolate_real_roots(q)) {
    iv = refine_root(q, iv, width);
    const Integer lo = floor(iv.lo * lead);
    for (Integer k = lo; k <= lo + 2; ++k) {
      const Rational candidate = Rational(k) / lead;
      if (iv.lo < candidate && candidate <= iv.hi && q(candidate).is_zero()) {
        out.push_back({candidate, 0});
        break;
      }
    }
  }
  for (auto& root : out) {
    auto rest = p;
    const RatPolynomial factor{-root.value, Rational(1)};
    while (true) {
      auto [quo, rem] = rest.divmod(factor);
      if (!rem.is_zero()) break;
      rest = std::move(quo);
      ++root.multiplicity;
    }
  }
  return out;
}

/// Exact partition of the complex roots of a polynomial, with multiplicity,
/// by modulus relative to 1.
struct UnitDiskCount {
  std::size_t inside = 0;
  std::size_t on_circle = 0;
  std::size_t outside = 0;

  friend bool operator==(const UnitDiskCount&, const UnitDiskCount&) = default;
  UnitDiskCount& operator+=(const UnitDiskCount& o) {
    inside += o.inside;
    on_circle += o.on_circle;
    outside += o.outside;
    return *this;
  }
  [[nodiscard]] std::size_t total() const { return inside + on_circle + outside; }
};

namespace detail {

/// Schur-Cohn count of roots strictly inside the unit disk, for p without
/// roots on the unit circle. Returns nullopt when a step has |a_0| = |a_n|
/// (the recursion is singular there).
inline std::optional<std::size_t> schur_cohn_inside(RatPolynomial p) {
  // Each frame records how N(p) relates to N of the next polynomial:
  // (false, k) means N = k + N(next), (true, n) means N = n - N(next).
  std::vector<std::pair<bool, std::size_t>> frames;
  while (p.degree() > 0) {
    const std::size_t v = p.x_valuation();
    if (v > 0) {
      frames.emplace_back(false, v);
      p = p.shift_down(v);
      continue;
    }
    const Rational a0 = p.coefficient(0);
    const Rational an = p.leading();
    const Rational delta = a0 * a0 - an * an;
    if (delta.is_zero()) return std::nullopt;
    const auto n = static_cast<std::size_t>(p.degree());
    // Rouche on the circle: T p has as many inside roots as p when
    // |a0| > |an|, and as many as the reversal of p otherwise.
    auto t = p * a0 - p.reversed() * an;
    frames.emplace_back(delta.sign() < 0, delta.sign() < 0 ? n : 0);
    p = primitive_part(t);
  }
  std::size_t count = 0;
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    count = it->first ? it->second - count : count + it->second;
  }
  return count;
}

/// Inside count for p without roots on the circle; singular Schur-Cohn steps
/// are avoided by counting roots of modulus below rho_minus and below
/// rho_plus for rho bracketing 1 ever more tightly. Both counts agree once
/// the annulus between them holds no roots, and then equal the count for 1.
inline std::size_t inside_count_without_circle_roots(const RatPolynomial& p) {
  if (auto direct = schur_cohn_inside(p)) return *direct;
  Rational eps(1, 2);
  for (int attempt = 0; attempt < 256; ++attempt, eps /= Rational(2)) {
    // Slightly perturbed radii; a singular step at one radius is retried
    // at the next.
    const Rational up = Rational(1) + eps;
    const Rational down = Rational(1) - eps * Rational(2, 3);
    auto outer = schur_cohn_inside(p.scale_argument(up));
    auto inner = schur_cohn_inside(p.scale_argument(down));
    if (outer && inner && *outer == *inner) return *outer;
  }
  throw std::logic_error("unit_disk_root_count: scaling fallback did not converge");
}

/// Chebyshev-type polynomials D_j with x^j + x^-j = D_j(x + 1/x).
inline std::vector<RatPolynomial> dickson_sequence(std::size_t m) {
  std::vector<RatPolynomial> d;
  d.push_back(RatPolynomial::constant(Rational(2)));
  if (m >= 1) d.push_back(RatPolynomial::x());
  for (std::size_t j = 2; j <= m; ++j) d.push_back(RatPolynomial::x() * d[j - 1] - d[j - 2]);
  return d;
}

/// Partition for a squarefree polynomial with nonzero constant term.
inline UnitDiskCount unit_disk_squarefree(const RatPolynomial& q) {
  UnitDiskCount out;
  if (q.degree() <= 0) return out;
  // Self-reciprocal part: roots z whose inverse 1/z is also a root. It holds
  // every circle root; its other roots pair up as (z, 1/z), one inside and
  // one outside.
  auto h = gcd(q, q.reversed());
  auto rest = q.exact_div(h);
  std::size_t circle = 0;
  for (const Rational& s : {Rational(1), Rational(-1)}) {
    const RatPolynomial lin{-s, Rational(1)};
    auto [quo, rem] = h.divmod(lin);
    if (rem.is_zero()) {
      ++circle;
      h = quo;
    }
  }
  const auto hdeg = static_cast<std::size_t>(h.degree());
  if (hdeg > 0) {
    // h is palindromic of even degree 2m: x^-m h(x) = T(x + 1/x).
    const std::size_t m = hdeg / 2;
    const auto d = dickson_sequence(m);
    RatPolynomial t = RatPolynomial::constant(h.coefficient(m));
    for (std::size_t j = 1; j <= m; ++j) t += d[j] * h.coefficient(m + j);
    // Each root y of T in (-2, 2) gives a conjugate pair on the circle.
    const std::size_t in_range = real_roots_in_interval(t, Rational(-2), Rational(2));
    circle += 2 * in_range;
    const std::size_t off = hdeg - 2 * in_range;
    out.inside += off / 2;
    out.outside += off / 2;
  }
  out.on_circle += circle;
  const std::size_t rest_inside = inside_count_without_circle_roots(rest);
  out.inside += rest_inside;
  out.outside += static_cast<std::size_t>(rest.degree()) - rest_inside;
  return out;
}

}  // namespace detail

/// Exact count of roots inside, on, and outside the unit circle, with
/// multiplicity.
inline UnitDiskCount unit_disk_root_count(const RatPolynomial& p) {
  if (p.is_zero()) throw std::domain_error("unit_disk_root_count: zero polynomial");
  UnitDiskCount out;
  if (p.degree() <= 0) return out;
  const std::size_t v = p.x_valuation();
  out.inside += v;
  const auto core = p.shift_down(v);
  const auto parts = squarefree_decomposition(core);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto c = detail::unit_disk_squarefree(parts[k]);
    out.inside += (k + 1) * c.inside;
    out.on_circle += (k + 1) * c.on_circle;
    out.outside += (k + 1) * c.outside;
  }
  return out;
}

}  // namespace nilpotent
