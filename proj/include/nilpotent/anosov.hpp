#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nilpotent/automorphism.hpp"
#include "nilpotent/example_tower.hpp"
#include "nilpotent/matrix.hpp"
#include "nilpotent/number_field.hpp"
#include "nilpotent/polynomial.hpp"

namespace nilpotent {

using FieldVector = SparseVector<NumberFieldElement>;
using FieldMatrix = SparseMatrix<NumberFieldElement>;

/// Exponent vector of a basis vector of n. The two classes carrying J's
/// identification have a second representative: the weight of the degree 2
/// word they are identified with, which differs by (1,1,1,1).
struct WeightEntry {
  Multidegree weight;
  std::optional<Multidegree> identified;
};

struct AnosovCertificate {
  NumberFieldPtr field;
  NumberFieldElement mu;
  /// mu had norm -1 and was replaced by its square.
  bool squared = false;
  std::array<NumberFieldElement, 4> mus;
  std::vector<WeightEntry> weights;
  bool hyperbolic = false;
  std::optional<Multidegree> offending;
  bool equivariant = false;
};

class AnosovPreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weights of the basis of n, inherited from the Hall words of the section.
inline std::vector<WeightEntry> weight_decomposition(const ExampleTower& t) {
  std::vector<WeightEntry> out;
  out.reserve(t.n.section.size());
  for (std::size_t k = 0; k < t.n.section.size(); ++k) out.push_back({t.n_multidegree(k), std::nullopt});
  // each spanning row of J joins one kept class to one pivot class
  const auto& j = t.n.ideal.space();
  for (std::size_t r = 0; r < j.dim(); ++r) {
    const std::size_t pivot = j.pivots()[r];
    for (const auto& [i, c] : j.rows()[r]) {
      if (i == pivot) continue;
      const std::size_t k = t.n.position[i];
      if (k != Quotient::none) out[k].identified = t.free->multidegree(t.ntilde.section[pivot]);
    }
  }
  return out;
}

struct HyperbolicCheck {
  bool passed = true;
  std::optional<Multidegree> offending;
};

/// Every weight monomial prod mu_i^{d_i} differs from +-1, tested exactly;
/// an identified representative must give the same monomial.
inline HyperbolicCheck check_hyperbolic(const AnosovCertificate& cert) {
  HyperbolicCheck out;
  const NumberFieldElement one(cert.field, RatPolynomial::constant(Rational(1)));
  std::map<Multidegree, NumberFieldElement> cache;
  auto monomial = [&](const Multidegree& d) -> const NumberFieldElement& {
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, weight_monomial(cert.mus, d)).first;
    return it->second;
  };
  for (const auto& w : cert.weights) {
    const auto& m = monomial(w.weight);
    if (m == one || m == -one) return {false, w.weight};
    if (w.identified && monomial(*w.identified) != m) return {false, *w.identified};
  }
  return out;
}

/// alpha-bar phi alpha-bar^{-1} = phi^{sigma^{-1}}, entrywise.
inline bool check_equivariance(const ExampleTower& t, const Automorphism<NumberFieldElement>& phi) {
  auto lift = [](const Rational& c) { return NumberFieldElement(c); };
  const FieldMatrix a = t.alpha_bar.matrix().map(lift);
  const FieldMatrix a_inv = t.alpha_bar.pow(3).matrix().map(lift);
  if (!(a * a_inv).is_identity()) return false;
  const FieldMatrix twisted = phi.matrix().map([](const NumberFieldElement& c) { return c.sigma_inverse(); });
  return a * phi.matrix() * a_inv == twisted;
}

/// phi: X_i -> mu_i X_i on n, with mu_i = sigma^{i-1}(mu) after replacing mu
/// by mu^2 if its norm is -1.
inline std::pair<Automorphism<NumberFieldElement>, AnosovCertificate> build_phi(const ExampleTower& t, const NumberFieldPtr& field,
                                                                                 const NumberFieldElement& mu) {
  if (!mu.field() || !(*mu.field() == *field)) throw std::invalid_argument("build_phi: mu is not an element of the given field");
  if (field->degree() != 4) throw AnosovPreconditionFailed("build_phi: the field must have degree 4");
  if (!galois_check(field).passed) throw AnosovPreconditionFailed("build_phi: sigma does not generate a cyclic Galois group of a totally real field");
  if (!pisot_unit_check(mu).passed) throw AnosovPreconditionFailed("build_phi: mu is not a Pisot unit of full degree");
  if (!full_rank_check(mu, 6).passed) throw AnosovPreconditionFailed("build_phi: mu fails the full rank condition up to length 6");
  AnosovCertificate cert;
  cert.field = field;
  std::tie(cert.mu, cert.squared) = normalize_norm(mu);
  const auto c = conjugates(cert.mu);
  std::copy(c.begin(), c.end(), cert.mus.begin());
  auto phi = diagonal_automorphism_on_n(t, cert.mus);
  cert.weights = weight_decomposition(t);
  auto h = check_hyperbolic(cert);
  cert.hyperbolic = h.passed;
  cert.offending = h.offending;
  cert.equivariant = check_equivariance(t, phi);
  return {std::move(phi), std::move(cert)};
}

namespace detail {

inline Polynomial<NumberFieldElement> product_tree(std::vector<Polynomial<NumberFieldElement>> ps) {
  if (ps.empty()) return Polynomial<NumberFieldElement>::constant(NumberFieldElement(1));
  while (ps.size() > 1) {
    std::vector<Polynomial<NumberFieldElement>> next;
    for (std::size_t i = 0; i + 1 < ps.size(); i += 2) next.push_back(ps[i] * ps[i + 1]);
    if (ps.size() % 2 == 1) next.push_back(ps.back());
    ps = std::move(next);
  }
  return ps.front();
}

}  // namespace detail

/// charpoly(phi) = prod (x - prod mu_i^{d_i}) over the weight multiset, as an
/// exact identity in E[x].
inline bool charpoly_matches_weights(const Automorphism<NumberFieldElement>& phi, const AnosovCertificate& cert) {
  const auto lhs = detail::product_tree(charpoly_factors(phi.matrix()));
  std::vector<Polynomial<NumberFieldElement>> linear;
  linear.reserve(cert.weights.size());
  const NumberFieldElement one(cert.field, RatPolynomial::constant(Rational(1)));
  for (const auto& w : cert.weights) linear.push_back(Polynomial<NumberFieldElement>({-weight_monomial(cert.mus, w.weight), one}));
  return lhs == detail::product_tree(std::move(linear));
}

}  // namespace nilpotent
