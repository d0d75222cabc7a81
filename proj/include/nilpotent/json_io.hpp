#pragma once

#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilpotent/anosov.hpp"
#include "nilpotent/automorphism.hpp"
#include "nilpotent/example_tower.hpp"
#include "nilpotent/grading.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/number_field.hpp"
#include "nilpotent/sparse.hpp"
#include "nilpotent/subspace.hpp"

namespace nilpotent::json_io {

using nlohmann::json;

/// Malformed or inconsistent JSON input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline json rational(const Rational& q) { return q.str(); }

/// Accepts "p/q", "p" and JSON integers.
inline Rational rational(const json& j) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw InputError("bad rational " + j.dump() + ": " + e.what());
  }
  throw InputError("bad rational " + j.dump());
}

inline std::vector<Rational> rational_array(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational(x));
  return out;
}

inline json dense(const SparseVector<Rational>& v, std::size_t dim) {
  json row = json::array();
  for (const auto& x : v.to_dense(dim)) row.push_back(rational(x));
  return row;
}

inline json polynomial(const RatPolynomial& p) {
  json out = json::array();
  for (const auto& c : p.coefficients()) out.push_back(rational(c));
  return out;
}

inline RatPolynomial polynomial(const json& j) { return RatPolynomial(rational_array(j)); }

/// Arrays of row arrays.
inline json matrix(const SparseMatrix<Rational>& m) {
  json out = json::array();
  for (const auto& row : m.to_rows()) {
    json r = json::array();
    for (const auto& x : row) r.push_back(rational(x));
    out.push_back(std::move(r));
  }
  return out;
}

inline SparseMatrix<Rational> matrix(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a non-empty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j) {
    rows.push_back(rational_array(r));
    if (rows.back().size() != rows.front().size()) throw InputError("matrix rows have different lengths");
  }
  return SparseMatrix<Rational>::from_rows(rows);
}

/// RREF rows.
inline json subspace(const Subspace& s) {
  json out = json::array();
  for (const auto& row : s.rows()) out.push_back(dense(row, s.ambient_dim()));
  return out;
}

inline std::vector<SparseVector<Rational>> rows(const json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("expected an array of rows");
  std::vector<SparseVector<Rational>> out;
  for (const auto& r : j) {
    auto v = rational_array(r);
    if (v.size() != dim) throw InputError("row of length " + std::to_string(v.size()) + " in dimension " + std::to_string(dim));
    out.push_back(SparseVector<Rational>::from_dense(v));
  }
  return out;
}

/// {"dim", "labels", "multidegree", "brackets": [[i, j, [[k, "p/q"], ...]], ...]}
/// with 0-based indices and i < j.
inline json algebra(const LieAlgebra& alg) {
  json out;
  out["dim"] = alg.dim();
  out["labels"] = alg.labels();
  if (alg.has_multidegrees()) out["multidegree"] = alg.multidegrees();
  json brackets = json::array();
  for (const auto& e : alg.brackets()) {
    json value = json::array();
    for (const auto& [k, c] : e.value) value.push_back(json::array({k, rational(c)}));
    brackets.push_back(json::array({e.i, e.j, std::move(value)}));
  }
  out["brackets"] = std::move(brackets);
  return out;
}

inline LieAlgebraPtr algebra(const json& j) {
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<BracketEntry> entries;
    for (const auto& b : j.at("brackets")) {
      if (!b.is_array() || b.size() != 3) throw InputError("bracket entry must be [i, j, [[k, c], ...]]");
      std::vector<SparseVector<Rational>::Entry> terms;
      for (const auto& t : b[2]) {
        if (!t.is_array() || t.size() != 2) throw InputError("bracket term must be [k, c]");
        terms.emplace_back(t[0].get<std::size_t>(), rational(t[1]));
      }
      std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
      entries.push_back({b[0].get<std::size_t>(), b[1].get<std::size_t>(), SparseVector<Rational>::from_entries(std::move(terms))});
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Multidegree> md;
    if (j.contains("multidegree")) md = j.at("multidegree").get<std::vector<Multidegree>>();
    return make_algebra(LieAlgebra(dim, std::move(entries), std::move(labels), std::move(md)));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad algebra: ") + e.what());
  }
}

/// {"weights": [...], "bases": [RREF rows per component]}
inline json grading(const Grading& g) {
  json out;
  out["weights"] = json::array();
  out["bases"] = json::array();
  for (const auto& c : g.components) {
    out["weights"].push_back(c.weight);
    out["bases"].push_back(subspace(c.space));
  }
  return out;
}

inline Grading grading(const json& j, const LieAlgebraPtr& alg) {
  try {
    const auto& w = j.at("weights");
    const auto& b = j.at("bases");
    if (!w.is_array() || !b.is_array() || w.size() != b.size()) throw InputError("grading needs equally long weights and bases");
    Grading g{alg, {}};
    for (std::size_t i = 0; i < w.size(); ++i) {
      g.components.push_back({w[i].get<long>(), Subspace::span(alg->dim(), rows(b[i], alg->dim()))});
    }
    return g;
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad grading: ") + e.what());
  }
}

/// {"min_poly": [ints], "sigma": [ints]}, lowest degree first.
inline json field(const NumberField& f) { return {{"min_poly", polynomial(f.min_poly())}, {"sigma", polynomial(f.sigma_poly())}}; }

inline NumberFieldPtr field(const json& j) {
  try {
    return make_field(polynomial(j.at("min_poly")), polynomial(j.at("sigma")));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("bad field: ") + e.what());
  }
}

/// Power-basis coordinates.
inline json element(const NumberFieldElement& a) {
  json out = json::array();
  const std::size_t n = a.field() ? a.field()->degree() : 1;
  const auto c = a.field() ? a.coordinates() : std::vector<Rational>{a.rational_value()};
  for (std::size_t i = 0; i < n; ++i) out.push_back(rational(i < c.size() ? c[i] : Rational(0)));
  return out;
}

inline NumberFieldElement element(const json& j, const NumberFieldPtr& f) {
  auto c = rational_array(j);
  if (c.size() > f->degree()) throw InputError("element has more coordinates than the field degree");
  return NumberFieldElement::from_coordinates(f, c);
}

inline json spectrum(const SpectrumClass& s) {
  return {{"kind", to_string(s.kind)},
          {"charpoly", polynomial(s.charpoly)},
          {"eigenvalue_one_multiplicity", s.eigenvalue_one_multiplicity},
          {"inside", s.remaining.inside},
          {"on_circle", s.remaining.on_circle},
          {"outside", s.remaining.outside}};
}

inline json claims(const ClaimReport& r) {
  json out = json::array();
  for (const auto& c : r.claims) out.push_back({{"claim", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

inline json certificate(const AnosovCertificate& c) {
  json weights = json::array();
  for (const auto& w : c.weights) {
    json e = {{"weight", w.weight}};
    if (w.identified) e["identified"] = *w.identified;
    weights.push_back(std::move(e));
  }
  json mus = json::array();
  for (const auto& m : c.mus) mus.push_back(element(m));
  json out = {{"field", field(*c.field)},        {"mu", element(c.mu)},           {"squared", c.squared},
              {"conjugates", std::move(mus)},    {"weight_multiset", std::move(weights)},
              {"hyperbolic", c.hyperbolic},      {"equivariant", c.equivariant}};
  if (c.offending) out["offending"] = *c.offending;
  return out;
}

}  // namespace nilpotent::json_io
