#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilpotent/anosov.hpp"
#include "nilpotent/automorphism.hpp"
#include "nilpotent/example_tower.hpp"
#include "nilpotent/fixtures.hpp"
#include "nilpotent/grading.hpp"
#include "nilpotent/json_io.hpp"
#include "nilpotent/lie_algebra.hpp"
#include "nilpotent/number_field.hpp"

namespace nilpotent::cli {

using json_io::json;

/// Exit codes. Classification codes are shared by check-grading and
/// check-automorphism.
namespace exit_code {
constexpr int ok = 0;
constexpr int failed = 1;
constexpr int invalid = 2;
constexpr int nonnegative = 10;
constexpr int partially_expanding = 10;
constexpr int trivial = 11;
constexpr int other = 12;
}  // namespace exit_code

struct Config {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::string out = "-";
};

namespace detail {

/// "builtin:heisenberg", "builtin:free-2-2" or a JSON file.
inline LieAlgebraPtr load_algebra(const std::string& spec) {
  if (spec == "builtin:heisenberg") return fixtures::heisenberg();
  if (spec == "builtin:free-2-2") return fixtures::free_nilpotent(2, 2);
  return json_io::algebra(json_io::load_file(spec));
}

/// "builtin:quartic" or a JSON file.
inline NumberFieldPtr load_field(const std::string& spec) {
  if (spec == "builtin:quartic") return fixtures::quartic_field();
  return json_io::field(json_io::load_file(spec));
}

inline void emit(const Config& cfg, const json& j, std::ostream& out) {
  if (cfg.out == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw json_io::InputError("cannot write " + cfg.out);
  f << j.dump(2) << '\n';
}

inline void write_file(const std::filesystem::path& p, const json& j) {
  std::ofstream f(p);
  if (!f) throw json_io::InputError("cannot write " + p.string());
  f << j.dump() << '\n';
}

inline SparseMatrix<Rational> checked_matrix(const json& j, const LieAlgebra& alg) {
  auto m = json_io::matrix(j);
  if (m.rows() != alg.dim() || m.cols() != alg.dim()) {
    throw json_io::InputError("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", algebra has dimension " +
                              std::to_string(alg.dim()));
  }
  return m;
}

inline json automorphism_failure(const NotAnAutomorphism& e) {
  json j = {{"automorphism", false}, {"invertible", e.check.invertible}, {"error", e.what()}};
  if (e.check.witness) j["witness"] = {e.check.witness->first, e.check.witness->second};
  return j;
}

inline json jacobi(const std::string& name, const JacobiReport& r) {
  json j = {{"algebra", name}, {"passed", r.passed}, {"exhaustive", r.exhaustive}, {"triples", r.triples_checked}, {"nontrivial", r.nontrivial}};
  if (r.violation) j["violation"] = *r.violation;
  return j;
}

inline int free_cmd(const Config& cfg, std::size_t gens, std::size_t cls, std::ostream& out, std::ostream& err) {
  auto alg = fixtures::free_nilpotent(gens, cls);
  emit(cfg, json_io::algebra(*alg), out);
  err << "free nilpotent algebra on " << gens << " generators, class " << cls << ": dimension " << alg->dim() << '\n';
  return exit_code::ok;
}

/// The rows of the ideal file generate the ideal; the quotient is written in
/// the algebra schema with the ideal's RREF rows and the section added.
inline int quotient_cmd(const Config& cfg, const std::string& alg_path, const std::string& ideal_path, std::ostream& out,
                        std::ostream& err) {
  auto alg = load_algebra(alg_path);
  auto gens = json_io::rows(json_io::load_file(ideal_path), alg->dim());
  auto q = quotient(ideal_closure(alg, gens));
  json j = json_io::algebra(*q.algebra);
  j["ideal"] = json_io::subspace(q.ideal.space());
  j["section"] = q.section;
  emit(cfg, j, out);
  err << "quotient by an ideal of dimension " << q.ideal.dim() << ": dimension " << q.algebra->dim() << '\n';
  return exit_code::ok;
}

inline int check_grading_cmd(const Config& cfg, const std::string& alg_path, const std::string& grading_path, std::ostream& out,
                             std::ostream& err) {
  auto alg = load_algebra(alg_path);
  auto g = json_io::grading(json_io::load_file(grading_path), alg);
  try {
    const auto c = verify_and_classify(g);
    emit(cfg, {{"valid", true}, {"class", to_string(c)}}, out);
    err << "grading is " << to_string(c) << '\n';
    switch (c) {
      case GradingClass::positive: return exit_code::ok;
      case GradingClass::nonnegative_nontrivial: return exit_code::nonnegative;
      case GradingClass::trivial: return exit_code::trivial;
      case GradingClass::other: return exit_code::other;
    }
    return exit_code::other;
  } catch (const InvalidGrading& e) {
    json j = {{"valid", false}, {"error", e.what()}};
    if (e.weights) j["weights"] = {e.weights->first, e.weights->second};
    if (!e.witness.empty()) j["witness"] = json_io::dense(e.witness, alg->dim());
    emit(cfg, j, out);
    err << "invalid grading: " << e.what() << '\n';
    return exit_code::invalid;
  }
}

inline int check_automorphism_cmd(const Config& cfg, const std::string& alg_path, const std::string& matrix_path, std::ostream& out,
                                  std::ostream& err) {
  auto alg = load_algebra(alg_path);
  auto m = checked_matrix(json_io::load_file(matrix_path), *alg);
  try {
    Automorphism<Rational> a(alg, m);
    const auto s = classify_spectrum(a);
    json j = json_io::spectrum(s);
    j["automorphism"] = true;
    emit(cfg, j, out);
    err << "automorphism, " << to_string(s.kind) << '\n';
    switch (s.kind) {
      case SpectrumKind::expanding: return exit_code::ok;
      case SpectrumKind::partially_expanding: return exit_code::partially_expanding;
      case SpectrumKind::neither: return exit_code::other;
    }
    return exit_code::other;
  } catch (const NotAnAutomorphism& e) {
    emit(cfg, automorphism_failure(e), out);
    err << e.what() << '\n';
    return exit_code::invalid;
  }
}

inline int grading_from_aut_cmd(const Config& cfg, const std::string& alg_path, const std::string& matrix_path,
                                const std::optional<std::string>& mu, std::ostream& out, std::ostream& err) {
  auto alg = load_algebra(alg_path);
  auto m = checked_matrix(json_io::load_file(matrix_path), *alg);
  std::optional<Rational> mu_value;
  if (mu) mu_value = json_io::rational(json(*mu));
  try {
    Automorphism<Rational> a(alg, m);
    auto g = grading_from_diagonal_automorphism(a, mu_value);
    emit(cfg, json_io::grading(g), out);
    err << "grading with " << g.components.size() << " components\n";
    return exit_code::ok;
  } catch (const NotAnAutomorphism& e) {
    emit(cfg, automorphism_failure(e), out);
    err << e.what() << '\n';
    return exit_code::invalid;
  } catch (const GradingConstructionInapplicable& e) {
    emit(cfg, {{"applicable", false}, {"error", e.what()}}, out);
    err << e.what() << '\n';
    return exit_code::failed;
  }
}

inline int example_build_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.out == "-") throw json_io::InputError("paper-example build needs --out DIR");
  const std::filesystem::path dir(cfg.out);
  std::filesystem::create_directories(dir);
  const auto t = build_example_tower();
  write_file(dir / "l.json", json_io::algebra(*t.free));
  write_file(dir / "ntilde.json", json_io::algebra(*t.ntilde.algebra));
  write_file(dir / "n.json", json_io::algebra(*t.n.algebra));
  write_file(dir / "ideal_I.json", json_io::subspace(t.ntilde.ideal.space()));
  write_file(dir / "ideal_J.json", json_io::subspace(t.n.ideal.space()));
  auto projection = [](const Quotient& q, std::size_t from) {
    std::vector<SparseVector<Rational>> cols;
    for (std::size_t i = 0; i < from; ++i) cols.push_back(q.project(SparseVector<Rational>::unit(i)));
    return SparseMatrix<Rational>(q.algebra->dim(), std::move(cols));
  };
  const auto p_tilde = projection(t.ntilde, t.free->dim());
  const auto p_bar = projection(t.n, t.ntilde.algebra->dim());
  write_file(dir / "p_tilde.json", json_io::matrix(p_tilde));
  write_file(dir / "p_bar.json", json_io::matrix(p_bar));
  write_file(dir / "p.json", json_io::matrix(p_bar * p_tilde));
  write_file(dir / "alpha_bar.json", json_io::matrix(t.alpha_bar.matrix()));
  json j = {{"dir", dir.string()},
            {"dims", {{"l", t.free->dim()}, {"ntilde", t.ntilde.algebra->dim()}, {"n", t.n.algebra->dim()}}},
            {"files", {"l.json", "ntilde.json", "n.json", "ideal_I.json", "ideal_J.json", "p_tilde.json", "p_bar.json", "p.json", "alpha_bar.json"}}};
  out << j.dump(2) << '\n';
  err << "wrote the tower to " << dir.string() << '\n';
  return exit_code::ok;
}

inline int example_verify_cmd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto t = build_example_tower();
  const auto claims = verify_tower_claims(t);
  const auto obstruction = verify_no_partial_expansion_obstruction(t);
  json jac = json::array();
  bool jacobi_ok = true;
  for (const auto& [name, alg] : {std::pair{"l", t.free}, std::pair{"ntilde", t.ntilde.algebra}, std::pair{"n", t.n.algebra}}) {
    const auto r = verify_jacobi(*alg, JacobiMode::sampled, cfg.samples, cfg.seed);
    jacobi_ok = jacobi_ok && r.passed;
    jac.push_back(jacobi(name, r));
  }
  const bool ok = claims.passed() && obstruction.passed() && jacobi_ok;
  json j = {{"passed", ok},
            {"seed", cfg.seed},
            {"samples", cfg.samples},
            {"dims", {{"l", t.free->dim()}, {"ntilde", t.ntilde.algebra->dim()}, {"n", t.n.algebra->dim()}}},
            {"claims", json_io::claims(claims)},
            {"obstruction", json_io::claims(obstruction)},
            {"jacobi", jac}};
  emit(cfg, j, out);
  for (const auto* r : {&claims, &obstruction}) {
    for (const auto& c : r->claims) err << (c.passed ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")") << '\n';
  }
  err << (jacobi_ok ? "PASS" : "FAIL") << " sampled Jacobi on l, ntilde, n\n";
  return ok ? exit_code::ok : exit_code::failed;
}

inline json galois(const GaloisReport& g) {
  return {{"passed", g.passed},
          {"irreducible", g.irreducible},
          {"sigma_is_automorphism", g.sigma_is_automorphism},
          {"sigma_order", g.sigma_order ? json(*g.sigma_order) : json(nullptr)},
          {"real_roots", g.real_roots}};
}

inline json pisot(const PisotReport& p) {
  return {{"passed", p.passed},     {"min_poly", json_io::polynomial(p.min_poly)}, {"unit", p.unit},
          {"generates_field", p.generates_field}, {"above_one", p.above_one},     {"inside", p.inside}};
}

inline int find_pisot_cmd(const Config& cfg, const std::string& field_spec, long height, std::ostream& out, std::ostream& err) {
  auto f = load_field(field_spec);
  const auto g = galois_check(f);
  json j = {{"field", json_io::field(*f)}, {"galois", galois(g)}};
  if (!g.passed) {
    emit(cfg, j, out);
    err << "galois check failed\n";
    return exit_code::failed;
  }
  const auto mu = find_pisot_unit(f, height);
  if (!mu) {
    j["mu"] = nullptr;
    emit(cfg, j, out);
    err << "no Pisot unit of height <= " << height << '\n';
    return exit_code::failed;
  }
  const auto [normalized, squared] = normalize_norm(*mu);
  const auto fr = full_rank_check(normalized, 6);
  j["mu"] = json_io::element(*mu);
  j["pisot"] = pisot(pisot_unit_check(*mu));
  j["normalized"] = json_io::element(normalized);
  j["squared"] = squared;
  j["full_rank"] = {{"passed", fr.passed}, {"checked", fr.checked}};
  if (fr.offending) j["full_rank"]["offending"] = *fr.offending;
  emit(cfg, j, out);
  err << "mu = " << mu->str() << (fr.passed ? ", full rank up to length 6\n" : ", fails the full rank condition\n");
  return fr.passed ? exit_code::ok : exit_code::failed;
}

inline int anosov_cmd(const Config& cfg, const std::string& field_spec, const std::optional<std::string>& mu_path, long height,
                      std::ostream& out, std::ostream& err) {
  auto f = load_field(field_spec);
  std::optional<NumberFieldElement> mu;
  if (mu_path) {
    mu = json_io::element(json_io::load_file(*mu_path), f);
  } else {
    if (!galois_check(f).passed) {
      emit(cfg, {{"error", "galois check failed"}}, out);
      err << "galois check failed\n";
      return exit_code::failed;
    }
    mu = find_pisot_unit(f, height);
    if (!mu) {
      emit(cfg, {{"error", "no Pisot unit found"}}, out);
      err << "no Pisot unit of height <= " << height << '\n';
      return exit_code::failed;
    }
  }
  const auto t = build_example_tower();
  try {
    auto [phi, cert] = build_phi(t, f, *mu);
    json j = json_io::certificate(cert);
    j["charpoly_matches_weights"] = charpoly_matches_weights(phi, cert);
    emit(cfg, j, out);
    const bool ok = cert.hyperbolic && cert.equivariant;
    err << "hyperbolic: " << (cert.hyperbolic ? "yes" : "no") << ", equivariant: " << (cert.equivariant ? "yes" : "no") << '\n';
    return ok ? exit_code::ok : exit_code::failed;
  } catch (const AnosovPreconditionFailed& e) {
    emit(cfg, {{"error", e.what()}}, out);
    err << e.what() << '\n';
    return exit_code::failed;
  }
}

}  // namespace detail

/// Runs the command line (without the program name). JSON goes to out (or
/// the --out file), a short human summary to err.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computations with nilpotent Lie algebras", "nilpotent-cli"};
  app.require_subcommand(1);
  Config cfg;
  app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--samples", cfg.samples, "number of sampled Jacobi triples")->capture_default_str();
  app.add_option("--out", cfg.out, "output file, - for stdout (a directory for paper-example build)")->capture_default_str();

  std::size_t gens = 0;
  std::size_t cls = 0;
  std::string alg_path;
  std::string aux_path;
  std::string field_spec = "builtin:quartic";
  std::optional<std::string> mu;
  long height = 10;

  auto* free = app.add_subcommand("free", "free nilpotent Lie algebra in a Hall basis")->fallthrough();
  free->add_option("--gens", gens)->required()->check(CLI::PositiveNumber);
  free->add_option("--class", cls)->required()->check(CLI::PositiveNumber);

  auto* quot = app.add_subcommand("quotient", "quotient by the ideal generated by the given rows")->fallthrough();
  quot->add_option("--alg", alg_path)->required();
  quot->add_option("--ideal", aux_path)->required();

  auto* grading = app.add_subcommand("check-grading", "verify and classify a grading")->fallthrough();
  grading->add_option("--alg", alg_path)->required();
  grading->add_option("--grading", aux_path)->required();

  auto* aut = app.add_subcommand("check-automorphism", "verify an automorphism and classify its spectrum")->fallthrough();
  aut->add_option("--alg", alg_path)->required();
  aut->add_option("--matrix", aux_path)->required();

  auto* from_aut = app.add_subcommand("grading-from-aut", "grading from an automorphism with rational spectrum")->fallthrough();
  from_aut->add_option("--alg", alg_path)->required();
  from_aut->add_option("--matrix", aux_path)->required();
  from_aut->add_option("--mu", mu, "base of the eigenvalues, p/q");

  auto* example = app.add_subcommand("paper-example", "the 342-dimensional example n")->fallthrough();
  example->require_subcommand(1);
  auto* build = example->add_subcommand("build", "write l, ntilde, n and the projections to --out DIR")->fallthrough();
  auto* verify = example->add_subcommand("verify", "check every claim about the example")->fallthrough();

  auto* pisot = app.add_subcommand("find-pisot", "search a unit Pisot number in a cyclic quartic field")->fallthrough();
  pisot->add_option("--field", field_spec)->capture_default_str();
  pisot->add_option("--height", height)->capture_default_str()->check(CLI::NonNegativeNumber);

  auto* anosov = app.add_subcommand("anosov-check", "hyperbolicity and equivariance of phi on n")->fallthrough();
  anosov->add_option("--field", field_spec)->capture_default_str();
  anosov->add_option("--mu", mu, "file with the power-basis coordinates of mu");
  anosov->add_option("--height", height)->capture_default_str()->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return exit_code::invalid;
  }

  try {
    if (*free) return detail::free_cmd(cfg, gens, cls, out, err);
    if (*quot) return detail::quotient_cmd(cfg, alg_path, aux_path, out, err);
    if (*grading) return detail::check_grading_cmd(cfg, alg_path, aux_path, out, err);
    if (*aut) return detail::check_automorphism_cmd(cfg, alg_path, aux_path, out, err);
    if (*from_aut) return detail::grading_from_aut_cmd(cfg, alg_path, aux_path, mu, out, err);
    if (*build) return detail::example_build_cmd(cfg, out, err);
    if (*verify) return detail::example_verify_cmd(cfg, out, err);
    if (*pisot) return detail::find_pisot_cmd(cfg, field_spec, height, out, err);
    if (*anosov) return detail::anosov_cmd(cfg, field_spec, mu, height, out, err);
  } catch (const json_io::InputError& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const NotAnIdeal& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const std::out_of_range& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid;
  } catch (const std::domain_error& e) {
    err << "invalid input: " << e.what() << '\n';
    return exit_code::invalid;
  }
  return exit_code::invalid;
}

}  // namespace nilpotent::cli
