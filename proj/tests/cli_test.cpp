#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "nilpotent/cli.hpp"

using nilpotent::cli::run;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  [[nodiscard]] json parsed() const { return json::parse(out); }
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SAMPLE_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, Free) {
  auto r = cli({"free", "--gens", "4", "--class", "2", "--out", "-"});
  EXPECT_EQ(r.code, 0);
  auto j = r.parsed();
  EXPECT_EQ(j["dim"], 10);
  EXPECT_EQ(j["labels"][4], "[X1,X2]");
  EXPECT_EQ(j["brackets"][0], json::parse(R"([0, 1, [[4, "1"]]])"));
  EXPECT_EQ(cli({"free", "--gens", "0", "--class", "2"}).code, 2);
  EXPECT_EQ(cli({"free", "--gens", "2"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"nonsense"}).code, 2);
  EXPECT_EQ(cli({"paper-example"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, Quotient) {
  auto r = cli({"quotient", "--alg", data("heisenberg.json"), "--ideal", data("center_rows.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.parsed();
  EXPECT_EQ(j["dim"], 2);
  EXPECT_TRUE(j["brackets"].empty());
  // x generates the ideal spanned by x and z
  auto g = cli({"quotient", "--alg", data("heisenberg.json"), "--ideal", data("x_rows.json")}).parsed();
  EXPECT_EQ(g["dim"], 1);
  EXPECT_EQ(g["ideal"].size(), 2u);
  EXPECT_EQ(cli({"quotient", "--alg", "builtin:heisenberg", "--ideal", data("center_rows.json")}).out, r.out);
  EXPECT_EQ(cli({"quotient", "--alg", data("heisenberg.json"), "--ideal", data("short_rows.json")}).code, 2);
  EXPECT_EQ(cli({"quotient", "--alg", data("malformed.json"), "--ideal", data("center_rows.json")}).code, 2);
  EXPECT_EQ(cli({"quotient", "--alg", data("missing.json"), "--ideal", data("center_rows.json")}).code, 2);
}

TEST(Cli, CheckGradingExitCodes) {
  auto run_grading = [](const std::string& file) { return cli({"check-grading", "--alg", data("heisenberg.json"), "--grading", data(file)}); };
  auto pos = run_grading("grading_positive.json");
  EXPECT_EQ(pos.code, 0);
  EXPECT_EQ(pos.parsed()["class"], "positive");
  EXPECT_EQ(run_grading("grading_nonnegative.json").code, 10);
  EXPECT_EQ(run_grading("grading_trivial.json").code, 11);
  EXPECT_EQ(run_grading("grading_other.json").code, 12);
  auto bad = run_grading("grading_invalid.json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.parsed()["valid"], false);
  EXPECT_EQ(bad.parsed()["witness"], json::parse(R"(["0", "0", "1"])"));
}

TEST(Cli, CheckAutomorphismExitCodes) {
  auto run_aut = [](const std::string& file) { return cli({"check-automorphism", "--alg", data("heisenberg.json"), "--matrix", data(file)}); };
  auto e = run_aut("aut_expanding.json");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.parsed()["kind"], "expanding");
  EXPECT_EQ(e.parsed()["charpoly"], json::parse(R"(["-36", "36", "-11", "1"])"));
  EXPECT_EQ(run_aut("aut_partial.json").code, 10);
  auto n = run_aut("aut_neither.json");
  EXPECT_EQ(n.code, 12);
  EXPECT_EQ(n.parsed()["inside"], 1);
  auto bad = run_aut("not_aut.json");
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.parsed()["witness"], json::parse("[0, 1]"));
  EXPECT_EQ(cli({"check-automorphism", "--alg", data("heisenberg.json"), "--matrix", data("center_rows.json")}).code, 2);
}

TEST(Cli, GradingFromAutomorphism) {
  auto r = cli({"grading-from-aut", "--alg", data("heisenberg.json"), "--matrix", data("aut_powers_of_two.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["weights"], json::parse("[1, 2, 3]"));
  auto with_mu = cli({"grading-from-aut", "--alg", data("heisenberg.json"), "--matrix", data("aut_powers_of_two.json"), "--mu", "4"});
  EXPECT_EQ(with_mu.code, 1);
  EXPECT_EQ(cli({"grading-from-aut", "--alg", data("heisenberg.json"), "--matrix", data("aut_rotation.json")}).code, 1);
  EXPECT_EQ(cli({"grading-from-aut", "--alg", data("heisenberg.json"), "--matrix", data("not_aut.json")}).code, 2);
  EXPECT_EQ(cli({"grading-from-aut", "--alg", data("heisenberg.json"), "--matrix", data("aut_powers_of_two.json"), "--mu", "x"}).code, 2);
}

TEST(Cli, PaperExampleVerify) {
  auto r = cli({"paper-example", "verify", "--samples", "2000"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.parsed();
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(j["dims"]["n"], 342);
  for (const auto& c : j["claims"]) EXPECT_EQ(c["passed"], true) << c["claim"];
  for (const auto& c : j["obstruction"]) EXPECT_EQ(c["passed"], true) << c["claim"];
  EXPECT_EQ(j["jacobi"].size(), 3u);
  // byte-identical output for the same seed
  EXPECT_EQ(cli({"paper-example", "verify", "--samples", "2000"}).out, r.out);
  EXPECT_EQ(cli({"--seed", "0", "paper-example", "verify", "--samples", "2000"}).out, r.out);
}

TEST(Cli, PaperExampleBuild) {
  const auto dir = std::filesystem::temp_directory_path() / "nilpotent_cli_build";
  std::filesystem::remove_all(dir);
  auto r = cli({"paper-example", "build", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.parsed()["dims"]["ntilde"], 344);
  for (const auto& f : r.parsed()["files"]) EXPECT_TRUE(std::filesystem::exists(dir / f.get<std::string>())) << f;
  std::ifstream n(dir / "n.json");
  auto alg = nilpotent::json_io::algebra(json::parse(n));
  EXPECT_EQ(alg->dim(), 342u);
  std::ifstream p(dir / "p.json");
  auto m = json::parse(p);
  EXPECT_EQ(m.size(), 342u);
  EXPECT_EQ(m[0].size(), 964u);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(cli({"paper-example", "build"}).code, 2);
}

TEST(Cli, FindPisot) {
  auto r = cli({"find-pisot", "--field", data("quartic_field.json"), "--height", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.parsed();
  EXPECT_EQ(j["mu"], json::parse(R"(["-1", "0", "2", "-1"])"));
  EXPECT_EQ(j["pisot"]["min_poly"], json::parse(R"(["1", "4", "-2", "-12", "1"])"));
  EXPECT_EQ(j["full_rank"]["checked"], 1286);
  EXPECT_EQ(cli({"find-pisot"}).out, r.out);
  EXPECT_EQ(cli({"find-pisot", "--height", "0"}).code, 1);
  EXPECT_EQ(cli({"find-pisot", "--field", data("pure_quartic_field.json")}).code, 1);
  EXPECT_EQ(cli({"find-pisot", "--field", data("non_monic_field.json")}).code, 2);
}

TEST(Cli, AnosovCheck) {
  auto r = cli({"anosov-check", "--field", data("quartic_field.json"), "--mu", data("quartic_mu.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = r.parsed();
  EXPECT_EQ(j["hyperbolic"], true);
  EXPECT_EQ(j["equivariant"], true);
  EXPECT_EQ(j["charpoly_matches_weights"], true);
  EXPECT_EQ(j["weight_multiset"].size(), 342u);
  EXPECT_EQ(cli({"anosov-check"}).code, 0);
  EXPECT_EQ(cli({"anosov-check", "--mu", data("quartic_t.json")}).code, 1);
  EXPECT_EQ(cli({"anosov-check", "--field", data("pure_quartic_field.json")}).code, 1);
  EXPECT_EQ(cli({"anosov-check", "--mu", data("malformed.json")}).code, 2);
}
