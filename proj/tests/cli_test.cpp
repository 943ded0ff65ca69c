#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qdpot/io.hpp"

using qdpot::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// Last CSV row, column `col`.
double last_value(const std::string& csv, std::size_t col) {
  std::istringstream in(csv);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  std::istringstream row(last);
  std::string cell;
  for (std::size_t i = 0; i <= col; ++i) std::getline(row, cell, ',');
  return std::stod(cell);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST(Cli, IntegrateConstant) {
  const Outcome r = call({"integrate", "--domain", "unit-disc", "--data", R"({"R":"1"})"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(last_value(r.out, 0), 2.0 * qdpot::kPi, 1e-12);
  EXPECT_EQ(r.out.rfind("re,im\n6.283185307", 0), 0u);
}

TEST(Cli, AnnulusInnerIndicator) {
  const auto file = temp_file("qdpot_annulus.json", R"({
    "outer": {"kind": "circle", "center": [0, 0], "radius": 1},
    "holes": [{"kind": "circle", "center": [0, 0], "radius": 0.5}],
    "base_points": [[0, 0]]})");
  const Outcome r = call({"dirichlet", "--domain", file.string(), "--data", "indicator-inner", "--probe", "0.7"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(last_value(r.out, 2), std::log(0.7) / std::log(0.5), 1e-6);
}

TEST(Cli, ValidateDiscSuite) {
  const Outcome r = call({"validate", "--suite", "disc"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = qdpot::io::json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_GE(j["checks"].size(), 18u);
  for (const auto& c : j["checks"]) EXPECT_LE(c["value"].get<double>(), c["tolerance"].get<double>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"integrate", "--data", R"({"R": 1,})"}).code, 2);
  const Outcome syntax = call({"integrate", "--data", R"({"R": 1,})"});
  EXPECT_NE(syntax.err.find("<inline>:1:"), std::string::npos) << syntax.err;
  EXPECT_EQ(call({"integrate", "--data", "z + q"}).code, 2);
  EXPECT_EQ(call({"integrate", "--data", "1/(z - 1)"}).code, 3);
  EXPECT_EQ(call({"exact-dirichlet", "--data", "1/(zbar - 1)"}).code, 3);
  EXPECT_EQ(call({"grid", "--n", "8"}).code, 2);
  EXPECT_EQ(call({"nonsense"}).code, 2);
  EXPECT_EQ(call({"dirichlet", "--domain", "nowhere.json", "--data", "1"}).code, 2);
  EXPECT_EQ(call({"green", "--domain", "unit-disc", "--z", "0.1", "--w", "0.99"}).code, 3);
  EXPECT_EQ(call({"validate", "--suite", "moon"}).code, 2);
  // a failed check gives exit 1
  EXPECT_EQ(call({"exact-dirichlet", "--data", "zbar", "--tol", "-1"}).code, 1);
}

TEST(Cli, CsvOutputIsByteIdentical) {
  const std::vector<std::string> args{"szego", "--domain", "cassini-like", "--n", "64", "--a", "0.1,0.1"};
  const Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "curve,t,re_z,im_z,re_S,im_S,re_L,im_L");
}

TEST(Cli, ReportFile) {
  const auto path = std::filesystem::temp_directory_path() / "qdpot_report.json";
  const Outcome r = call({"hmeasure", "--domain", "annulus:0.5", "--k", "1", "--probe", "0.7", "--report", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto j = qdpot::io::json::parse(in);
  EXPECT_EQ(j["command"], "hmeasure --domain annulus:0.5 --k 1 --probe 0.7 --report " + path.string());
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["tolerances"]["tol"], 1e-7);
}

TEST(Cli, ExactAndNumericProjectionAgree) {
  const Outcome r = call({"project", "--data", "zbar^2 + 1/(2+z)", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = qdpot::io::json::parse(r.out);
  const auto p = qdpot::io::parse_rational(j["results"]["projection"]);
  for (qdpot::cplx z : {qdpot::cplx(0.3, 0.2), qdpot::cplx(-0.7)}) EXPECT_LT(std::abs(p(z, 0.0) - 1.0 / (2.0 + z)), 1e-12);
}

TEST(Cli, GreenAndPoisson) {
  const Outcome g = call({"green", "--domain", "unit-disc", "--z", "0.3", "--w", "-0.2,0.4"});
  ASSERT_EQ(g.code, 0) << g.err;
  const qdpot::cplx z(0.3), w(-0.2, 0.4);
  EXPECT_NEAR(last_value(g.out, 4), -std::log(std::abs((z - w) / (1.0 - std::conj(w) * z))), 1e-8);
  const Outcome p = call({"poisson", "--domain", "annulus:0.5", "--z", "0.1,0.7", "--n", "128"});
  EXPECT_EQ(p.code, 0) << p.err;
}

TEST(Cli, QuadratureCheck) {
  const Outcome r = call({"qd-check", "--data", "1/(z - 3)", "--map", "[[0,0],[1,0],[0.2,0]]"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(call({"qd-check", "--data", "1/(z - 0.5)"}).code, 3);
}
