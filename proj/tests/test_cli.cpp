#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>

#include <json.hpp>

#include "cli_support.hpp"

using namespace cli_test;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("multisink_cli_" + name);
}

}  // namespace

TEST_CASE("periods at the endpoints") {
  auto r = run("periods --lambda 1.5 --pressure 0");
  REQUIRE(r.exit_code == 0);
  auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.text(0, "T_plus") == "3.141592653589793");
  CHECK(csv.text(0, "T_minus") == "0");
  for (double lambda : {1.2, 1.5, 1.9}) {
    r = run("periods --lambda " + std::to_string(lambda) + " --pressure -1e8");
    REQUIRE(r.exit_code == 0);
    csv = parse_csv(r.out);
    CHECK(std::abs(csv.number(0, "T_plus") - kPi / lambda) < 1e-3);
    CHECK(std::abs(csv.number(0, "T_minus") - kPi / lambda) < 1e-3);
    CHECK(csv.number(0, "T_sum") ==
          doctest::Approx(csv.number(0, "T_plus") + csv.number(0, "T_minus")).epsilon(1e-15));
  }
}

TEST_CASE("exit codes") {
  CHECK(run("periods --lambda 2.1 --pressure -1").exit_code == 2);
  CHECK(run("periods --lambda 1.5 --pressure 1").exit_code == 2);
  CHECK(run("periods --lambda 1.5").exit_code == 2);
  CHECK(run("periods --lambda 1.5 --pressure -1 --bogus").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
  CHECK(run("solve --help").exit_code == 0);
  CHECK(run("periods --lambda 1.5 --pressure -1 --format xml").exit_code == 2);
  CHECK(run("periods --lambda 1.5 --pressure -1 --tol 0").exit_code == 2);
  CHECK(run("solve --gluing M,M --lambda 1.4").exit_code == 3);
  CHECK(run("solve --gluing P,Q --lambda 1.4").exit_code == 2);
  CHECK(run("profile --gluing M,M --lambda 1.4").exit_code == 3);
  CHECK(run("field --gluing P,M,P,M --lambda 1.25 --grid 2").exit_code == 2);
  CHECK(run("field --gluing P,M,P,M --lambda 1.25 --bbox 1,0,0,1").exit_code == 2);
  CHECK(run("field --gluing P,M,P,M --lambda 1.25 --field speed").exit_code == 2);
  CHECK(run("pstar-table --lambdas 1.9,abc").exit_code == 2);
}

TEST_CASE("metadata line") {
  const auto r = run("periods --lambda 1.5 --pressure -0.25");
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.comments.size() == 1);
  const auto& meta = csv.comments[0];
  for (const char* key : {"tool=multisink", "version=", "command=periods", "lambda=1.5", "pressure=-0.25", "gluing=",
                          "relative_tolerance=1e-11", "absolute_floor=", "max_levels="})
    CHECK(meta.find(key) != std::string::npos);
  CHECK(r.out.find('\r') == std::string::npos);
  CHECK(r.out.substr(0, 1) == "#");
}

TEST_CASE("determinism") {
  const std::string args = "field --gluing P,M,P,M --lambda 1.25 --grid 7,5";
  CHECK(run(args).out == run(args).out);
  CHECK(run("pstar-table --lambdas 1.9,1.99").out == run("pstar-table --lambdas 1.9,1.99").out);
}

TEST_CASE("period curve") {
  auto r = run("period-curve --lambda 1.9 --pmin -1e-3 --pmax -1e-9 --count 50");
  REQUIRE(r.exit_code == 0);
  auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 50);
  CHECK(csv.number(0, "P") == -1e-3);
  CHECK(csv.number(49, "P") == -1e-9);
  // T - pi changes sign exactly once, at the two-sink critical pressure
  const double pstar = -4.2333434e-4 / 2;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double p = csv.number(i, "P");
    const double d = csv.number(i, "T_sum_minus_pi");
    CAPTURE(p);
    CHECK((d < 0) == (p > pstar));
    CHECK(d == doctest::Approx(csv.number(i, "T_sum") - kPi).epsilon(1e-6));
    if (i) CHECK(p > csv.number(i - 1, "P"));
  }
  r = run("period-curve --lambda 1.2 --pmin -1e-3 --pmax -1e-9 --count 50");
  csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 50);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) CHECK(csv.number(i, "T_sum_minus_pi") < 0);
  r = run("period-curve --lambda 1.2 --count 1");
  CHECK(parse_csv(r.out).rows.size() == 1);
  CHECK(run("period-curve --lambda 1.2 --count 0").exit_code == 2);
  CHECK(run("period-curve --lambda 1.2 --pmin 1").exit_code == 2);
}

TEST_CASE("solve") {
  auto r = run("solve --gluing P,M,P,M --lambda 1.9");
  REQUIRE(r.exit_code == 0);
  auto csv = parse_csv(r.out);
  CHECK(csv.text(0, "gluing") == "P,M,P,M");
  CHECK(csv.text(0, "status") == "Found");
  CHECK(csv.number(0, "minus_two_pressure") == doctest::Approx(4.2333434e-4).epsilon(1e-3));
  CHECK(csv.number(0, "root_count") == 1);
  CHECK(std::abs(csv.number(0, "residual")) < 1e-12);
  r = run("solve --gluing P,P --lambda 1.5");
  REQUIRE(r.exit_code == 0);
  csv = parse_csv(r.out);
  CHECK(csv.text(0, "status") == "DegenerateShear");
  CHECK(csv.number(0, "pressure") == 0.0);
  r = run("solve --gluing M,M --lambda 1.4");
  CHECK(parse_csv(r.out).text(0, "status") == "NoRoot");
}

TEST_CASE("two-sink profile") {
  const auto r = run("profile --gluing P,M,P,M --lambda 1.9 --samples 512");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  CHECK(csv.rows.size() >= 512);
  int changes = 0, knot_rows = 0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double w = csv.number(i, "vorticity_angular");
    if (std::isnan(w)) {
      ++knot_rows;
      CHECK(std::abs(csv.number(i, "psi")) < 1e-12);
      continue;
    }
    if (i && !std::isnan(csv.number(i - 1, "vorticity_angular")) &&
        (csv.number(i, "psi") > 0) != (csv.number(i - 1, "psi") > 0))
      ++changes;
  }
  CHECK(knot_rows == 4);
  // the four sign changes happen at the knot rows
  CHECK(changes == 0);
  int sign_changes = 0;
  double prev = 0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double psi = csv.number(i, "psi");
    if (std::abs(psi) < 1e-12) continue;
    if (prev != 0 && (psi > 0) != (prev > 0)) ++sign_changes;
    prev = psi;
  }
  CHECK(sign_changes == 3);  // the fourth closes the period at 2 pi
}

TEST_CASE("four minus pieces are anti-periodic under a quarter turn") {
  const auto r = run("profile --gluing M,M,M,M --lambda 1.5 --samples 512");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 512);
  for (std::size_t i = 0; i + 128 < csv.rows.size(); ++i) {
    CHECK(std::abs(csv.number(i, "psi") + csv.number(i + 128, "psi")) < 1e-8);
  }
}

TEST_CASE("field output and sidecar") {
  const auto out = temp_path("field.csv");
  const auto sidecar = std::filesystem::path(out.string() + ".stagnation.json");
  std::filesystem::remove(sidecar);
  auto r = run("field --gluing P,M,P,M --lambda 1.25 --bbox 0,0.3,-0.06,0 --grid 2,2 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const auto csv = parse_csv(read_file(out));
  CHECK(csv.header == std::vector<std::string>{"x", "y", "u", "v"});
  CHECK(csv.rows.size() == 4);
  REQUIRE(std::filesystem::exists(sidecar));
  const auto doc = nlohmann::json::parse(read_file(sidecar));
  const auto& pts = doc.at("stagnation_points");
  REQUIRE(pts.size() == 3);
  CHECK(pts[0].at("kind") == "saddle");
  CHECK(pts[0].at("eigenvalues")[0].is_null());
  int inside = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].at("kind") == "sink");
    const double a = pts[i].at("angle"), rad = pts[i].at("radius");
    const double x = rad * std::cos(a), y = rad * std::sin(a);
    if (x >= 0 && x <= 0.3 && y >= -0.06 && y <= 0) ++inside;
    CHECK(pts[i].at("eigenvalues")[0].get<double>() == doctest::Approx(-1.25 / 0.75).epsilon(1e-3));
    CHECK(pts[i].at("eigenvalues")[1].get<double>() == doctest::Approx(-1.0).epsilon(1e-3));
  }
  CHECK(inside == 1);
  std::filesystem::remove(out);
  std::filesystem::remove(sidecar);

  r = run("field --gluing P,M,P,M --lambda 1.25 --grid 40,40");
  CHECK(parse_csv(r.out).rows.size() == 1600);
  r = run("field --gluing P,M,P,M --lambda 1.25 --grid 3,2 --field velocity --format json");
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("rows").size() == 6);
  CHECK(j.at("stagnation_points").size() == 3);
  CHECK(j.at("metadata").at("field") == "velocity");
}

TEST_CASE("critical pressure table") {
  auto r = run("pstar-table");
  REQUIRE(r.exit_code == 0);
  auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 9);
  CHECK(csv.number(0, "pstar_over_alpha_squared") == doctest::Approx(0.0212).epsilon(0.03));
  CHECK(std::abs(csv.number(8, "pstar_over_alpha_squared") - 0.0193) < 5e-4);
  for (std::size_t i = 0; i < 9; ++i) CHECK(csv.number(i, "root_count") == 1);
  r = run("pstar-table --lambdas \"\"");
  REQUIRE(r.exit_code == 0);
  csv = parse_csv(r.out);
  CHECK(csv.rows.empty());
  CHECK(csv.header.size() == 4);
}

TEST_CASE("asymptotics report") {
  auto value = [](const Csv& csv, const std::string& q) {
    for (std::size_t i = 0; i < csv.rows.size(); ++i)
      if (csv.text(i, "quantity") == q) return csv.text(i, "value");
    throw std::runtime_error("missing " + q);
  };
  auto csv = parse_csv(run("asymptotics --lambda 1.25 --pressure -1e-6").out);
  CHECK(std::abs(std::stod(value(csv, "T_plus_linear_relative_discrepancy_corrected"))) < 1e-2);
  csv = parse_csv(run("asymptotics --lambda 1.5 --pressure -1e-6").out);
  CHECK(value(csv, "regime") == "Logarithmic");
  CHECK_NOTHROW(value(csv, "T_plus_log_coefficient_quadrature"));
  csv = parse_csv(run("asymptotics --lambda 1.9").out);
  CHECK(std::stod(value(csv, "pstar_quadratic")) == doctest::Approx(0.0193 * 0.01).epsilon(2e-3));
  CHECK(run("asymptotics --lambda 1.9 --pressure 0").exit_code == 2);
}

TEST_CASE("classification") {
  auto csv = parse_csv(run("classify --lambda 1.4 --max-pieces 10").out);
  std::set<std::pair<int, int>> yes, degenerate;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const std::pair<int, int> key{static_cast<int>(csv.number(i, "n_plus")), static_cast<int>(csv.number(i, "n_minus"))};
    if (csv.text(i, "solvable") == "yes") yes.insert(key);
    if (csv.text(i, "solvable") == "degenerate") degenerate.insert(key);
  }
  std::set<std::pair<int, int>> expected;
  for (int k = 2; 2 * k <= 10; ++k) expected.insert({0, 2 * k});
  for (int k = 2; 2 * k <= 10; ++k) expected.insert({1, 2 * k - 1});
  for (int k = 1; 2 + 2 * k <= 10; ++k) expected.insert({2, 2 * k});
  CHECK(yes == expected);
  CHECK(degenerate == std::set<std::pair<int, int>>{{2, 0}});

  csv = parse_csv(run("classify --lambda 1.4 --max-pieces 2").out);
  int nonzero = 0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) nonzero += csv.text(i, "solvable") != "no";
  CHECK(nonzero == 1);

  csv = parse_csv(run("classify --lambda 1.9 --max-pieces 4").out);
  bool two_sink = false;
  for (std::size_t i = 0; i < csv.rows.size(); ++i)
    if (csv.number(i, "n_plus") == 2 && csv.number(i, "n_minus") == 2) two_sink = csv.text(i, "solvable") == "yes";
  CHECK(two_sink);
}

TEST_CASE("shear convergence") {
  const auto csv = parse_csv(run("shear-convergence --lambda 1.5 --pressures=-1e-2,-1e-4,-1e-6").out);
  REQUIRE(csv.rows.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(csv.number(i, "sup_psi") < csv.number(i - 1, "sup_psi"));
    CHECK(csv.number(i, "sup_dpsi") < csv.number(i - 1, "sup_dpsi"));
  }
  CHECK(csv.number(2, "sup_psi") < 1e-2);
  CHECK(csv.number(2, "sup_dpsi") < 1e-2);
}
