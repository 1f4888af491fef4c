#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "multisink/errors.hpp"
#include "multisink/numerics.hpp"

using namespace multisink;

namespace {

double beta_oracle(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }

}  // namespace

TEST_CASE("smooth integrand") {
  const auto r = integrate_singular([](double s) { return s * s; }, 0.0, 0.0);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("arcsine integrand gives pi") {
  const auto r = integrate_singular([](double s, double c) { return 1.0 / std::sqrt(s * c); }, -0.5, -0.5);
  CHECK(std::abs(r.value - std::numbers::pi) < 1e-11);
}

TEST_CASE("beta integrals with strong endpoint singularities") {
  for (auto [a, b] : {std::pair{0.3, 0.6}, {0.05, 0.9}, {1.5, 0.1}}) {
    CAPTURE(a);
    CAPTURE(b);
    const auto r = integrate_singular(
        [a = a, b = b](double s, double c) { return std::pow(s, a - 1) * std::pow(c, b - 1); }, a - 1, b - 1);
    CHECK(std::abs(r.value / beta_oracle(a, b) - 1) < 1e-9);
  }
}

TEST_CASE("breakpoints do not change the value") {
  const double bp[] = {0.1, 0.5, 0.9};
  auto f = [](double s, double c) { return std::pow(s, -0.7) * std::pow(c, -0.2); };
  const auto plain = integrate_singular(f, -0.7, -0.2);
  const auto split = integrate_singular(f, -0.7, -0.2, {}, bp);
  CHECK(std::abs(plain.value / split.value - 1) < 1e-11);
}

TEST_CASE("long double tanh-sinh") {
  const auto r = tanh_sinh<long double>([](long double x, long double, long double) { return std::exp(x); }, 0.0L,
                                        1.0L, QuadratureSpec{});
  CHECK(std::abs(static_cast<double>(r.value - (std::exp(1.0L) - 1))) < 1e-15);
}

TEST_CASE("divergent exponents are rejected") {
  CHECK_THROWS_AS(integrate_singular([](double s) { return 1 / s; }, -1.0, 0.0), DomainError);
}

TEST_CASE("quadrature spec validation") {
  CHECK_NOTHROW(QuadratureSpec{}.validate());
  CHECK_THROWS_AS((QuadratureSpec{0.0, 10, 1e-15}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureSpec{1e-11, 0, 1e-15}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureSpec{1e-11, kMaxQuadratureLevels + 1, 1e-15}.validate()), DomainError);
  CHECK_THROWS_AS((QuadratureSpec{1e-11, 10, -1.0}.validate()), DomainError);
}

TEST_CASE("log gamma") {
  for (double x : {1e-8, 0.1, 0.5, 1.0, 1.5, 2.0, 7.25, 170.5, 1e5}) {
    CAPTURE(x);
    CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-14));
  }
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-15));
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-2.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::nan("")), DomainError);
}

TEST_CASE("bracketed roots") {
  auto f = [](double x) { return std::cos(x) - x; };
  const double dottie = 0.7390851332151607;
  CHECK(find_root(f, {0.0, 1.0}) == doctest::Approx(dottie).epsilon(1e-13));
  BracketedRootSpec bisect{0.0, 1.0, 1e-13, 200, 0.0, RootMethod::Bisection};
  CHECK(find_root(f, bisect) == doctest::Approx(dottie).epsilon(1e-12));
  CHECK(find_root([](double x) { return x - 0.25; }, {0.25, 1.0}) == 0.25);
}

TEST_CASE("root finding failures") {
  auto f = [](double x) { return x * x + 1; };
  CHECK_THROWS_AS(find_root(f, {-1.0, 1.0}), NoSignChange);
  CHECK_THROWS_AS(find_root([](double x) { return x; }, {1.0, -1.0}), DomainError);
  BracketedRootSpec tiny{0.0, 3.0, 1e-15, 2, 0.0, RootMethod::Bisection};
  CHECK_THROWS_AS(find_root([](double x) { return x - 1.0 / 3.0; }, tiny), NonConvergence);
  CHECK_THROWS_AS(find_root([](double) { return std::nan(""); }, {0.0, 1.0}), DomainError);
}
