#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "multisink/errors.hpp"
#include "multisink/local_solutions.hpp"
#include "oracles.hpp"

using namespace multisink;

namespace {

constexpr double kPi = std::numbers::pi;

int sign_of(Branch b) { return branch_value(b); }

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(Parameters::make(1.5, 0.0));
  const auto p = Parameters::make(1.25, -0.5);
  CHECK(p.alpha == doctest::Approx(0.75));
  CHECK_THROWS_AS(Parameters::make(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(Parameters::make(2.0, -1.0), DomainError);
  CHECK_THROWS_AS(Parameters::make(2.1, -1.0), DomainError);
  CHECK_THROWS_AS(Parameters::make(1.5, 1e-3), DomainError);
  CHECK_THROWS_AS(Parameters::make(1.5, std::nan("")), DomainError);
  CHECK_THROWS_AS(Parameters::make(1.5, -INFINITY), DomainError);
}

TEST_CASE("amplitude is the positive zero of the energy") {
  for (double lambda : {1.05, 1.2, 1.5, 1.9, 1.999}) {
    for (double pressure : {-1e-12, -1e-6, -1e-2, -1.0, -1e4}) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        CAPTURE(lambda);
        CAPTURE(pressure);
        const double x = amplitude(b, Parameters::make(lambda, pressure));
        const double ref = oracle::amplitude(lambda, pressure, sign_of(b));
        CHECK(std::abs(x / ref - 1) < 1e-12);
      }
    }
  }
}

TEST_CASE("minus amplitude at lambda 3/2, P = -1/2") {
  // 9/4 x^2 + x^(2/3) = 1
  const double ref = oracle::bisect([](double x) { return 2.25 * x * x + std::cbrt(x * x) - 1; }, 0.0, 1.0);
  CHECK(ref == doctest::Approx(0.435).epsilon(1e-2));
  CHECK(amplitude(Branch::Minus, Parameters::make(1.5, -0.5)) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("amplitude endpoints") {
  CHECK(amplitude(Branch::Plus, Parameters::make(1.5, 0.0)) == doctest::Approx(std::pow(1.5, -1.5)));
  CHECK(amplitude(Branch::Minus, Parameters::make(1.5, 0.0)) == 0.0);
}

TEST_CASE("periods against an independent quadrature") {
  for (double lambda : {1.1, 1.25, 1.5, 1.75, 1.9}) {
    for (double pressure : {-1e-6, -1e-3, -0.1, -1.0, -100.0}) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        CAPTURE(lambda);
        CAPTURE(pressure);
        CAPTURE(branch_token(b));
        const double t = period(b, Parameters::make(lambda, pressure));
        const double ref = oracle::period(lambda, pressure, sign_of(b));
        CHECK(std::abs(t / ref - 1) < 1e-8);
      }
    }
  }
}

TEST_CASE("period endpoint values") {
  for (double lambda : {1.2, 1.5, 1.9}) {
    CHECK(period(Branch::Plus, Parameters::make(lambda, 0.0)) == kPi);
    CHECK(period(Branch::Minus, Parameters::make(lambda, 0.0)) == 0.0);
    for (Branch b : {Branch::Plus, Branch::Minus})
      CHECK(std::abs(period(b, Parameters::make(lambda, -1e8)) - kPi / lambda) < 1e-3);
  }
}

TEST_CASE("periods are continuous at P = 0") {
  CHECK(std::abs(period(Branch::Plus, Parameters::make(1.5, -1e-14)) - kPi) < 1e-11);
  CHECK(period(Branch::Minus, Parameters::make(1.5, -1e-14)) < 1e-10);
}

TEST_CASE("periods are monotone in -P") {
  for (double lambda : {1.2, 1.5, 1.9}) {
    double prev_plus = kPi, prev_minus = 0;
    for (int j = 0; j < 30; ++j) {
      const double pressure = -std::pow(10.0, -10 + 0.5 * j);
      const auto p = Parameters::make(lambda, pressure);
      const double tp = period(Branch::Plus, p), tm = period(Branch::Minus, p);
      CAPTURE(pressure);
      CHECK(tp < prev_plus);
      CHECK(tm > prev_minus);
      prev_plus = tp;
      prev_minus = tm;
    }
  }
}

TEST_CASE("reconstruction rejects bad input") {
  CHECK_THROWS_AS(reconstruct(Branch::Plus, Parameters::make(1.5, 0.0), 64), DomainError);
  CHECK_THROWS_AS(reconstruct(Branch::Plus, Parameters::make(1.5, -1.0), 15), DomainError);
}

TEST_CASE("reconstructed solutions") {
  for (double lambda : {1.2, 1.5, 1.9}) {
    for (double pressure : {-1e-6, -1e-2, -10.0}) {
      for (Branch b : {Branch::Plus, Branch::Minus}) {
        CAPTURE(lambda);
        CAPTURE(pressure);
        CAPTURE(branch_token(b));
        const auto p = Parameters::make(lambda, pressure);
        const auto sol = reconstruct(b, p, 64);
        CHECK_FALSE(sol.is_shear());
        CHECK(sol.lifespan() == doctest::Approx(period(b, p)).epsilon(1e-12));
        CHECK(sol.amplitude() == doctest::Approx(amplitude(b, p)).epsilon(1e-14));
        const auto& s = sol.samples();
        REQUIRE(s.size() >= 64);
        CHECK(s.front().theta == 0.0);
        CHECK(s.back().theta == doctest::Approx(sol.lifespan()).epsilon(1e-15));
        CHECK(s.front().psi == 0.0);
        CHECK(std::abs(s.back().psi) < 1e-12 * sol.amplitude());
        CHECK(s.front().dpsi == doctest::Approx(std::sqrt(-2 * pressure)).epsilon(1e-12));
        CHECK(s.back().dpsi == doctest::Approx(-std::sqrt(-2 * pressure)).epsilon(1e-9));
        for (std::size_t i = 1; i < s.size(); ++i) REQUIRE(s[i].theta > s[i - 1].theta);
        CHECK(first_integral_residual(sol) <= 1e-8);

        const auto mid = sol.at(0.5 * sol.lifespan());
        CHECK(mid.psi == doctest::Approx(sol.amplitude()).epsilon(1e-12));
        CHECK(std::abs(mid.dpsi) < 1e-6 * std::sqrt(sol.amplitude()));
        for (double f : {0.01, 0.2, 0.37}) {
          const auto l = sol.at(f * sol.lifespan());
          const auto r = sol.at((1 - f) * sol.lifespan());
          CHECK(l.psi == doctest::Approx(r.psi).epsilon(1e-10));
          CHECK(l.dpsi == doctest::Approx(-r.dpsi).epsilon(1e-8));
        }
      }
    }
  }
}

TEST_CASE("evaluation satisfies the ODE") {
  for (double lambda : {1.25, 1.75}) {
    for (Branch b : {Branch::Plus, Branch::Minus}) {
      const auto sol = reconstruct(b, Parameters::make(lambda, -0.05), 32);
      const double h = 1e-5 * sol.lifespan();
      for (double f : {0.1, 0.3, 0.45, 0.7}) {
        const double t = f * sol.lifespan();
        const auto c = sol.at(t);
        const auto plus = sol.at(t + h), minus = sol.at(t - h);
        CAPTURE(f);
        CHECK((plus.psi - minus.psi) / (2 * h) == doctest::Approx(c.dpsi).epsilon(1e-7));
        CHECK((plus.dpsi - minus.dpsi) / (2 * h) ==
              doctest::Approx(oracle::second_derivative(c.psi, lambda, sign_of(b))).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("evaluation near the end of the lifespan") {
  const auto sol = reconstruct(Branch::Plus, Parameters::make(1.5, -1e-4), 64);
  for (double d : {1e-3, 1e-6, 1e-9}) {
    const auto e = sol.at_from_end(d);
    const auto s = sol.at(d);
    CHECK(e.psi == doctest::Approx(s.psi).epsilon(1e-8));
    CHECK(e.dpsi == doctest::Approx(-s.dpsi).epsilon(1e-8));
  }
  CHECK(sol.at(-1.0).psi == 0.0);
  CHECK(std::abs(sol.at(10.0).psi) < 1e-12);
}

TEST_CASE("shear solution") {
  const double lambda = 1.5;
  const auto sol = shear_solution(lambda, 101);
  CHECK(sol.is_shear());
  CHECK(sol.lifespan() == kPi);
  for (double t : {0.1, 1.0, kPi / 2, 2.5}) {
    const auto pt = sol.at(t);
    CHECK(pt.psi == doctest::Approx(std::pow(lambda, -lambda) * std::pow(std::sin(t), lambda)).epsilon(1e-14));
  }
  CHECK(first_integral_residual(sol) < 1e-12);
}

TEST_CASE("first integral") {
  const double lambda = 1.5, pressure = -1.0, psi = 0.3;
  const double dpsi = std::sqrt(oracle::energy(psi, lambda, pressure, -1));
  CHECK(first_integral(psi, dpsi, pressure, lambda) == doctest::Approx(-1.0).epsilon(1e-14));
  std::vector<Sample> samples{{0.0, psi, dpsi}, {0.1, psi, 1.1 * dpsi}};
  CHECK(first_integral_residual(samples, -1, pressure, lambda) > 1e-3);
}
