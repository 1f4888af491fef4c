#include "multisink/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "multisink/local_solutions.hpp"
#include "orbit.hpp"

namespace multisink {

namespace {

constexpr double kPi = std::numbers::pi;

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

double tan_pi_lambda(double lambda) {
  return lambda < 1.5 ? std::tan(kPi * (lambda - 1)) : -std::tan(kPi * (2 - lambda));
}

double exponent_y(double lambda) { return 1 / (2 * lambda - 2); }

// 1 - sin(pi y) = 1 - cos(pi (2 - lambda) / (2 lambda - 2))
double one_minus_sin_pi_y(double lambda) {
  const double h = std::sin(kPi * (2 - lambda) / (4 * lambda - 4));
  return 2 * h * h;
}

Parameters checked(double lambda, double pressure) {
  const auto p = Parameters::make(lambda, pressure);
  if (!(p.pressure < 0)) throw DomainError("the expansions require P < 0");
  return p;
}

ExpansionResult finish(Regime regime, double constant, std::vector<ExpansionTerm> terms, double minus_p) {
  ExpansionResult r;
  r.regime = regime;
  r.constant = constant;
  r.value = constant;
  for (const auto& t : terms) r.value += t.evaluate(minus_p);
  r.terms = std::move(terms);
  return r;
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::SubCritical: return "SubCritical";
    case Regime::Logarithmic: return "Logarithmic";
    case Regime::SuperCritical: return "SuperCritical";
  }
  return "?";
}

Regime regime_of(double lambda) {
  Parameters::make(lambda, 0.0);
  if (std::abs(lambda - 1.5) < kRegimeWindow) return Regime::Logarithmic;
  return lambda < 1.5 ? Regime::SubCritical : Regime::SuperCritical;
}

std::string ExpansionTerm::descriptor() const {
  std::ostringstream out;
  out.precision(17);
  out << "|P|^" << exponent;
  if (logarithmic) out << "*log(1/|P|)";
  return out.str();
}

double ExpansionTerm::evaluate(double minus_p) const {
  double v = coefficient * std::pow(minus_p, exponent);
  if (logarithmic) v *= std::log(1 / minus_p);
  return v;
}

double a_of_P(double lambda, double pressure, SeriesMode mode) {
  const auto p = Parameters::make(lambda, pressure);
  const double mp = -p.pressure;
  if (mode == SeriesMode::Exact)
    return static_cast<double>(detail::solve_plus_shape<detail::Wide>(lambda, mp).a);
  return 2 * std::pow(lambda, 2 * lambda - 2) * mp - 4 * std::pow(lambda, 4 * lambda - 3) * mp * mp;
}

double b_of_P(double lambda, double pressure, SeriesMode mode, Coefficients coefficients) {
  const auto p = Parameters::make(lambda, pressure);
  const double mp = -p.pressure;
  if (mode == SeriesMode::Exact) return static_cast<double>(detail::solve_minus_scale<detail::Wide>(lambda, mp));
  const double y = exponent_y(lambda);
  const double second = coefficients == Coefficients::Corrected ? y * lambda * lambda * std::pow(2.0, 3 * y)
                                                                 : lambda * lambda * std::pow(2.0, 2 * y);
  return std::pow(2 * mp, y) - second * std::pow(mp, 3 * y);
}

double t_plus_linear_coefficient(double lambda, Coefficients coefficients) {
  Parameters::make(lambda, 0.0);
  const double base = 2 * std::pow(lambda, 2 * lambda - 2) * std::sqrt(kPi) * gamma_fn(lambda) *
                      tan_pi_lambda(lambda) / gamma_fn(lambda - 0.5);
  if (coefficients == Coefficients::Published && lambda < 1.5) return 2 * base;
  return base;
}

double t_plus_log_coefficient(Coefficients coefficients) {
  return coefficients == Coefficients::Corrected ? 3.0 : 9.0 / 4.0;
}

double t_plus_power_coefficient(double lambda, Coefficients coefficients) {
  Parameters::make(lambda, 0.0);
  const double y = exponent_y(lambda);
  const double first = coefficients == Coefficients::Corrected ? gamma_fn(1 - y) : gamma_fn(1 + y);
  return std::pow(2.0, 1 + y) * lambda * first * gamma_fn(0.5 + y) / std::sqrt(kPi);
}

double t_minus_coefficient(double lambda) {
  Parameters::make(lambda, 0.0);
  const double y = exponent_y(lambda);
  return std::pow(2.0, 1 + y) * std::sqrt(kPi) * lambda * gamma_fn(0.5 + y) / gamma_fn(y);
}

ExpansionResult t_plus_expansion(double lambda, double pressure, Coefficients coefficients) {
  const auto p = checked(lambda, pressure);
  const double mp = -p.pressure;
  switch (regime_of(lambda)) {
    case Regime::SubCritical:
      return finish(Regime::SubCritical, kPi, {{1.0, false, -t_plus_linear_coefficient(lambda, coefficients)}}, mp);
    case Regime::Logarithmic:
      return finish(Regime::Logarithmic, kPi, {{1.0, true, -t_plus_log_coefficient(coefficients)}}, mp);
    case Regime::SuperCritical:
      return finish(Regime::SuperCritical, kPi,
                    {{exponent_y(lambda), false, -t_plus_power_coefficient(lambda, coefficients)},
                     {1.0, false, -t_plus_linear_coefficient(lambda, coefficients)}},
                    mp);
  }
  throw DomainError("unreachable regime");
}

ExpansionResult t_minus_expansion(double lambda, double pressure) {
  const auto p = checked(lambda, pressure);
  return finish(regime_of(lambda), 0.0, {{exponent_y(lambda), false, t_minus_coefficient(lambda)}}, -p.pressure);
}

ExpansionResult t_sum_expansion(double lambda, double pressure, Coefficients coefficients) {
  const auto p = checked(lambda, pressure);
  const double mp = -p.pressure;
  const double y = exponent_y(lambda);
  switch (regime_of(lambda)) {
    case Regime::SubCritical:
      return finish(Regime::SubCritical, kPi,
                    {{1.0, false, -t_plus_linear_coefficient(lambda, coefficients)},
                     {y, false, t_minus_coefficient(lambda)}},
                    mp);
    case Regime::Logarithmic:
      return finish(Regime::Logarithmic, kPi,
                    {{1.0, true, -t_plus_log_coefficient(coefficients)}, {1.0, false, t_minus_coefficient(1.5)}},
                    mp);
    case Regime::SuperCritical:
      return finish(Regime::SuperCritical, kPi,
                    {{y, false, -t_plus_power_coefficient(lambda, coefficients) * one_minus_sin_pi_y(lambda)},
                     {1.0, false, -t_plus_linear_coefficient(lambda, coefficients)}},
                    mp);
  }
  throw DomainError("unreachable regime");
}

double pstar_approx(double lambda, PstarMode mode, Coefficients coefficients) {
  Parameters::make(lambda, 0.0);
  if (mode == PstarMode::Quadratic) return kPi * kPi / 512 * (2 - lambda) * (2 - lambda);
  if (!(lambda > 1.5 + kRegimeWindow)) throw DomainError("the implicit estimate of P* needs lambda > 3/2");
  // the leading two terms of T - pi cancel at |P*|
  const double lead = t_plus_power_coefficient(lambda, coefficients) * one_minus_sin_pi_y(lambda);
  const double linear = -t_plus_linear_coefficient(lambda, coefficients);
  return std::pow(lead / linear, (2 * lambda - 2) / (2 * lambda - 3));
}

double mellin_F(double lambda, double z, const QuadratureSpec& spec) {
  Parameters::make(lambda, 0.0);
  if (!std::isfinite(z)) throw DomainError("mellin_F needs a finite z");
  const double left = (lambda - 1) * (z - 1) - 0.5;
  if (!(left > -1)) throw DomainError("mellin_F diverges at w = 0 for this z");
  // (1-w)^(z-3/2) (1-w^(lambda-1))^(1-z) = (1-w)^(-1/2) r^(z-1), r = (1-w)/(1-w^(lambda-1))
  auto f = [&](double w, double c) {
    const double lw = detail::log_unit(w, c);
    const double r = 1 / detail::one_minus_power_ratio(lambda - 1, w, c);
    return std::exp(left * lw) * std::pow(r, z - 1) / std::sqrt(c);
  };
  const double cuts[] = {0.5};
  return lambda / 2 * integrate_singular(f, left, -0.5, spec, cuts).value;
}

IdentityCheck beta_tangent_identity_check(double lambda, const QuadratureSpec& spec) {
  Parameters::make(lambda, 0.0);
  if (!(lambda < 1.5)) throw DomainError("the beta-tangent integral diverges for lambda >= 3/2");
  auto f = [&](double t, double c) {
    const double lt = detail::log_unit(t, c);
    const double ratio = c == 0 ? lambda - 1 : std::expm1((1 - lambda) * lt) / c;
    return std::exp(-0.5 * lt) * ratio / std::sqrt(c);
  };
  const double cuts[] = {0.5};
  IdentityCheck out;
  out.lhs = integrate_singular(f, 0.5 - lambda, -0.5, spec, cuts).value;
  out.rhs = 2 * std::sqrt(kPi) * gamma_fn(lambda) * tan_pi_lambda(lambda) / gamma_fn(lambda - 0.5);
  return out;
}

}  // namespace multisink
