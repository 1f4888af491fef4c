#pragma once

// Small-|P| expansions of the lifespans and the resulting estimates of the
// critical pressure of the two-sink gluing.

#include <string>
#include <vector>

#include "multisink/numerics.hpp"

namespace multisink {

enum class Regime { SubCritical, Logarithmic, SuperCritical };

std::string to_string(Regime regime);

/// lambda within this distance of 3/2 uses the logarithmic formulas.
inline constexpr double kRegimeWindow = 1e-6;

Regime regime_of(double lambda);

enum class SeriesMode { Exact, Series };

/// Which closed-form coefficients to use.  Published reproduces the historical
/// constants verbatim; Corrected uses the values that match quadrature.
enum class Coefficients { Corrected, Published };

struct ExpansionTerm {
  double exponent = 1.0;     // power of |P|
  bool logarithmic = false;  // extra factor log(1/|P|)
  double coefficient = 0.0;

  std::string descriptor() const;
  double evaluate(double minus_p) const;
};

struct ExpansionResult {
  double value = 0.0;
  Regime regime = Regime::SubCritical;
  double constant = 0.0;             // P-independent part
  std::vector<ExpansionTerm> terms;  // leading term first
};

/// a = (lambda^2 - x_+^(-2/lambda)) / lambda^2.
double a_of_P(double lambda, double pressure, SeriesMode mode);
/// b = x_-^(1/lambda).
double b_of_P(double lambda, double pressure, SeriesMode mode, Coefficients coefficients = Coefficients::Corrected);

/// Coefficient c of the |P| term in pi - T_+ (SubCritical and SuperCritical).
double t_plus_linear_coefficient(double lambda, Coefficients coefficients = Coefficients::Corrected);
/// Coefficient of |P| log(1/|P|) in pi - T_+ at lambda = 3/2.
double t_plus_log_coefficient(Coefficients coefficients = Coefficients::Corrected);
/// Coefficient of |P|^(1/(2 lambda - 2)) in pi - T_+ (SuperCritical).
double t_plus_power_coefficient(double lambda, Coefficients coefficients = Coefficients::Corrected);
/// Coefficient of |P|^(1/(2 lambda - 2)) in T_-.
double t_minus_coefficient(double lambda);

ExpansionResult t_plus_expansion(double lambda, double pressure, Coefficients coefficients = Coefficients::Corrected);
ExpansionResult t_minus_expansion(double lambda, double pressure);
ExpansionResult t_sum_expansion(double lambda, double pressure, Coefficients coefficients = Coefficients::Corrected);

enum class PstarMode { Implicit, Quadratic };

/// Estimate of |P*| for the two-sink gluing.
double pstar_approx(double lambda, PstarMode mode, Coefficients coefficients = Coefficients::Corrected);

/// (lambda/2) int_0^1 w^((lambda-1)(z-1)-1/2) (1-w)^(z-3/2) (1-w^(lambda-1))^(1-z) dw.
double mellin_F(double lambda, double z, const QuadratureSpec& spec = {});

struct IdentityCheck {
  double lhs = 0.0;  // quadrature
  double rhs = 0.0;  // Gamma closed form
};

/// int_0^1 (t^(1/2-lambda) - t^(-1/2)) (1-t)^(-3/2) dt against 2 sqrt(pi) Gamma(lambda) tan(pi lambda) / Gamma(lambda - 1/2).
IdentityCheck beta_tangent_identity_check(double lambda, const QuadratureSpec& spec = {});

}  // namespace multisink
