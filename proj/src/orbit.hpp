#pragma once

// Phase-plane geometry of the maximal positive local solutions.
//
// Writing psi = x s with x the amplitude, the first integral turns into
// (psi')^2 = x^2 Q(s) with
//   Plus:  Q = lambda^2 (D0 + a E)
//   Minus: Q = (lambda^2 b^2 (1 - s^2) + E) / b^2
// where D0 = s^k - s^2, E = 1 - s^k, k = 2 - 2/lambda, a = 1 - x^(-2/lambda)/lambda^2
// and b = x^(1/lambda).  Every routine takes s together with its exact
// complement c = 1 - s so that the square-root turning point at s = 1 is
// evaluated without cancellation.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "multisink/numerics.hpp"

namespace multisink::detail {

template <std::floating_point Real>
Real log_unit(Real s, Real c) {
  return s < Real(0.5) ? std::log(s) : std::log1p(-c);
}

// (1 - s^p) / c, continuous at c = 0.
template <std::floating_point Real>
Real one_minus_power_ratio(Real p, Real s, Real c) {
  if (c == 0) return p;
  return -std::expm1(p * log_unit(s, c)) / c;
}

template <std::floating_point Real>
struct PlusShape {
  Real a = 0;  // (lambda^2 - x^(-2/lambda)) / lambda^2
  Real w = 1;  // 1 - a
};

template <std::floating_point Real>
Real tight_tolerance() {
  return 8 * std::numeric_limits<Real>::epsilon();
}

// Solves a = q (1 - a)^lambda, q = 2 |P| lambda^(2 lambda - 2), in the variable
// v = ln(a / (1 - a)):  v + (lambda - 1) ln(1 + e^v) = ln q.
template <std::floating_point Real>
PlusShape<Real> solve_plus_shape(Real lambda, Real minus_p) {
  if (minus_p == 0) return {};
  const Real log_q = std::log(2 * minus_p) + (2 * lambda - 2) * std::log(lambda);
  const Real ln2 = std::numbers::ln2_v<Real>;
  const Real hi = log_q + 1;
  const Real shifted = log_q - (lambda - 1) * ln2;
  const Real lo = std::min(shifted, shifted / lambda) - 1;
  auto objective = [&](Real v) { return v + (lambda - 1) * std::log1p(std::exp(v)) - log_q; };
  const Real v = find_root_t<Real>(objective, lo, hi, tight_tolerance<Real>(), tight_tolerance<Real>(), 400);
  const Real r = std::exp(v);
  return {r / (1 + r), 1 / (1 + r)};
}

// Solves b^(2 lambda - 2) (1 + lambda^2 b^2) = 2 |P| in u = ln b.
template <std::floating_point Real>
Real solve_minus_scale(Real lambda, Real minus_p) {
  if (minus_p == 0) return 0;
  const Real target = std::log(2 * minus_p);
  const Real ln2 = std::numbers::ln2_v<Real>;
  const Real two_log_lambda = 2 * std::log(lambda);
  const Real hi = std::min(target / (2 * lambda - 2), (target - two_log_lambda) / (2 * lambda)) + 1;
  const Real lo =
      std::min((target - ln2) / (2 * lambda - 2), (target - ln2 - two_log_lambda) / (2 * lambda)) - 1;
  auto objective = [&](Real u) {
    return (2 * lambda - 2) * u + std::log1p(lambda * lambda * std::exp(2 * u)) - target;
  };
  return std::exp(find_root_t<Real>(objective, lo, hi, tight_tolerance<Real>(), tight_tolerance<Real>(), 400));
}

// Interior breakpoints for Plus integrands: the transition s^k ~ a is resolved
// by pieces that grow geometrically in s^k, followed by a split at 1/2.
template <std::floating_point Real>
std::vector<Real> plus_breakpoints(Real a, Real kappa) {
  std::vector<Real> points;
  if (a > 0) {
    for (Real level = a;; level *= 8) {
      const Real s = std::pow(level, 1 / kappa);
      if (!(s < Real(0.5))) break;
      if (s > 0 && (points.empty() || s > points.back())) points.push_back(s);
    }
  }
  points.push_back(Real(0.5));
  return points;
}

template <std::floating_point Real>
struct Orbit {
  bool plus = true;
  Real lambda = 1.5;
  Real kappa = Real(2) / 3;
  PlusShape<Real> shape;  // Plus only
  Real b = 0;             // Minus only
  Real amplitude = 0;

  static Orbit make(bool plus, Real lambda, Real minus_p) {
    Orbit o;
    o.plus = plus;
    o.lambda = lambda;
    o.kappa = 2 - 2 / lambda;
    if (plus) {
      o.shape = solve_plus_shape<Real>(lambda, minus_p);
      o.amplitude = std::pow(lambda * lambda * o.shape.w, -lambda / 2);
    } else {
      o.b = solve_minus_scale<Real>(lambda, minus_p);
      o.amplitude = std::pow(o.b, lambda);
    }
    return o;
  }

  // Q(s) / c, finite at the turning point s = 1.
  Real q_over_c(Real s, Real c) const {
    const Real e = one_minus_power_ratio(kappa, s, c);
    if (plus) {
      const Real sk = std::exp(kappa * log_unit(s, c));
      const Real d0 = sk * one_minus_power_ratio(2 / lambda, s, c);
      return lambda * lambda * (d0 + shape.a * e);
    }
    return (lambda * lambda * b * b * (1 + s) + e) / (b * b);
  }

  Real q(Real s, Real c) const {
    const Real e = -std::expm1(kappa * log_unit(s, c));
    if (plus) {
      const Real ls = log_unit(s, c);
      const Real d0 = std::exp(kappa * ls) * -std::expm1((2 / lambda) * ls);
      return lambda * lambda * (d0 + shape.a * e);
    }
    return (lambda * lambda * b * b * c * (1 + s) + e) / (b * b);
  }

  /// d theta / d s.
  Real inv_slope(Real s, Real c) const {
    if (plus) return 1 / std::sqrt(q(s, c));
    const Real e = -std::expm1(kappa * log_unit(s, c));
    return b / std::sqrt(lambda * lambda * b * b * c * (1 + s) + e);
  }

  /// |psi'| at psi = amplitude * s.
  Real speed(Real s, Real c) const {
    if (plus) return amplitude * std::sqrt(q(s, c));
    const Real e = -std::expm1(kappa * log_unit(s, c));
    return std::pow(b, lambda - 1) * std::sqrt(lambda * lambda * b * b * c * (1 + s) + e);
  }

  /// d theta / d phi for s = sin(phi), with eps = pi/2 - phi.
  Real theta_rate(Real s, Real c, Real eps) const {
    return std::numbers::sqrt2_v<Real> * std::cos(eps / 2) / std::sqrt(q_over_c(s, c));
  }

  /// theta(s_hi) - theta(s_lo) along the rising half of the orbit.
  Real theta_between(Real lo, Real hi, Real hi_c, const QuadratureSpec& spec) const {
    if (!(hi > lo)) return 0;
    std::vector<Real> cuts;
    if (plus)
      for (Real p : plus_breakpoints(shape.a, kappa))
        if (p > lo && p < hi) cuts.push_back(p);
    Real total = 0;
    Real a = lo;
    for (std::size_t i = 0; i <= cuts.size(); ++i) {
      const Real z = i < cuts.size() ? cuts[i] : hi;
      const Real z_c = i < cuts.size() ? 1 - z : hi_c;
      total += tanh_sinh<Real>([&](Real s, Real, Real gap_hi) { return inv_slope(s, z_c + gap_hi); }, a, z, spec)
                   .value;
      a = z;
    }
    return total;
  }
};

/// pi - T_+, written as a positive integrand.
template <std::floating_point Real>
Real plus_deficit(Real lambda, Real a, const QuadratureSpec& spec) {
  if (a == 0) return 0;
  const Real kappa = 2 - 2 / lambda;
  const auto cuts = plus_breakpoints(a, kappa);
  auto integrand = [&](Real s, Real c) -> Real {
    const Real ls = log_unit(s, c);
    const Real ek = -std::expm1(kappa * ls);
    const Real d0 = std::exp(kappa * ls) * -std::expm1((2 / lambda) * ls);
    const Real shifted = d0 + a * ek;
    const Real r0 = std::sqrt(d0), r1 = std::sqrt(shifted);
    return (2 / lambda) * a * ek / (r0 * r1 * (r0 + r1));
  };
  return integrate_unit<Real>(integrand, std::span<const Real>(cuts), spec).value;
}

template <std::floating_point Real>
Real minus_period(Real lambda, Real b, const QuadratureSpec& spec) {
  if (b == 0) return 0;
  const Real kappa = 2 - 2 / lambda;
  const Real cuts[] = {Real(0.5)};
  auto integrand = [&](Real s, Real c) -> Real {
    const Real e = -std::expm1(kappa * log_unit(s, c));
    return 2 * b / std::sqrt(lambda * lambda * b * b * c * (1 + s) + e);
  };
  return integrate_unit<Real>(integrand, std::span<const Real>(cuts), spec).value;
}

using Wide = long double;

struct PeriodParts {
  Wide plus_deficit = 0;  // pi - T_+
  Wide minus = 0;         // T_-
};

inline PeriodParts period_parts(double lambda, double pressure, const QuadratureSpec& spec) {
  const Wide l = lambda;
  const Wide mp = -Wide(pressure);
  PeriodParts parts;
  parts.plus_deficit = plus_deficit<Wide>(l, solve_plus_shape<Wide>(l, mp).a, spec);
  parts.minus = minus_period<Wide>(l, solve_minus_scale<Wide>(l, mp), spec);
  return parts;
}

}  // namespace multisink::detail
