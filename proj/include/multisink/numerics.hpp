#pragma once

// Numerical kernels shared by the whole library: double-exponential
// quadrature for integrands with algebraic endpoint singularities, the
// logarithm of the Gamma function, and bracketed scalar root finding.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "multisink/errors.hpp"

namespace multisink {

struct QuadratureSpec {
  double relative_tolerance = 1e-11;
  /// Number of step halvings of the tanh-sinh rule (at most kMaxQuadratureLevels).
  int max_levels = 10;
  double absolute_floor = 1e-15;

  void validate() const;
};

inline constexpr int kMaxQuadratureLevels = 12;

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

enum class RootMethod {
  Brent,      ///< bisection safeguarded by inverse quadratic / secant steps
  Bisection,  ///< plain bisection
};

struct BracketedRootSpec {
  double lower = 0.0;
  double upper = 1.0;
  double relative_tolerance = 1e-12;
  int max_iterations = 200;
  double absolute_tolerance = 0.0;
  RootMethod method = RootMethod::Brent;

  void validate() const;
};

namespace detail {

template <std::floating_point Real>
struct TanhSinhNode {
  Real e;  // half-width-relative distance of the node to its nearest endpoint
  Real w;  // tanh-sinh weight
};

// Abscissae and weights for t > 0, one vector per refinement level.  Level 0
// holds t = 1, 2, ...; level k >= 1 holds the odd multiples of 2^-k.
template <std::floating_point Real>
struct TanhSinhTable {
  std::vector<std::vector<TanhSinhNode<Real>>> levels;
  std::vector<std::vector<Real>> abscissa;

  TanhSinhTable() {
    constexpr Real half_pi = std::numbers::pi_v<Real> / 2;
    // stop once the endpoint distance can no longer be represented
    const Real smallest = std::numeric_limits<Real>::min() / std::numeric_limits<Real>::epsilon();
    auto make = [&](Real t) {
      const Real u = half_pi * std::sinh(t);
      const Real ex = std::exp(-2 * u);
      const Real e = 2 * ex / (1 + ex);
      const Real sech = 2 * std::exp(-u) / (1 + ex);
      return TanhSinhNode<Real>{e, half_pi * std::cosh(t) * sech * sech};
    };
    Real t_max = 1;
    while (make(t_max + 1).e > smallest) t_max += 1;
    levels.resize(kMaxQuadratureLevels + 1);
    abscissa.resize(kMaxQuadratureLevels + 1);
    for (int k = 0; k <= kMaxQuadratureLevels; ++k) {
      const Real h = std::ldexp(Real(1), -k);
      for (long j = 1;; j += (k == 0 ? 1 : 2)) {
        const Real t = j * h;
        if (t > t_max) break;
        auto node = make(t);
        if (!(node.e > 0)) break;
        levels[k].push_back(node);
        abscissa[k].push_back(t);
      }
    }
  }
};

template <std::floating_point Real>
const TanhSinhTable<Real>& tanh_sinh_table() {
  static const TanhSinhTable<Real> table;
  return table;
}

}  // namespace detail

template <std::floating_point Real>
struct Estimate {
  Real value = 0;
  Real error = 0;
};

/// Tanh-sinh quadrature of f over [lo, hi].
///
/// The integrand is called as f(x, x - lo, hi - x) where both gaps are exact
/// even when x rounds onto an endpoint, so f can evaluate factors like
/// (1 - s)^p without cancellation.  Singular endpoints are never sampled.
template <std::floating_point Real, class F>
Estimate<Real> tanh_sinh(F&& f, Real lo, Real hi, const QuadratureSpec& spec) {
  if (!(hi > lo)) return {};
  const auto& table = detail::tanh_sinh_table<Real>();
  const Real width = hi - lo;
  const Real half = width / 2;
  const int max_levels = std::clamp(spec.max_levels, 3, kMaxQuadratureLevels);

  auto term_lo = [&](const detail::TanhSinhNode<Real>& n) -> Real {
    const Real gap = half * n.e;
    if (!(gap > 0)) return 0;
    return n.w * f(lo + gap, gap, width - gap);
  };
  auto term_hi = [&](const detail::TanhSinhNode<Real>& n) -> Real {
    const Real gap = half * n.e;
    if (!(gap > 0)) return 0;
    return n.w * f(hi - gap, width - gap, gap);
  };

  // Level 0 also decides how far each tail has to be followed.
  Real sum = (std::numbers::pi_v<Real> / 2) * f(lo + half, half, half);
  const auto& base = table.levels[0];
  std::vector<Real> lo_terms(base.size()), hi_terms(base.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    lo_terms[i] = term_lo(base[i]);
    hi_terms[i] = term_hi(base[i]);
    sum += lo_terms[i] + hi_terms[i];
  }
  const Real negligible = std::abs(sum) * std::numeric_limits<Real>::epsilon() * Real(1e-6);
  auto last_significant = [&](const std::vector<Real>& terms) {
    Real cut = 1;
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (std::abs(terms[i]) > negligible) cut = table.abscissa[0][i];
    return cut + 1;
  };
  const Real cut_lo = last_significant(lo_terms);
  const Real cut_hi = last_significant(hi_terms);

  Real previous = sum * half;
  for (int k = 1; k <= max_levels; ++k) {
    const auto& nodes = table.levels[k];
    const auto& ts = table.abscissa[k];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (ts[i] <= cut_lo) sum += term_lo(nodes[i]);
      if (ts[i] <= cut_hi) sum += term_hi(nodes[i]);
    }
    const Real current = std::ldexp(sum, -k) * half;
    if (!std::isfinite(current)) throw NonConvergence("tanh-sinh: integrand produced a non-finite value");
    const Real err = std::abs(current - previous);
    previous = current;
    if (k >= 3 && err <= std::max<Real>(Real(spec.relative_tolerance) * std::abs(current),
                                        Real(spec.absolute_floor)))
      return {current, err};
  }
  throw NonConvergence("tanh-sinh: tolerance not met after " + std::to_string(max_levels) + " levels");
}

/// Integrates f over (0, 1) split at the given interior breakpoints.
///
/// f is called as f(s, 1 - s) with the complement computed exactly near the
/// right endpoint.  Breakpoints must be strictly increasing inside (0, 1).
template <std::floating_point Real, class F>
Estimate<Real> integrate_unit(F&& f, std::span<const Real> breakpoints, const QuadratureSpec& spec) {
  Estimate<Real> total;
  Real lo = 0;
  for (std::size_t i = 0; i <= breakpoints.size(); ++i) {
    const Real hi = i < breakpoints.size() ? breakpoints[i] : Real(1);
    const Real hi_complement = i < breakpoints.size() ? 1 - hi : Real(0);
    auto piece = tanh_sinh<Real>([&](Real x, Real, Real gap_hi) { return f(x, hi_complement + gap_hi); },
                                 lo, hi, spec);
    total.value += piece.value;
    total.error += piece.error;
    lo = hi;
  }
  return total;
}

/// Improper integral over (0, 1) of an integrand behaving like
/// s^left_exponent at 0 and (1 - s)^right_exponent at 1.
///
/// The transform does not need the exponents; they are checked to reject
/// divergent integrals up front.  f may take (s) or (s, 1 - s).
template <class F>
QuadratureResult integrate_singular(F&& f, double left_exponent, double right_exponent,
                                    const QuadratureSpec& spec = {},
                                    std::span<const double> breakpoints = {}) {
  spec.validate();
  if (!(left_exponent > -1.0) || !(right_exponent > -1.0))
    throw DomainError("integrate_singular: endpoint exponents must exceed -1");
  auto wrapped = [&](double s, double complement) -> double {
    if constexpr (std::invocable<F&, double, double>)
      return f(s, complement);
    else
      return f(s);
  };
  auto r = integrate_unit<double>(wrapped, breakpoints, spec);
  return {r.value, r.error};
}

template <std::floating_point Real>
Real log_gamma_t(Real x);

/// Natural logarithm of Gamma(x) for x > 0.
double log_gamma(double x);

/// Root of a continuous objective inside a sign-changing bracket.
template <std::floating_point Real, class F>
Real find_root_t(F&& objective, Real lower, Real upper, Real relative_tolerance, Real absolute_tolerance,
                 int max_iterations, RootMethod method = RootMethod::Brent) {
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  Real a = lower, b = upper;
  Real fa = objective(a), fb = objective(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (std::isnan(fa) || std::isnan(fb)) throw DomainError("find_root: objective is NaN at the bracket");
  if ((fa > 0) == (fb > 0)) throw NoSignChange("find_root: objective has the same sign at both bracket ends");

  Real c = a, fc = fa;
  Real d = b - a, e = d;
  for (int iter = 0; iter < max_iterations; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Real tol = 2 * eps * std::abs(b) + (relative_tolerance * std::abs(b) + absolute_tolerance) / 2;
    const Real xm = (c - b) / 2;
    if (std::abs(xm) <= tol || fb == 0) return b;

    if (method == RootMethod::Brent && std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      Real p, q;
      const Real s = fb / fa;
      if (a == c) {
        p = 2 * xm * s;
        q = 1 - s;
      } else {
        const Real qa = fa / fc, r = fb / fc;
        p = s * (2 * xm * qa * (qa - r) - (b - a) * (r - 1));
        q = (qa - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q;
      p = std::abs(p);
      const Real bound = std::min(3 * xm * q - std::abs(tol * q), std::abs(e * q));
      if (2 * p < bound) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : std::copysign(tol, xm);
    fb = objective(b);
    if (std::isnan(fb)) throw DomainError("find_root: objective returned NaN");
  }
  throw NonConvergence("find_root: iteration budget exhausted");
}

template <class F>
double find_root(F&& objective, const BracketedRootSpec& spec) {
  spec.validate();
  return find_root_t<double>(objective, spec.lower, spec.upper, spec.relative_tolerance,
                             spec.absolute_tolerance, spec.max_iterations, spec.method);
}

}  // namespace multisink
