#include "multisink/local_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "orbit.hpp"

namespace multisink {

namespace {

constexpr double kPi = std::numbers::pi;

// Node data on the rising half, parametrized by phi with s = sin(phi).
struct Node {
  double phi;
  double s;
  double c;
  double theta;
};

double complement_of(double phi) {
  if (phi < kPi / 4) return 1 - std::sin(phi);
  const double h = std::sin((kPi / 2 - phi) / 2);
  return 2 * h * h;
}

}  // namespace

struct LocalSolution::Impl {
  detail::Orbit<double> orbit;
  std::vector<Node> nodes;
  QuadratureSpec spec;
  double half = 0;  // theta at the turning point

  double theta_from(std::size_t j, double s, double c) const {
    return nodes[j].theta + orbit.theta_between(nodes[j].s, s, c, spec);
  }
};

Parameters Parameters::make(double lambda, double pressure) {
  if (!std::isfinite(lambda) || !(lambda > 1.0 && lambda < 2.0))
    throw DomainError("lambda must lie in the open interval (1, 2), got " + std::to_string(lambda));
  if (!std::isfinite(pressure) || pressure > 0.0)
    throw DomainError("pressure must be finite and <= 0, got " + std::to_string(pressure));
  return Parameters{lambda, 2.0 - lambda, pressure};
}

double amplitude(Branch branch, const Parameters& params) {
  const auto p = Parameters::make(params.lambda, params.pressure);
  const detail::Wide l = p.lambda;
  const detail::Wide mp = -detail::Wide(p.pressure);
  if (branch == Branch::Plus) {
    const auto shape = detail::solve_plus_shape<detail::Wide>(l, mp);
    return static_cast<double>(std::pow(l * l * shape.w, -l / 2));
  }
  return static_cast<double>(std::pow(detail::solve_minus_scale<detail::Wide>(l, mp), l));
}

double period(Branch branch, const Parameters& params, const QuadratureSpec& spec) {
  spec.validate();
  const auto p = Parameters::make(params.lambda, params.pressure);
  if (p.pressure == 0.0) return branch == Branch::Plus ? kPi : 0.0;
  const detail::Wide l = p.lambda;
  const detail::Wide mp = -detail::Wide(p.pressure);
  if (branch == Branch::Plus) {
    const auto shape = detail::solve_plus_shape<detail::Wide>(l, mp);
    return static_cast<double>(std::numbers::pi_v<detail::Wide> - detail::plus_deficit<detail::Wide>(l, shape.a, spec));
  }
  return static_cast<double>(detail::minus_period<detail::Wide>(l, detail::solve_minus_scale<detail::Wide>(l, mp), spec));
}

LocalSolution reconstruct(Branch branch, const Parameters& params, int n_samples, const QuadratureSpec& spec) {
  spec.validate();
  const auto p = Parameters::make(params.lambda, params.pressure);
  if (!(p.pressure < 0.0)) throw DomainError("reconstruct requires a strictly negative pressure");
  if (n_samples < 16) throw DomainError("reconstruct requires at least 16 samples");

  const detail::Wide l = p.lambda;
  const detail::Wide mp = -detail::Wide(p.pressure);
  const auto wide = detail::Orbit<detail::Wide>::make(branch == Branch::Plus, l, mp);

  auto impl = std::make_shared<LocalSolution::Impl>();
  impl->spec = spec;
  auto& orbit = impl->orbit;
  orbit.plus = wide.plus;
  orbit.lambda = p.lambda;
  orbit.kappa = static_cast<double>(wide.kappa);
  orbit.shape = {static_cast<double>(wide.shape.a), static_cast<double>(wide.shape.w)};
  orbit.b = static_cast<double>(wide.b);
  orbit.amplitude = static_cast<double>(wide.amplitude);

  // Chebyshev points in s = psi / amplitude.
  const int m = std::max(8, (n_samples + 1) / 2);
  impl->nodes.reserve(m + 1);
  for (int j = 0; j <= m; ++j) {
    const double angle = kPi * j / (2.0 * m);
    const double s = j == m ? 1.0 : std::pow(std::sin(angle), 2);
    const double c = j == 0 ? 1.0 : std::pow(std::cos(angle), 2);
    const double phi = s < 0.5 ? std::asin(s) : kPi / 2 - 2 * std::asin(std::sqrt(c / 2));
    double theta = 0;
    if (j > 0) theta = impl->theta_from(j - 1, s, c);
    impl->nodes.push_back({phi, s, c, theta});
  }
  impl->half = impl->nodes.back().theta;

  LocalSolution sol;
  sol.branch_ = branch;
  sol.params_ = p;
  sol.lifespan_ = period(branch, p, spec);
  sol.amplitude_ = orbit.amplitude;
  sol.impl_ = impl;

  auto& out = sol.samples_;
  out.reserve(2 * m + 1);
  for (const auto& n : impl->nodes) out.push_back({n.theta, orbit.amplitude * n.s, orbit.speed(n.s, n.c)});
  out.back().dpsi = 0.0;
  for (int j = m - 1; j >= 0; --j) {
    const auto& n = impl->nodes[j];
    out.push_back({sol.lifespan_ - n.theta, orbit.amplitude * n.s, -orbit.speed(n.s, n.c)});
  }
  out.back().theta = sol.lifespan_;
  return sol;
}

LocalSolution shear_solution(double lambda, int n_samples) {
  const auto p = Parameters::make(lambda, 0.0);
  if (n_samples < 2) throw DomainError("shear_solution requires at least 2 samples");
  LocalSolution sol;
  sol.branch_ = Branch::Plus;
  sol.params_ = p;
  sol.lifespan_ = kPi;
  sol.amplitude_ = std::pow(lambda, -lambda);
  for (int j = 0; j < n_samples; ++j) {
    const double theta = j == n_samples - 1 ? kPi : kPi * j / (n_samples - 1);
    const auto pt = sol.at(theta);
    sol.samples_.push_back({theta, pt.psi, pt.dpsi});
  }
  return sol;
}

PhasePoint LocalSolution::rising(double tau) const {
  const auto& im = *impl_;
  const auto& orbit = im.orbit;
  if (!(tau > 0)) return {0.0, orbit.speed(0.0, 1.0)};
  if (tau >= im.half) return {orbit.amplitude, 0.0};

  const auto& nodes = im.nodes;
  auto it = std::upper_bound(nodes.begin(), nodes.end(), tau, [](double t, const Node& n) { return t < n.theta; });
  const std::size_t j = static_cast<std::size_t>(it - nodes.begin()) - 1;
  double lo = nodes[j].phi, hi = nodes[j + 1].phi;
  const double t_lo = nodes[j].theta, t_hi = nodes[j + 1].theta;

  double phi = lo + (hi - lo) * (tau - t_lo) / (t_hi - t_lo);
  double s = std::sin(phi), c = complement_of(phi);
  for (int iter = 0; iter < 60; ++iter) {
    const double g = im.theta_from(j, s, c) - tau;
    if (g == 0) break;
    if (g < 0)
      lo = phi;
    else
      hi = phi;
    const double rate = orbit.theta_rate(s, c, kPi / 2 - phi);
    double next = phi - g / rate;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    const double step = std::abs(next - phi);
    phi = next;
    s = std::sin(phi);
    c = complement_of(phi);
    if (step <= 4 * std::numeric_limits<double>::epsilon() * phi || hi - lo <= 4 * std::numeric_limits<double>::epsilon() * phi)
      break;
  }
  return {orbit.amplitude * s, orbit.speed(s, c)};
}

PhasePoint LocalSolution::at(double theta) const {
  theta = std::clamp(theta, 0.0, lifespan_);
  if (!impl_) {
    const double lam = params_.lambda;
    const double sn = std::sin(theta);
    return {std::pow(lam, -lam) * std::pow(sn, lam), std::pow(lam, 1 - lam) * std::pow(sn, lam - 1) * std::cos(theta)};
  }
  if (theta <= lifespan_ / 2) return rising(theta);
  const auto pt = rising(lifespan_ - theta);
  return {pt.psi, -pt.dpsi};
}

PhasePoint LocalSolution::at_from_end(double delta) const {
  delta = std::clamp(delta, 0.0, lifespan_);
  if (!impl_) {
    const double lam = params_.lambda;
    const double sn = std::sin(delta);
    return {std::pow(lam, -lam) * std::pow(sn, lam), -std::pow(lam, 1 - lam) * std::pow(sn, lam - 1) * std::cos(delta)};
  }
  if (delta <= lifespan_ / 2) {
    const auto pt = rising(delta);
    return {pt.psi, -pt.dpsi};
  }
  return rising(lifespan_ - delta);
}

double first_integral(double psi, double dpsi, double pressure, double lambda) {
  return (2 * pressure + dpsi * dpsi + lambda * lambda * psi * psi) * std::pow(psi, 2 / lambda - 2);
}

double first_integral_residual(const std::vector<Sample>& samples, int branch_value, double pressure, double lambda) {
  double worst = 0;
  for (const auto& s : samples)
    if (s.psi > 0) worst = std::max(worst, std::abs(first_integral(s.psi, s.dpsi, pressure, lambda) - branch_value));
  return worst;
}

double first_integral_residual(const LocalSolution& solution) {
  return first_integral_residual(solution.samples(), solution.branch_value(), solution.params().pressure,
                                 solution.params().lambda);
}

}  // namespace multisink
