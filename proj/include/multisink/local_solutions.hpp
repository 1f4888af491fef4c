#pragma once

// Maximal positive solutions of
//   (psi')^2 = -2P + B |psi|^(2 - 2/lambda) - lambda^2 psi^2,   B = +1 (Plus) or -1 (Minus),
// vanishing at both ends of their lifespan.

#include <memory>
#include <vector>

#include "multisink/numerics.hpp"

namespace multisink {

struct Parameters {
  double lambda = 1.5;
  double alpha = 0.5;  // 2 - lambda
  double pressure = 0.0;

  /// Validates 1 < lambda < 2 and pressure <= 0.
  static Parameters make(double lambda, double pressure);
};

enum class Branch { Plus, Minus };

constexpr int branch_value(Branch branch) { return branch == Branch::Plus ? 1 : -1; }
constexpr char branch_token(Branch branch) { return branch == Branch::Plus ? 'P' : 'M'; }

struct Sample {
  double theta = 0.0;
  double psi = 0.0;
  double dpsi = 0.0;
};

struct PhasePoint {
  double psi = 0.0;
  double dpsi = 0.0;
};

class LocalSolution {
 public:
  Branch branch() const { return branch_; }
  int branch_value() const { return multisink::branch_value(branch_); }
  const Parameters& params() const { return params_; }
  double lifespan() const { return lifespan_; }
  double amplitude() const { return amplitude_; }
  const std::vector<Sample>& samples() const { return samples_; }
  bool is_shear() const { return impl_ == nullptr; }

  /// (psi, psi') at theta in [0, lifespan]; arguments outside are clamped.
  PhasePoint at(double theta) const;
  /// (psi, psi') at lifespan - delta, exact for small delta.
  PhasePoint at_from_end(double delta) const;

  struct Impl;

 private:
  friend LocalSolution reconstruct(Branch, const Parameters&, int, const QuadratureSpec&);
  friend LocalSolution shear_solution(double, int);

  PhasePoint rising(double tau) const;

  Branch branch_ = Branch::Plus;
  Parameters params_;
  double lifespan_ = 0.0;
  double amplitude_ = 0.0;
  std::vector<Sample> samples_;
  std::shared_ptr<const Impl> impl_;
};

/// x_+ or x_-, the maximum of the local solution.
double amplitude(Branch branch, const Parameters& params);

/// Lifespan T_+ or T_- in radians.
double period(Branch branch, const Parameters& params, const QuadratureSpec& spec = {});

/// Samples the local solution at roughly n_samples angles (P < 0, n_samples >= 16).
LocalSolution reconstruct(Branch branch, const Parameters& params, int n_samples,
                          const QuadratureSpec& spec = {});

/// The P = 0 Plus solution lambda^(-lambda) sin(theta)^lambda on [0, pi].
LocalSolution shear_solution(double lambda, int n_samples);

/// (2P + psi'^2 + lambda^2 psi^2) psi^(2/lambda - 2), equal to B along a solution.
double first_integral(double psi, double dpsi, double pressure, double lambda);

/// Largest deviation of the first integral from B over samples with psi > 0.
double first_integral_residual(const LocalSolution& solution);
double first_integral_residual(const std::vector<Sample>& samples, int branch_value, double pressure,
                               double lambda);

}  // namespace multisink
