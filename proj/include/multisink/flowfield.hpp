#pragma once

// Velocity r^(lambda-1) (-psi' e_r + lambda psi e_theta) of the homogeneous
// stream function r^lambda psi(theta), and the pseudo-velocity obtained by
// subtracting r / alpha e_r.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "multisink/gluing.hpp"

namespace multisink {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Polar {
  double r = 0.0;
  double theta = 0.0;
};

Polar to_polar(Vec2 point);
Vec2 to_cartesian(Polar point);

enum class FieldKind { Velocity, Pseudo };
enum class StagnationKind { Sink, Saddle };

std::string to_string(FieldKind kind);
std::string to_string(StagnationKind kind);
FieldKind parse_field_kind(const std::string& text);

using Matrix2 = std::array<std::array<double, 2>, 2>;
using Eigenvalues = std::array<std::complex<double>, 2>;

struct StagnationPoint {
  double angle = 0.0;
  double radius = 0.0;
  StagnationKind kind = StagnationKind::Sink;
  Eigenvalues eigenvalues{};  // NaN for the origin, where the field is not differentiable
};

struct BBox {
  double xmin = -1.0;
  double xmax = 1.0;
  double ymin = -1.0;
  double ymax = 1.0;

  void validate() const;
};

struct FieldSample {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

struct FieldGrid {
  BBox bbox;
  int nx = 0;
  int ny = 0;
  std::vector<FieldSample> samples;  // row-major, x fastest
};

Vec2 velocity(const PeriodicProfile& profile, Polar point);
Vec2 pseudo_velocity(const PeriodicProfile& profile, Polar point);
Vec2 field(const PeriodicProfile& profile, Vec2 point, FieldKind kind);

/// (lambda - 1) B / lambda sign(psi) |psi|^(1 - 2/lambda); the vorticity is r^(lambda-2) times this.
double vorticity_angular(const PeriodicProfile& profile, double theta);

/// Distance of the sinks from the origin, (alpha sqrt(-2P))^(1/alpha).
double sink_radius(double lambda, double pressure);

/// The origin saddle followed by one sink per descending knot (none when P = 0).
std::vector<StagnationPoint> stagnation_points(const PeriodicProfile& profile);

/// Central-difference Jacobian of the pseudo-velocity, with the stencil aligned to e_r and e_theta.
Matrix2 jacobian_fd(const PeriodicProfile& profile, Vec2 point, double h);

Eigenvalues eigenvalues(const Matrix2& m);

FieldGrid sample_grid(const PeriodicProfile& profile, const BBox& bbox, int nx, int ny, FieldKind kind);

}  // namespace multisink
