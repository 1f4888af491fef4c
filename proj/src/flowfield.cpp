#include "multisink/flowfield.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace multisink {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kKnotResolution = 1e-12;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t < kTwoPi ? t : 0.0;  // -tiny + 2 pi rounds up
}

// signed angular offset of b from a in (-pi, pi]
double angular_offset(double a, double b) {
  double d = std::fmod(b - a, kTwoPi);
  if (d > std::numbers::pi) d -= kTwoPi;
  if (d <= -std::numbers::pi) d += kTwoPi;
  return d;
}

}  // namespace

Polar to_polar(Vec2 p) { return {std::hypot(p.x, p.y), wrap_angle(std::atan2(p.y, p.x))}; }

Vec2 to_cartesian(Polar p) { return {p.r * std::cos(p.theta), p.r * std::sin(p.theta)}; }

std::string to_string(FieldKind kind) { return kind == FieldKind::Velocity ? "velocity" : "pseudo"; }

std::string to_string(StagnationKind kind) { return kind == StagnationKind::Sink ? "sink" : "saddle"; }

FieldKind parse_field_kind(const std::string& text) {
  if (text == "velocity") return FieldKind::Velocity;
  if (text == "pseudo") return FieldKind::Pseudo;
  throw DomainError("field must be velocity or pseudo, got '" + text + "'");
}

void BBox::validate() const {
  if (!std::isfinite(xmin) || !std::isfinite(xmax) || !std::isfinite(ymin) || !std::isfinite(ymax) ||
      xmin > xmax || ymin > ymax)
    throw DomainError("bounding box needs finite xmin <= xmax and ymin <= ymax");
}

Vec2 velocity(const PeriodicProfile& profile, Polar point) {
  if (!(point.r > 0)) return {};
  const auto pt = profile.evaluate(point.theta);
  const double scale = std::pow(point.r, profile.lambda - 1);
  const double ur = -scale * pt.dpsi;
  const double ut = scale * profile.lambda * pt.psi;
  const double c = std::cos(point.theta), s = std::sin(point.theta);
  return {ur * c - ut * s, ur * s + ut * c};
}

Vec2 pseudo_velocity(const PeriodicProfile& profile, Polar point) {
  if (!(point.r > 0)) return {};
  auto u = velocity(profile, point);
  const double drift = point.r / profile.alpha();
  u.x -= drift * std::cos(point.theta);
  u.y -= drift * std::sin(point.theta);
  return u;
}

Vec2 field(const PeriodicProfile& profile, Vec2 point, FieldKind kind) {
  const auto polar = to_polar(point);
  return kind == FieldKind::Velocity ? velocity(profile, polar) : pseudo_velocity(profile, polar);
}

double vorticity_angular(const PeriodicProfile& profile, double theta) {
  if (profile.knot_distance(theta) < kKnotResolution)
    throw KnotSingularity("vorticity diverges on the knot rays");
  const auto& piece = profile.pieces[profile.piece_index(theta)];
  const double psi = profile.evaluate(theta).psi;
  const double lam = profile.lambda;
  return (lam - 1) * piece.solution.branch_value() / lam * piece.sign * std::pow(std::abs(psi), 1 - 2 / lam);
}

double sink_radius(double lambda, double pressure) {
  const auto p = Parameters::make(lambda, pressure);
  return std::pow(p.alpha * std::sqrt(-2 * p.pressure), 1 / p.alpha);
}

Eigenvalues eigenvalues(const Matrix2& m) {
  const double half_trace = (m[0][0] + m[1][1]) / 2;
  const double half_gap = (m[0][0] - m[1][1]) / 2;
  const double disc = half_gap * half_gap + m[0][1] * m[1][0];
  if (disc >= 0) {
    const double root = std::sqrt(disc);
    // larger-magnitude root first, the other from the determinant
    const double big = half_trace + std::copysign(root, half_trace);
    const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const double small = big != 0 ? det / big : 0.0;
    return {std::complex<double>(big), std::complex<double>(small)};
  }
  const double root = std::sqrt(-disc);
  return {std::complex<double>(half_trace, root), std::complex<double>(half_trace, -root)};
}

Matrix2 jacobian_fd(const PeriodicProfile& profile, Vec2 point, double h) {
  if (!(h > 0) || !std::isfinite(h)) throw DomainError("finite-difference step must be positive");
  const auto polar = to_polar(point);
  if (!(h < polar.r)) throw StepTooLarge("finite-difference stencil reaches the origin");
  const double spread = std::atan2(h, polar.r);
  for (double knot : profile.knots) {
    const double d = std::abs(angular_offset(polar.theta, knot));
    if (d > kKnotResolution && d < spread) throw StepTooLarge("finite-difference stencil straddles a knot ray");
  }
  const Vec2 er{std::cos(polar.theta), std::sin(polar.theta)};
  const Vec2 et{-er.y, er.x};
  auto diff = [&](Vec2 dir) {
    const auto plus = pseudo_velocity(profile, to_polar({point.x + h * dir.x, point.y + h * dir.y}));
    const auto minus = pseudo_velocity(profile, to_polar({point.x - h * dir.x, point.y - h * dir.y}));
    return Vec2{(plus.x - minus.x) / (2 * h), (plus.y - minus.y) / (2 * h)};
  };
  const Vec2 dr = diff(er), dt = diff(et);
  // J = dr er^T + dt et^T
  Matrix2 j;
  j[0][0] = dr.x * er.x + dt.x * et.x;
  j[0][1] = dr.x * er.y + dt.x * et.y;
  j[1][0] = dr.y * er.x + dt.y * et.x;
  j[1][1] = dr.y * er.y + dt.y * et.y;
  return j;
}

std::vector<StagnationPoint> stagnation_points(const PeriodicProfile& profile) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<StagnationPoint> out;
  out.push_back({0.0, 0.0, StagnationKind::Saddle, {std::complex<double>(nan), std::complex<double>(nan)}});
  if (!(profile.pressure < 0)) return out;
  const double radius = sink_radius(profile.lambda, profile.pressure);
  for (std::size_t k : profile.descending_knots()) {
    const double angle = profile.knots[k];
    const auto j = jacobian_fd(profile, to_cartesian({radius, angle}), 1e-6 * radius);
    out.push_back({angle, radius, StagnationKind::Sink, eigenvalues(j)});
  }
  return out;
}

FieldGrid sample_grid(const PeriodicProfile& profile, const BBox& bbox, int nx, int ny, FieldKind kind) {
  bbox.validate();
  if (nx < 1 || ny < 1) throw DomainError("grid resolution must be positive");
  FieldGrid grid{bbox, nx, ny, {}};
  grid.samples.reserve(static_cast<std::size_t>(nx) * ny);
  auto node = [](double lo, double hi, int n, int i) {
    if (n == 1) return (lo + hi) / 2;
    return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1);
  };
  for (int j = 0; j < ny; ++j) {
    const double y = node(bbox.ymin, bbox.ymax, ny, j);
    for (int i = 0; i < nx; ++i) {
      const double x = node(bbox.xmin, bbox.xmax, nx, i);
      const auto f = field(profile, {x, y}, kind);
      grid.samples.push_back({x, y, f.x, f.y});
    }
  }
  return grid;
}

}  // namespace multisink
