#include "multisink/gluing.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "orbit.hpp"

namespace multisink {

namespace {

using detail::Wide;
constexpr double kTwoPi = 2 * std::numbers::pi;

Wide excess(int n_plus, int n_minus, const detail::PeriodParts& parts) {
  const Wide pi = std::numbers::pi_v<Wide>;
  return (n_plus - 2) * pi - n_plus * parts.plus_deficit + n_minus * parts.minus;
}

struct ScanGrid {
  std::vector<double> log_minus_p;
  std::vector<detail::PeriodParts> parts;
};

ScanGrid make_grid(double lambda, const QuadratureSpec& quad, const PressureScan& scan) {
  ScanGrid grid;
  const double lo = std::log(scan.minus_p_min), hi = std::log(scan.minus_p_max);
  for (int j = 0; j < scan.points; ++j) {
    const double u = scan.points == 1 ? lo : lo + (hi - lo) * j / (scan.points - 1);
    grid.log_minus_p.push_back(u);
    grid.parts.push_back(detail::period_parts(lambda, -std::exp(u), quad));
  }
  return grid;
}

CriticalPressure solve_on_grid(int n_plus, int n_minus, double lambda, const ScanGrid& grid,
                               const QuadratureSpec& quad, const PressureScan& scan) {
  CriticalPressure out;
  out.scan_lower = -scan.minus_p_max;
  out.scan_upper = -scan.minus_p_min;
  if (n_plus == 2 && n_minus == 0) {
    out.status = SolveStatus::DegenerateShear;
    return out;
  }
  std::optional<std::size_t> first;
  for (std::size_t j = 0; j + 1 < grid.parts.size(); ++j) {
    const bool a = excess(n_plus, n_minus, grid.parts[j]) > 0;
    const bool b = excess(n_plus, n_minus, grid.parts[j + 1]) > 0;
    if (a != b) {
      ++out.root_count;
      if (!first) first = j;
    }
  }
  if (!first) return out;

  auto objective = [&](double u) {
    return static_cast<double>(excess(n_plus, n_minus, detail::period_parts(lambda, -std::exp(u), quad)));
  };
  const double u = find_root_t<double>(objective, grid.log_minus_p[*first], grid.log_minus_p[*first + 1], 1e-15,
                                       1e-14, 300);
  out.status = SolveStatus::Found;
  out.pressure = -std::exp(u);
  out.residual = objective(u);
  return out;
}

void check_lambda(double lambda) { Parameters::make(lambda, 0.0); }

}  // namespace

GluingSpec GluingSpec::parse(std::string_view text) {
  GluingSpec spec;
  std::string token;
  auto flush = [&]() {
    if (token == "P")
      spec.sequence.push_back(Branch::Plus);
    else if (token == "M")
      spec.sequence.push_back(Branch::Minus);
    else
      throw DomainError("gluing token must be P or M, got '" + token + "'");
    token.clear();
  };
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == ',')
      flush();
    else
      token.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  flush();
  spec.validate();
  return spec;
}

GluingSpec GluingSpec::from_counts(int n_plus, int n_minus) {
  GluingSpec spec;
  spec.sequence.assign(n_plus, Branch::Plus);
  spec.sequence.insert(spec.sequence.end(), n_minus, Branch::Minus);
  spec.validate();
  return spec;
}

std::string GluingSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (i) out.push_back(',');
    out.push_back(branch_token(sequence[i]));
  }
  return out;
}

int GluingSpec::count(Branch branch) const {
  return static_cast<int>(std::count(sequence.begin(), sequence.end(), branch));
}

bool GluingSpec::is_shear() const { return sequence.size() == 2 && count(Branch::Plus) == 2; }

void GluingSpec::validate() const {
  if (sequence.size() < 2 || sequence.size() % 2 != 0)
    throw DomainError("a gluing needs an even number of at least two pieces");
}

void PressureScan::validate() const {
  if (!(minus_p_min > 0) || !(minus_p_max > minus_p_min) || !std::isfinite(minus_p_max))
    throw DomainError("pressure scan needs 0 < minus_p_min < minus_p_max");
  if (points < 2) throw DomainError("pressure scan needs at least two points");
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Found: return "Found";
    case SolveStatus::NoRoot: return "NoRoot";
    case SolveStatus::DegenerateShear: return "DegenerateShear";
  }
  return "?";
}

std::string to_string(Solvability solvability) {
  switch (solvability) {
    case Solvability::Yes: return "yes";
    case Solvability::No: return "no";
    case Solvability::Degenerate: return "degenerate";
  }
  return "?";
}

double period_sum(int n_plus, int n_minus, const Parameters& params, const QuadratureSpec& quad) {
  quad.validate();
  const auto p = Parameters::make(params.lambda, params.pressure);
  if (n_plus < 0 || n_minus < 0) throw DomainError("piece counts must be nonnegative");
  if (p.pressure == 0.0) return n_plus * std::numbers::pi;
  const auto parts = detail::period_parts(p.lambda, p.pressure, quad);
  return static_cast<double>(excess(n_plus, n_minus, parts) + 2 * std::numbers::pi_v<Wide>);
}

double period_sum_offset(int n_plus, int n_minus, const Parameters& params, int multiple,
                         const QuadratureSpec& quad) {
  quad.validate();
  const auto p = Parameters::make(params.lambda, params.pressure);
  if (n_plus < 0 || n_minus < 0) throw DomainError("piece counts must be nonnegative");
  const Wide pi = std::numbers::pi_v<Wide>;
  if (p.pressure == 0.0) return static_cast<double>((n_plus - multiple) * pi);
  const auto parts = detail::period_parts(p.lambda, p.pressure, quad);
  return static_cast<double>((n_plus - multiple) * pi - n_plus * parts.plus_deficit + n_minus * parts.minus);
}

double period_sum(const GluingSpec& spec, const Parameters& params, const QuadratureSpec& quad) {
  spec.validate();
  return period_sum(spec.count(Branch::Plus), spec.count(Branch::Minus), params, quad);
}

CriticalPressure solve_critical_pressure(int n_plus, int n_minus, double lambda, const QuadratureSpec& quad,
                                         const PressureScan& scan) {
  check_lambda(lambda);
  quad.validate();
  scan.validate();
  GluingSpec::from_counts(n_plus, n_minus);
  if (n_plus == 2 && n_minus == 0) return solve_on_grid(n_plus, n_minus, lambda, {}, quad, scan);
  return solve_on_grid(n_plus, n_minus, lambda, make_grid(lambda, quad, scan), quad, scan);
}

CriticalPressure solve_critical_pressure(const GluingSpec& spec, double lambda, const QuadratureSpec& quad,
                                         const PressureScan& scan) {
  spec.validate();
  return solve_critical_pressure(spec.count(Branch::Plus), spec.count(Branch::Minus), lambda, quad, scan);
}

std::size_t PeriodicProfile::piece_index(double theta) const {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  if (t == 0) return pieces.size() - 1;
  // first knot at or above t, the owning piece starts one knot earlier
  const auto it = std::lower_bound(knots.begin(), knots.end(), t);
  return static_cast<std::size_t>(it - knots.begin()) - 1;
}

PhasePoint PeriodicProfile::evaluate(double theta) const {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  const std::size_t i = piece_index(t);
  if (t == 0) t = kTwoPi;
  const auto& piece = pieces[i];
  const double tau = t - knots[i];
  const double delta = piece.solution.lifespan() - tau;
  const auto pt = tau <= delta ? piece.solution.at(tau) : piece.solution.at_from_end(std::max(delta, 0.0));
  return {piece.sign * pt.psi, piece.sign * pt.dpsi};
}

KnotLimits PeriodicProfile::knot_limits(std::size_t k) const {
  const std::size_t n = pieces.size();
  const auto& before = pieces[(k + n - 1) % n];
  const auto& after = pieces[k % n];
  const auto b = before.solution.at_from_end(0.0);
  const auto a = after.solution.at(0.0);
  return {{before.sign * b.psi, before.sign * b.dpsi}, {after.sign * a.psi, after.sign * a.dpsi}};
}

double PeriodicProfile::knot_distance(double theta) const {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  double best = kTwoPi;
  for (double k : knots) {
    const double d = std::abs(t - k);
    best = std::min({best, d, kTwoPi - d});
  }
  return best;
}

std::vector<std::size_t> PeriodicProfile::descending_knots() const {
  std::vector<std::size_t> out;
  const std::size_t n = pieces.size();
  for (std::size_t k = 0; k < n; ++k)
    if (pieces[(k + n - 1) % n].sign > 0 && pieces[k].sign < 0) out.push_back(k);
  return out;
}

namespace {

PeriodicProfile build(const GluingSpec& spec, double lambda, double pressure, int n_samples,
                      const QuadratureSpec& quad) {
  PeriodicProfile profile;
  profile.spec = spec;
  profile.lambda = lambda;
  profile.pressure = pressure;
  const auto params = Parameters::make(lambda, pressure);
  std::optional<LocalSolution> plus, minus;
  if (spec.count(Branch::Plus)) plus = reconstruct(Branch::Plus, params, n_samples, quad);
  if (spec.count(Branch::Minus)) minus = reconstruct(Branch::Minus, params, n_samples, quad);
  double start = 0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const auto& sol = spec.sequence[i] == Branch::Plus ? *plus : *minus;
    profile.knots.push_back(start);
    profile.pieces.push_back({sol, i % 2 == 0 ? 1 : -1});
    start += sol.lifespan();
  }
  profile.total_period = start;
  return profile;
}

}  // namespace

PeriodicProfile assemble_at(const GluingSpec& spec, double lambda, double pressure, int n_samples_per_piece,
                            const QuadratureSpec& quad) {
  spec.validate();
  if (!(pressure < 0)) throw DomainError("assemble_at requires a strictly negative pressure");
  return build(spec, lambda, pressure, n_samples_per_piece, quad);
}

PeriodicProfile assemble(const GluingSpec& spec, double lambda, int n_samples_per_piece, const QuadratureSpec& quad,
                         const PressureScan& scan) {
  spec.validate();
  if (spec.is_shear()) {
    check_lambda(lambda);
    PeriodicProfile profile;
    profile.spec = spec;
    profile.lambda = lambda;
    const auto shear = shear_solution(lambda, std::max(n_samples_per_piece, 2));
    profile.knots = {0.0, std::numbers::pi};
    profile.pieces = {{shear, 1}, {shear, -1}};
    profile.total_period = kTwoPi;
    return profile;
  }
  const auto solved = solve_critical_pressure(spec, lambda, quad, scan);
  if (solved.status != SolveStatus::Found)
    throw NoRoot("no critical pressure for gluing " + spec.to_string() + " on the scanned range");
  return build(spec, lambda, solved.pressure, n_samples_per_piece, quad);
}

std::vector<GluingClass> enumerate_gluings(double lambda, int max_pieces, const QuadratureSpec& quad,
                                           const PressureScan& scan) {
  check_lambda(lambda);
  quad.validate();
  scan.validate();
  if (max_pieces < 2) throw DomainError("max_pieces must be at least 2");
  const auto grid = make_grid(lambda, quad, scan);
  std::vector<GluingClass> out;
  for (int total = 2; total <= max_pieces; total += 2) {
    for (int n_plus = 0; n_plus <= total; ++n_plus) {
      const int n_minus = total - n_plus;
      const auto r = solve_on_grid(n_plus, n_minus, lambda, grid, quad, scan);
      GluingClass c{n_plus, n_minus, Solvability::No, std::nullopt, r.root_count};
      if (r.status == SolveStatus::DegenerateShear) {
        c.solvable = Solvability::Degenerate;
        c.pressure = 0.0;
      } else if (r.status == SolveStatus::Found) {
        c.solvable = Solvability::Yes;
        c.pressure = r.pressure;
      }
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace multisink
