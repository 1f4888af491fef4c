#pragma once

// Gluing of local solutions into 2 pi periodic profiles.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multisink/local_solutions.hpp"

namespace multisink {

/// Alternating-sign sequence of local solutions, the first one positive.
struct GluingSpec {
  std::vector<Branch> sequence;

  /// Comma separated P/M tokens, case-insensitive, whitespace ignored.
  static GluingSpec parse(std::string_view text);
  static GluingSpec from_counts(int n_plus, int n_minus);

  std::string to_string() const;
  int count(Branch branch) const;
  std::size_t size() const { return sequence.size(); }
  /// The two-piece Plus gluing, realized only at P = 0.
  bool is_shear() const;
  void validate() const;
};

/// Log-spaced scan of -P used to bracket critical pressures.
struct PressureScan {
  double minus_p_min = 1e-16;
  double minus_p_max = 1e6;
  int points = 400;

  void validate() const;
};

/// n_plus T_+(P) + n_minus T_-(P).
double period_sum(const GluingSpec& spec, const Parameters& params, const QuadratureSpec& quad = {});
double period_sum(int n_plus, int n_minus, const Parameters& params, const QuadratureSpec& quad = {});
/// n_plus T_+ + n_minus T_- - multiple pi, accumulated without rounding the sum first.
double period_sum_offset(int n_plus, int n_minus, const Parameters& params, int multiple,
                         const QuadratureSpec& quad = {});

enum class SolveStatus { Found, NoRoot, DegenerateShear };

std::string to_string(SolveStatus status);

struct CriticalPressure {
  SolveStatus status = SolveStatus::NoRoot;
  double pressure = 0.0;  // P*, 0 for the shear case
  double residual = 0.0;  // period_sum - 2 pi at P*
  int root_count = 0;     // sign changes seen on the scan
  double scan_lower = 0.0;  // scanned range of P
  double scan_upper = 0.0;
};

/// Largest P < 0 at which the lifespans add up to 2 pi.
CriticalPressure solve_critical_pressure(const GluingSpec& spec, double lambda, const QuadratureSpec& quad = {},
                                         const PressureScan& scan = {});
CriticalPressure solve_critical_pressure(int n_plus, int n_minus, double lambda, const QuadratureSpec& quad = {},
                                         const PressureScan& scan = {});

struct Piece {
  LocalSolution solution;
  int sign = 1;
};

struct KnotLimits {
  PhasePoint below;  // end of the piece preceding the knot
  PhasePoint above;  // start of the piece following the knot
};

class PeriodicProfile {
 public:
  GluingSpec spec;
  double lambda = 1.5;
  double pressure = 0.0;
  std::vector<double> knots;  // piece k starts at knots[k]; knots[0] = 0
  std::vector<Piece> pieces;
  double total_period = 0.0;

  double alpha() const { return 2.0 - lambda; }

  /// Index of the piece owning theta; a knot belongs to the piece below it.
  std::size_t piece_index(double theta) const;
  /// Signed (psi, psi') at any angle, reduced modulo 2 pi.
  PhasePoint evaluate(double theta) const;
  KnotLimits knot_limits(std::size_t k) const;
  /// Distance from theta to the nearest knot, modulo 2 pi.
  double knot_distance(double theta) const;
  /// Knots where psi changes sign from positive to negative.
  std::vector<std::size_t> descending_knots() const;
};

/// Builds the profile at the critical pressure (or the shear profile for "P,P").
PeriodicProfile assemble(const GluingSpec& spec, double lambda, int n_samples_per_piece,
                         const QuadratureSpec& quad = {}, const PressureScan& scan = {});

/// Builds a profile at a prescribed pressure without enforcing a 2 pi period.
PeriodicProfile assemble_at(const GluingSpec& spec, double lambda, double pressure, int n_samples_per_piece,
                            const QuadratureSpec& quad = {});

enum class Solvability { Yes, No, Degenerate };

std::string to_string(Solvability solvability);

struct GluingClass {
  int n_plus = 0;
  int n_minus = 0;
  Solvability solvable = Solvability::No;
  std::optional<double> pressure;
  int root_count = 0;
};

/// Every multiset with an even number of pieces up to max_pieces.
std::vector<GluingClass> enumerate_gluings(double lambda, int max_pieces, const QuadratureSpec& quad = {},
                                           const PressureScan& scan = {});

}  // namespace multisink
