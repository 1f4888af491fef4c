// Command-line front end for the multi-sink library.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multisink/asymptotics.hpp"
#include "multisink/flowfield.hpp"
#include "multisink/gluing.hpp"
#include "multisink/local_solutions.hpp"
#include "multisink/version.hpp"
#include "report.hpp"

namespace ms = multisink;
using ms::cli::Cell;
using ms::cli::Table;
using ms::cli::format_number;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

const char* kTableLambdas = "1.9,1.96838,1.99,1.99684,1.999,1.99968,1.9999,1.999968,1.99999";

struct Config {
  std::string command;
  double lambda = kNaN;
  std::optional<double> pressure;
  std::string gluing;
  int samples = 0;
  std::string bbox = "-1,1,-1,1";
  std::string grid = "40,40";
  std::string field = "pseudo";
  std::string out;
  std::string format = "csv";
  std::optional<double> tol;
  double pmin = -1e-3;
  double pmax = -1e-9;
  int count = 50;
  std::string lambdas = kTableLambdas;
  int max_pieces = 10;
  std::string pressures = "-1e-2,-1e-4,-1e-6";
  std::string sidecar;

  ms::QuadratureSpec quadrature() const {
    ms::QuadratureSpec q;
    if (tol) q.relative_tolerance = *tol;
    q.validate();
    return q;
  }
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ms::DomainError(what + ": cannot parse '" + item + "' as a number");
    }
    if (used != item.size() || !std::isfinite(v)) throw ms::DomainError(what + ": invalid number '" + item + "'");
    values.push_back(v);
  }
  return values;
}

std::vector<std::pair<std::string, std::string>> metadata(const Config& cfg) {
  const auto q = cfg.quadrature();
  return {{"tool", "multisink"},
          {"version", ms::kVersion},
          {"command", cfg.command},
          {"lambda", std::isnan(cfg.lambda) ? "-" : format_number(cfg.lambda)},
          {"pressure", cfg.pressure ? format_number(*cfg.pressure) : "-"},
          {"gluing", cfg.gluing.empty() ? "-" : cfg.gluing},
          {"relative_tolerance", format_number(q.relative_tolerance)},
          {"absolute_floor", format_number(q.absolute_floor)},
          {"max_levels", std::to_string(q.max_levels)}};
}

void write_text(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file " + cfg.out);
  file << text;
}

void emit(const Config& cfg, const Table& table, const nlohmann::ordered_json* extra = nullptr) {
  std::ostringstream text;
  if (cfg.format == "json") {
    auto doc = table.to_json();
    if (extra)
      for (auto it = extra->begin(); it != extra->end(); ++it) doc[it.key()] = it.value();
    text << doc.dump(2) << '\n';
  } else {
    table.write_csv(text);
  }
  write_text(cfg, text.str());
}

double require_lambda(const Config& cfg) { return ms::Parameters::make(cfg.lambda, 0.0).lambda; }

double require_pressure(const Config& cfg) {
  if (!cfg.pressure) throw ms::DomainError("--pressure is required");
  return *cfg.pressure;
}

ms::GluingSpec require_gluing(const Config& cfg) {
  if (cfg.gluing.empty()) throw ms::DomainError("--gluing is required");
  return ms::GluingSpec::parse(cfg.gluing);
}

int run_periods(const Config& cfg) {
  const auto q = cfg.quadrature();
  const auto p = ms::Parameters::make(cfg.lambda, require_pressure(cfg));
  const double tp = ms::period(ms::Branch::Plus, p, q);
  const double tm = ms::period(ms::Branch::Minus, p, q);
  Table t{metadata(cfg), {"lambda", "pressure", "T_plus", "T_minus", "T_sum"}, {}};
  t.rows.push_back({p.lambda, p.pressure, tp, tm, ms::period_sum(1, 1, p, q)});
  emit(cfg, t);
  return 0;
}

int run_period_curve(const Config& cfg) {
  const auto q = cfg.quadrature();
  const double lambda = require_lambda(cfg);
  if (!(cfg.pmin < 0) || !(cfg.pmax < 0)) throw ms::DomainError("--pmin and --pmax must be negative");
  if (cfg.count < 1) throw ms::DomainError("--count must be positive");
  Table t{metadata(cfg), {"P", "T_plus", "T_minus", "T_sum", "T_sum_minus_pi"}, {}};
  const double a = std::log(-cfg.pmin), b = std::log(-cfg.pmax);
  for (int j = 0; j < cfg.count; ++j) {
    double pressure = j == 0 ? cfg.pmin : j == cfg.count - 1 ? cfg.pmax : -std::exp(a + (b - a) * j / (cfg.count - 1));
    const auto p = ms::Parameters::make(lambda, pressure);
    const double tp = ms::period(ms::Branch::Plus, p, q);
    const double tm = ms::period(ms::Branch::Minus, p, q);
    t.rows.push_back({pressure, tp, tm, ms::period_sum(1, 1, p, q), ms::period_sum_offset(1, 1, p, 1, q)});
  }
  emit(cfg, t);
  return 0;
}

int run_solve(const Config& cfg) {
  const auto spec = require_gluing(cfg);
  const auto r = ms::solve_critical_pressure(spec, require_lambda(cfg), cfg.quadrature());
  Table t{metadata(cfg),
          {"gluing", "lambda", "status", "pressure", "minus_two_pressure", "residual", "root_count", "scan_lower",
           "scan_upper"},
          {}};
  const bool found = r.status != ms::SolveStatus::NoRoot;
  t.rows.push_back({spec.to_string(), cfg.lambda, ms::to_string(r.status), found ? r.pressure : kNaN,
                    found ? 0.0 - 2 * r.pressure : kNaN, found ? r.residual : kNaN,
                    static_cast<long long>(r.root_count), r.scan_lower, r.scan_upper});
  emit(cfg, t);
  if (r.status == ms::SolveStatus::NoRoot) {
    std::cerr << "no critical pressure for " << spec.to_string() << " on P in [" << format_number(r.scan_lower)
              << ", " << format_number(r.scan_upper) << "]\n";
    return 3;
  }
  return 0;
}

int run_profile(const Config& cfg) {
  const auto spec = require_gluing(cfg);
  const int n = cfg.samples > 0 ? cfg.samples : 512;
  const auto profile = ms::assemble(spec, require_lambda(cfg), 64, cfg.quadrature());
  std::vector<double> angles;
  for (int j = 0; j < n; ++j) angles.push_back(2 * kPi * j / n);
  angles.insert(angles.end(), profile.knots.begin(), profile.knots.end());
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());

  auto meta = metadata(cfg);
  meta.emplace_back("critical_pressure", format_number(profile.pressure));
  Table t{meta, {"theta", "psi", "dpsi", "vorticity_angular"}, {}};
  for (double theta : angles) {
    const auto pt = profile.evaluate(theta);
    double w = kNaN;
    try {
      w = ms::vorticity_angular(profile, theta);
    } catch (const ms::KnotSingularity&) {
    }
    t.rows.push_back({theta, pt.psi, pt.dpsi, w});
  }
  emit(cfg, t);
  return 0;
}

nlohmann::ordered_json stagnation_json(const ms::PeriodicProfile& profile) {
  nlohmann::ordered_json doc;
  doc["lambda"] = profile.lambda;
  doc["pressure"] = profile.pressure;
  doc["gluing"] = profile.spec.to_string();
  auto& list = doc["stagnation_points"];
  list = nlohmann::ordered_json::array();
  for (const auto& s : ms::stagnation_points(profile)) {
    nlohmann::ordered_json item;
    item["angle"] = s.angle;
    item["radius"] = s.radius;
    item["kind"] = ms::to_string(s.kind);
    item["eigenvalues"] = {ms::cli::json_number(s.eigenvalues[0].real()),
                           ms::cli::json_number(s.eigenvalues[1].real())};
    list.push_back(std::move(item));
  }
  return doc;
}

int run_field(const Config& cfg) {
  const auto spec = require_gluing(cfg);
  const auto box = parse_list(cfg.bbox, "--bbox");
  if (box.size() != 4) throw ms::DomainError("--bbox needs xmin,xmax,ymin,ymax");
  const auto grid = parse_list(cfg.grid, "--grid");
  if (grid.size() != 2 || grid[0] != std::floor(grid[0]) || grid[1] != std::floor(grid[1]) || grid[0] < 1 ||
      grid[1] < 1)
    throw ms::DomainError("--grid needs two positive integers nx,ny");
  const auto kind = ms::parse_field_kind(cfg.field);
  const ms::BBox bbox{box[0], box[1], box[2], box[3]};
  bbox.validate();
  const auto profile = ms::assemble(spec, require_lambda(cfg), 64, cfg.quadrature());
  const auto sampled = ms::sample_grid(profile, bbox, static_cast<int>(grid[0]), static_cast<int>(grid[1]), kind);

  auto meta = metadata(cfg);
  meta.emplace_back("critical_pressure", format_number(profile.pressure));
  meta.emplace_back("field", ms::to_string(kind));
  meta.emplace_back("bbox", cfg.bbox);
  meta.emplace_back("grid", cfg.grid);
  Table t{meta, {"x", "y", "u", "v"}, {}};
  for (const auto& s : sampled.samples) t.rows.push_back({s.x, s.y, s.u, s.v});

  const auto stagnation = stagnation_json(profile);
  if (cfg.format == "json") {
    nlohmann::ordered_json extra;
    extra["stagnation_points"] = stagnation["stagnation_points"];
    emit(cfg, t, &extra);
  } else {
    emit(cfg, t);
  }
  std::string sidecar = cfg.sidecar;
  if (sidecar.empty() && !cfg.out.empty()) sidecar = cfg.out + ".stagnation.json";
  if (!sidecar.empty()) {
    std::ofstream file(sidecar, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open sidecar file " + sidecar);
    file << stagnation.dump(2) << '\n';
  }
  return 0;
}

int run_pstar_table(const Config& cfg) {
  const auto q = cfg.quadrature();
  const auto lambdas = parse_list(cfg.lambdas, "--lambdas");
  for (double l : lambdas) ms::Parameters::make(l, 0.0);
  Config shown = cfg;
  shown.gluing = "P,M,P,M";
  Table t{metadata(shown), {"lambda", "minus_two_pstar", "pstar_over_alpha_squared", "root_count"}, {}};
  for (double l : lambdas) {
    const auto r = ms::solve_critical_pressure(2, 2, l, q);
    const double alpha = 2 - l;
    const bool found = r.status == ms::SolveStatus::Found;
    t.rows.push_back({l, found ? -2 * r.pressure : kNaN, found ? -r.pressure / (alpha * alpha) : kNaN,
                      static_cast<long long>(r.root_count)});
  }
  emit(cfg, t);
  return 0;
}

int run_asymptotics(const Config& cfg) {
  const auto q = cfg.quadrature();
  const double lambda = require_lambda(cfg);
  Config shown = cfg;
  if (!shown.pressure) shown.pressure = -1e-6;
  const auto p = ms::Parameters::make(lambda, *shown.pressure);
  if (!(p.pressure < 0)) throw ms::DomainError("asymptotics needs P < 0");
  const double mp = -p.pressure;
  const double y = 1 / (2 * lambda - 2);
  const auto regime = ms::regime_of(lambda);
  const double tp = ms::period(ms::Branch::Plus, p, q);
  const double tm = ms::period(ms::Branch::Minus, p, q);
  const auto pub = ms::Coefficients::Published;

  Table t{metadata(shown), {"quantity", "value"}, {}};
  auto add = [&](const std::string& name, Cell v) { t.rows.push_back({name, std::move(v)}); };
  add("regime", ms::to_string(regime));
  add("T_plus_quadrature", tp);
  add("T_plus_expansion", ms::t_plus_expansion(lambda, p.pressure).value);
  add("T_plus_expansion_published", ms::t_plus_expansion(lambda, p.pressure, pub).value);
  add("T_minus_quadrature", tm);
  add("T_minus_expansion", ms::t_minus_expansion(lambda, p.pressure).value);
  add("T_sum_minus_pi_quadrature", ms::period_sum_offset(1, 1, p, 1, q));
  add("T_sum_minus_pi_expansion", ms::t_sum_expansion(lambda, p.pressure).value - kPi);
  add("T_sum_minus_pi_expansion_published", ms::t_sum_expansion(lambda, p.pressure, pub).value - kPi);

  const double deficit = -ms::period_sum_offset(1, 0, p, 1, q);
  double empirical = 0, corrected = 0, published = 0;
  std::string label;
  switch (regime) {
    case ms::Regime::SubCritical:
      label = "linear";
      empirical = deficit / mp;
      corrected = ms::t_plus_linear_coefficient(lambda);
      published = ms::t_plus_linear_coefficient(lambda, pub);
      break;
    case ms::Regime::Logarithmic:
      label = "log";
      empirical = deficit / (mp * std::log(1 / mp));
      corrected = ms::t_plus_log_coefficient();
      published = ms::t_plus_log_coefficient(pub);
      break;
    case ms::Regime::SuperCritical:
      label = "power";
      empirical = (deficit - ms::t_plus_linear_coefficient(lambda) * mp) / std::pow(mp, y);
      corrected = ms::t_plus_power_coefficient(lambda);
      published = ms::t_plus_power_coefficient(lambda, pub);
      break;
  }
  add("T_plus_" + label + "_coefficient_quadrature", empirical);
  add("T_plus_" + label + "_coefficient_corrected", corrected);
  add("T_plus_" + label + "_coefficient_published", published);
  add("T_plus_" + label + "_relative_discrepancy_corrected", empirical / corrected - 1);
  add("T_plus_" + label + "_relative_discrepancy_published", empirical / published - 1);
  const double tm_coef = ms::t_minus_coefficient(lambda);
  add("T_minus_coefficient_quadrature", tm / std::pow(mp, y));
  add("T_minus_coefficient_closed_form", tm_coef);
  add("T_minus_relative_discrepancy", tm / std::pow(mp, y) / tm_coef - 1);
  add("pstar_quadratic", ms::pstar_approx(lambda, ms::PstarMode::Quadratic));
  if (lambda > 1.5 + ms::kRegimeWindow) {
    add("pstar_implicit", ms::pstar_approx(lambda, ms::PstarMode::Implicit));
    add("pstar_implicit_published", ms::pstar_approx(lambda, ms::PstarMode::Implicit, pub));
  }
  emit(cfg, t);
  return 0;
}

int run_classify(const Config& cfg) {
  const double lambda = require_lambda(cfg);
  const auto classes = ms::enumerate_gluings(lambda, cfg.max_pieces, cfg.quadrature());
  auto meta = metadata(cfg);
  meta.emplace_back("max_pieces", std::to_string(cfg.max_pieces));
  meta.emplace_back("completeness", lambda <= 1.5 ? "proven" : "not-asserted");
  Table t{meta, {"n_plus", "n_minus", "solvable", "pstar", "root_count"}, {}};
  for (const auto& c : classes)
    t.rows.push_back({static_cast<long long>(c.n_plus), static_cast<long long>(c.n_minus),
                      ms::to_string(c.solvable), c.pressure.value_or(kNaN), static_cast<long long>(c.root_count)});
  emit(cfg, t);
  return 0;
}

int run_shear_convergence(const Config& cfg) {
  const auto q = cfg.quadrature();
  const double lambda = std::isnan(cfg.lambda) ? 1.5 : cfg.lambda;
  ms::Parameters::make(lambda, 0.0);
  Config shown = cfg;
  shown.lambda = lambda;
  const auto pressures = parse_list(cfg.pressures, "--pressures");
  const int n = cfg.samples > 0 ? cfg.samples : 2001;
  if (n < 2) throw ms::DomainError("--samples must be at least 2");
  const double span = 0.75 * kPi;
  Table t{metadata(shown), {"P", "sup_psi", "sup_dpsi"}, {}};
  for (double pressure : pressures) {
    const auto sol = ms::reconstruct(ms::Branch::Plus, ms::Parameters::make(lambda, pressure), 64, q);
    if (sol.lifespan() < span) throw ms::DomainError("lifespan shorter than the comparison interval");
    double sup_psi = 0, sup_dpsi = 0;
    for (int j = 0; j < n; ++j) {
      const double theta = span * j / (n - 1);
      const auto pt = sol.at(theta);
      const double sn = std::sin(theta);
      const double psi_s = std::pow(lambda, -lambda) * std::pow(sn, lambda);
      const double dpsi_s = std::pow(lambda, 1 - lambda) * std::pow(sn, lambda - 1) * std::cos(theta);
      sup_psi = std::max(sup_psi, std::abs(pt.psi - psi_s));
      sup_dpsi = std::max(sup_dpsi, std::abs(pt.dpsi - dpsi_s));
    }
    t.rows.push_back({pressure, sup_psi, sup_dpsi});
  }
  emit(cfg, t);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Homogeneous multi-sink solutions of the 2D Euler equations"};
  app.set_version_flag("--version", std::string("multisink ") + ms::kVersion);
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path (default: stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--tol", cfg.tol, "Quadrature relative tolerance");
  };
  auto lambda_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--lambda", cfg.lambda, "Scaling exponent in (1, 2)");
    if (required) o->required();
  };

  auto* periods = app.add_subcommand("periods", "Lifespans T_+ and T_- at one pressure");
  lambda_opt(periods, true);
  periods->add_option("--pressure", cfg.pressure, "Pressure P <= 0")->required();
  common(periods);

  auto* curve = app.add_subcommand("period-curve", "T_+ + T_- - pi on a log-spaced pressure range");
  lambda_opt(curve, true);
  curve->add_option("--pmin", cfg.pmin, "Most negative pressure");
  curve->add_option("--pmax", cfg.pmax, "Pressure closest to zero");
  curve->add_option("--count", cfg.count, "Number of pressures");
  common(curve);

  auto* solve = app.add_subcommand("solve", "Critical pressure of a gluing");
  lambda_opt(solve, true);
  solve->add_option("--gluing", cfg.gluing, "Comma separated P/M tokens")->required();
  common(solve);

  auto* profile = app.add_subcommand("profile", "Sampled periodic profile psi(theta)");
  lambda_opt(profile, true);
  profile->add_option("--gluing", cfg.gluing, "Comma separated P/M tokens")->required();
  profile->add_option("--samples", cfg.samples, "Number of uniform angles");
  common(profile);

  auto* fieldcmd = app.add_subcommand("field", "Velocity or pseudo-velocity on a Cartesian grid");
  lambda_opt(fieldcmd, true);
  fieldcmd->add_option("--gluing", cfg.gluing, "Comma separated P/M tokens")->required();
  fieldcmd->add_option("--bbox", cfg.bbox, "xmin,xmax,ymin,ymax");
  fieldcmd->add_option("--grid", cfg.grid, "nx,ny");
  fieldcmd->add_option("--field", cfg.field, "velocity or pseudo");
  fieldcmd->add_option("--sidecar", cfg.sidecar, "Stagnation point JSON path (default: <out>.stagnation.json)");
  common(fieldcmd);

  auto* table = app.add_subcommand("pstar-table", "Critical pressure of the two-sink gluing for several lambda");
  table->add_option("--lambdas", cfg.lambdas, "Comma separated lambda values");
  common(table);

  auto* asym = app.add_subcommand("asymptotics", "Quadrature against the small-|P| expansions");
  lambda_opt(asym, true);
  asym->add_option("--pressure", cfg.pressure, "Pressure P < 0 (default -1e-6)");
  common(asym);

  auto* classify = app.add_subcommand("classify", "Solvability of every gluing multiset");
  lambda_opt(classify, true);
  classify->add_option("--max-pieces", cfg.max_pieces, "Largest number of pieces");
  common(classify);

  auto* shear = app.add_subcommand("shear-convergence", "Distance of the Plus solution to the shear profile");
  lambda_opt(shear, false);
  shear->add_option("--pressures", cfg.pressures, "Comma separated pressures");
  shear->add_option("--samples", cfg.samples, "Number of comparison angles");
  common(shear);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.command == "periods") return run_periods(cfg);
    if (cfg.command == "period-curve") return run_period_curve(cfg);
    if (cfg.command == "solve") return run_solve(cfg);
    if (cfg.command == "profile") return run_profile(cfg);
    if (cfg.command == "field") return run_field(cfg);
    if (cfg.command == "pstar-table") return run_pstar_table(cfg);
    if (cfg.command == "asymptotics") return run_asymptotics(cfg);
    if (cfg.command == "classify") return run_classify(cfg);
    if (cfg.command == "shear-convergence") return run_shear_convergence(cfg);
  } catch (const ms::NoRoot& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const ms::NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ms::NoSignChange& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const ms::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
