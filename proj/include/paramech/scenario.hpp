#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hamiltonian.hpp"
#include "integrators.hpp"
#include "lagrangian.hpp"
#include "polynomial.hpp"
#include "scalar_field.hpp"
#include "structures.hpp"
#include "trajectory_io.hpp"

namespace paramech {

enum class Formalism { lagrangian, hamiltonian };
enum class FunctionKind { polynomial, harmonic, kinetic_minus_potential };

[[nodiscard]] inline std::string to_string(Formalism f) {
  return f == Formalism::lagrangian ? "lagrangian" : "hamiltonian";
}

[[nodiscard]] inline std::string to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::polynomial: return "polynomial";
    case FunctionKind::harmonic: return "harmonic";
    case FunctionKind::kinetic_minus_potential: return "kinetic_minus_potential";
  }
  return "?";
}

struct PolyTerm {
  double coefficient = 0.0;
  std::vector<int> exponents;

  friend bool operator==(const PolyTerm&, const PolyTerm&) = default;
};

struct FunctionSpec {
  FunctionKind kind = FunctionKind::harmonic;
  std::vector<PolyTerm> terms;
  std::vector<double> masses;
  double g_const = 0.0;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

struct Scenario {
  std::size_t n = 1;
  Formalism formalism = Formalism::hamiltonian;
  Tag structure = Tag::F;
  FunctionSpec function;
  std::optional<Convention> convention;
  std::vector<double> x0;
  double t_end = 0.0;
  double dt = 1e-3;
  Method method = Method::implicit_midpoint;
  /// Output paths; empty means "<stem>.csv" / "<stem>.summary.txt".
  std::string trajectory;
  std::string summary;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

struct FieldContext {
  std::size_t line;
  std::string key;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(line) + ": field '" + key + "': " + msg);
  }
};

inline double parse_real(const std::string& tok, const FieldContext& ctx) {
  const auto slash = tok.find('/');
  if (slash != std::string::npos) {
    const double num = parse_real(tok.substr(0, slash), ctx);
    const double den = parse_real(tok.substr(slash + 1), ctx);
    if (den == 0.0) ctx.fail("zero denominator in '" + tok + "'");
    return num / den;
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    ctx.fail("expected a number, got '" + tok + "'");
  }
  if (pos != tok.size() || !std::isfinite(v)) ctx.fail("expected a finite number, got '" + tok + "'");
  return v;
}

inline long parse_integer(const std::string& tok, const FieldContext& ctx) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(tok, &pos);
  } catch (const std::exception&) {
    ctx.fail("expected an integer, got '" + tok + "'");
  }
  if (pos != tok.size()) ctx.fail("expected an integer, got '" + tok + "'");
  return v;
}

inline std::vector<double> parse_reals(const std::string& value, const FieldContext& ctx) {
  std::vector<double> out;
  for (const auto& tok : split_ws(value)) out.push_back(parse_real(tok, ctx));
  return out;
}

inline std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + format_double(v[k]);
  return s;
}

}  // namespace detail

/// Cross-field checks; throws InputError.
inline void validate(const Scenario& s) {
  if (s.n < 1) throw InputError("n must be >= 1");
  const std::size_t dim = 4 * s.n;
  if (s.x0.size() != dim)
    throw InputError("x0 has " + std::to_string(s.x0.size()) + " components, expected 4n = " + std::to_string(dim));
  if (!(s.dt > 0.0)) throw InputError("dt must be positive");
  if (!(s.t_end >= 0.0)) throw InputError("t_end must be >= 0");
  if (!(s.t_end == 0.0 || s.dt < s.t_end)) throw InputError("dt must be smaller than t_end (or t_end = 0)");
  if (s.convention && s.formalism != Formalism::lagrangian)
    throw InputError("convention applies to the lagrangian formalism only");
  if (s.formalism == Formalism::lagrangian && s.method == Method::symplectic_euler)
    throw InputError("symplectic_euler is available for the hamiltonian formalism only");
  const FunctionSpec& f = s.function;
  if (f.kind != FunctionKind::polynomial && !f.terms.empty())
    throw InputError("term lines are only allowed with function = polynomial");
  if (f.kind != FunctionKind::kinetic_minus_potential && (!f.masses.empty() || f.g_const != 0.0))
    throw InputError("masses and g_const are only allowed with function = kinetic_minus_potential");
  if (f.kind == FunctionKind::polynomial) {
    if (f.terms.empty()) throw InputError("function = polynomial needs at least one term");
    for (const auto& t : f.terms) {
      if (t.exponents.size() != dim)
        throw InputError("term has " + std::to_string(t.exponents.size()) + " exponents, expected 4n = " +
                         std::to_string(dim));
      for (int e : t.exponents)
        if (e < 0) throw InputError("term exponents must be non-negative");
    }
  }
  if (f.kind == FunctionKind::kinetic_minus_potential) {
    if (f.masses.size() != s.n)
      throw InputError("masses has " + std::to_string(f.masses.size()) + " entries, expected n = " +
                       std::to_string(s.n));
    for (double m : f.masses)
      if (!(m > 0.0)) throw InputError("masses must be positive");
  }
}

/// Parses the key = value scenario format; '#' starts a comment.
[[nodiscard]] inline Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::map<std::string, std::size_t> seen;
  bool have_function = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::vector<std::pair<detail::FieldContext, std::string>> terms;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = detail::trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const detail::FieldContext ctx{lineno, key};
    if (key != "term") {
      if (seen.count(key)) ctx.fail("duplicate field (first given on line " + std::to_string(seen[key]) + ")");
      seen[key] = lineno;
    }
    if (value.empty()) ctx.fail("missing value");

    if (key == "n") {
      const long n = detail::parse_integer(value, ctx);
      if (n < 1) ctx.fail("must be >= 1");
      s.n = std::size_t(n);
    } else if (key == "formalism") {
      if (value == "lagrangian")
        s.formalism = Formalism::lagrangian;
      else if (value == "hamiltonian")
        s.formalism = Formalism::hamiltonian;
      else
        ctx.fail("expected lagrangian or hamiltonian, got '" + value + "'");
    } else if (key == "structure") {
      try {
        s.structure = parse_tag(value);
      } catch (const std::exception& e) {
        ctx.fail(e.what());
      }
    } else if (key == "function") {
      have_function = true;
      if (value == "polynomial")
        s.function.kind = FunctionKind::polynomial;
      else if (value == "harmonic")
        s.function.kind = FunctionKind::harmonic;
      else if (value == "kinetic_minus_potential")
        s.function.kind = FunctionKind::kinetic_minus_potential;
      else
        ctx.fail("unknown builtin '" + value + "' (expected polynomial, harmonic or kinetic_minus_potential)");
    } else if (key == "term") {
      terms.emplace_back(ctx, value);
    } else if (key == "masses") {
      s.function.masses = detail::parse_reals(value, ctx);
    } else if (key == "g_const") {
      s.function.g_const = detail::parse_real(value, ctx);
    } else if (key == "convention") {
      if (value == "derived")
        s.convention = Convention::derived;
      else if (value == "printed")
        s.convention = Convention::printed;
      else
        ctx.fail("expected derived or printed, got '" + value + "'");
    } else if (key == "x0") {
      s.x0 = detail::parse_reals(value, ctx);
    } else if (key == "t_end") {
      s.t_end = detail::parse_real(value, ctx);
    } else if (key == "dt") {
      s.dt = detail::parse_real(value, ctx);
    } else if (key == "method") {
      try {
        s.method = parse_method(value);
      } catch (const InputError& e) {
        ctx.fail(e.what());
      }
    } else if (key == "trajectory") {
      s.trajectory = value;
    } else if (key == "summary") {
      s.summary = value;
    } else {
      ctx.fail("unknown field");
    }
  }
  for (const char* required : {"n", "formalism", "structure", "x0", "t_end", "dt"})
    if (!seen.count(required)) throw InputError(std::string("missing required field '") + required + "'");
  if (!have_function) throw InputError("missing required field 'function'");

  // term = <coefficient> : <exponent_1> ... <exponent_4n>
  for (const auto& [ctx, value] : terms) {
    const auto colon = value.find(':');
    if (colon == std::string::npos) ctx.fail("expected '<coefficient> : <exponents>'");
    PolyTerm t;
    t.coefficient = detail::parse_real(detail::trim(value.substr(0, colon)), ctx);
    for (const auto& tok : detail::split_ws(value.substr(colon + 1))) {
      const long e = detail::parse_integer(tok, ctx);
      if (e < 0) ctx.fail("exponents must be non-negative");
      t.exponents.push_back(int(e));
    }
    if (t.exponents.size() != 4 * s.n)
      ctx.fail("has " + std::to_string(t.exponents.size()) + " exponents, expected 4n = " + std::to_string(4 * s.n));
    s.function.terms.push_back(std::move(t));
  }
  validate(s);
  return s;
}

[[nodiscard]] inline std::string serialize(const Scenario& s) {
  std::ostringstream os;
  os << "n = " << s.n << "\n";
  os << "formalism = " << to_string(s.formalism) << "\n";
  os << "structure = " << to_string(s.structure) << "\n";
  os << "function = " << to_string(s.function.kind) << "\n";
  for (const auto& t : s.function.terms) {
    os << "term = " << format_double(t.coefficient) << " :";
    for (int e : t.exponents) os << ' ' << e;
    os << "\n";
  }
  if (!s.function.masses.empty()) os << "masses = " << detail::join_reals(s.function.masses) << "\n";
  if (s.function.kind == FunctionKind::kinetic_minus_potential)
    os << "g_const = " << format_double(s.function.g_const) << "\n";
  if (s.convention) os << "convention = " << to_string(*s.convention) << "\n";
  os << "x0 = " << detail::join_reals(s.x0) << "\n";
  os << "t_end = " << format_double(s.t_end) << "\n";
  os << "dt = " << format_double(s.dt) << "\n";
  os << "method = " << to_string(s.method) << "\n";
  if (!s.trajectory.empty()) os << "trajectory = " << s.trajectory << "\n";
  if (!s.summary.empty()) os << "summary = " << s.summary << "\n";
  return os.str();
}

[[nodiscard]] inline Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

[[nodiscard]] inline ScalarField build_field(const Scenario& s) {
  const std::size_t dim = 4 * s.n;
  switch (s.function.kind) {
    case FunctionKind::harmonic: return ScalarField::harmonic(dim);
    case FunctionKind::kinetic_minus_potential: return kinetic_minus_potential(s.function.masses, s.function.g_const);
    case FunctionKind::polynomial: {
      Polynomial<double> p(dim);
      for (const auto& t : s.function.terms) p.add_term(t.exponents, t.coefficient);
      return ScalarField::polynomial(std::move(p));
    }
  }
  throw std::logic_error("build_field: bad kind");
}

/// Trajectory of a scenario together with the residuals of its printed
/// (or, for convention = derived, its derived) equations.
struct ScenarioResult {
  Trajectory trajectory;
  ResidualSeries residuals;
};

[[nodiscard]] inline StepperConfig stepper_config(const Scenario& s) {
  StepperConfig cfg;
  cfg.method = s.method;
  cfg.dt = s.dt;
  return cfg;
}

[[nodiscard]] inline Vector initial_state(const Scenario& s) {
  return Eigen::Map<const Vector>(s.x0.data(), Eigen::Index(s.x0.size()));
}

[[nodiscard]] inline ScenarioResult simulate(const Scenario& s) {
  validate(s);
  const ScalarField f = build_field(s);
  const Vector x0 = initial_state(s);
  ScenarioResult r;
  if (s.formalism == Formalism::hamiltonian) {
    const HamiltonianSystem sys{s.structure, f};
    r.trajectory = integrate_hamiltonian(sys, x0, s.t_end, stepper_config(s));
    r.residuals = hamilton_residuals(sys, r.trajectory);
  } else {
    const LagrangianSystem sys{s.structure, f, s.convention.value_or(Convention::derived)};
    r.trajectory = integrate_lagrangian(sys, x0, s.t_end, stepper_config(s));
    r.residuals = el_residuals(sys, r.trajectory);
  }
  return r;
}

/// Residual above which the summary carries an audit warning.
inline constexpr double kResidualWarning = 1e-6;

struct RunReport {
  std::filesystem::path trajectory_path;
  std::filesystem::path summary_path;
  std::string summary;
  double energy_drift = 0.0;
  double return_error = 0.0;
  double max_residual = 0.0;
  std::vector<std::string> warnings;
};

[[nodiscard]] inline double max_norm(const ResidualSeries& r) {
  double m = 0.0;
  for (const Vector& v : r) m = std::max(m, v.lpNorm<Eigen::Infinity>());
  return m;
}

[[nodiscard]] inline std::string summary_text(const Scenario& s, const std::string& name, const ScenarioResult& r,
                                              RunReport& report) {
  const Trajectory& traj = r.trajectory;
  const auto& energy = traj.invariants.at("energy");
  for (double e : energy) report.energy_drift = std::max(report.energy_drift, std::abs(e - energy.front()));
  report.return_error = (traj.states.back() - traj.states.front()).lpNorm<Eigen::Infinity>();
  report.max_residual = max_norm(r.residuals);

  const std::string equations =
      s.formalism == Formalism::hamiltonian
          ? "printed Hamilton equations for " + to_string(s.structure) + "*"
          : to_string(s.convention.value_or(Convention::derived)) + " Euler-Lagrange system for " +
                to_string(s.structure);
  if (report.max_residual > kResidualWarning) {
    std::string w = equations + " not satisfied along the computed flow (max residual " +
                    format_double(report.max_residual) + ")";
    if (s.formalism == Formalism::lagrangian && s.convention == Convention::printed && s.structure == Tag::F)
      w += "; the printed F system has the opposite sign to the derived one (documented discrepancy)";
    report.warnings.push_back(std::move(w));
  }

  std::ostringstream os;
  os << "scenario = " << name << "\n";
  os << "formalism = " << to_string(s.formalism) << "\n";
  os << "structure = " << to_string(s.structure) << (s.formalism == Formalism::hamiltonian ? "*" : "") << "\n";
  if (s.formalism == Formalism::lagrangian)
    os << "convention = " << to_string(s.convention.value_or(Convention::derived)) << "\n";
  os << "method = " << to_string(s.method) << "\n";
  os << "dt = " << format_double(s.dt) << "\n";
  os << "t_end = " << format_double(s.t_end) << "\n";
  os << "samples = " << traj.size() << "\n";
  os << "energy_initial = " << format_double(energy.front()) << "\n";
  os << "energy_final = " << format_double(energy.back()) << "\n";
  os << "energy_drift_max = " << format_double(report.energy_drift) << "\n";
  os << "final_state =";
  for (Eigen::Index a = 0; a < traj.states.back().size(); ++a) os << ' ' << format_double(traj.states.back()[a]);
  os << "\n";
  os << "return_error = " << format_double(report.return_error) << "\n";
  os << "residual_equations = " << equations << "\n";
  os << "residual_max = " << format_double(report.max_residual) << "\n";
  for (const auto& w : report.warnings) os << "warning = " << w << "\n";
  return os.str();
}

/// Simulates and writes trajectory and summary (atomically). Relative output
/// paths are resolved against `out_dir`. Errors propagate as paramech::Error.
inline RunReport run_scenario(const Scenario& s, const std::string& name, const std::filesystem::path& out_dir) {
  RunReport report;
  report.trajectory_path = out_dir / (s.trajectory.empty() ? name + ".csv" : s.trajectory);
  report.summary_path = out_dir / (s.summary.empty() ? name + ".summary.txt" : s.summary);
  const ScenarioResult r = simulate(s);
  report.summary = summary_text(s, name, r, report);
  std::error_code ec;
  for (const auto& p : {report.trajectory_path, report.summary_path})
    if (p.has_parent_path()) {
      std::filesystem::create_directories(p.parent_path(), ec);
      if (ec) throw IoError("cannot create directory '" + p.parent_path().string() + "': " + ec.message());
    }
  write_file_atomic(report.trajectory_path, trajectory_csv(r.trajectory, r.residuals));
  write_file_atomic(report.summary_path, report.summary);
  return report;
}

/// Printed vs derived Euler-Lagrange residuals along the derived flow.
struct ElAuditRow {
  std::string equation;
  double derived_max = 0.0;
  double printed_max = 0.0;
};

struct ElAudit {
  Tag structure = Tag::F;
  std::vector<ElAuditRow> rows;
};

[[nodiscard]] inline ElAudit audit_el(const Scenario& s) {
  if (s.formalism != Formalism::lagrangian) throw InputError("audit-el needs a lagrangian scenario");
  Scenario derived = s;
  derived.convention = Convention::derived;
  const ScenarioResult r = simulate(derived);
  const ScalarField f = build_field(s);
  const ResidualSeries printed = el_residuals(s.structure, f, Convention::printed, r.trajectory);
  ElAudit audit{s.structure, {}};
  const std::size_t n = s.n;
  for (const PrintedEquation& eq : printed_euler_lagrange(s.structure)) {
    ElAuditRow row;
    const auto label = [](int block) {
      return block == 0 ? std::string("i") : block == 1 ? std::string("n+i") : std::to_string(block) + "n+i";
    };
    const std::string lhs = label(eq.lhs);
    const std::string src = label(eq.source);
    row.equation = "d/dt dL/dx_{" + lhs + "} = " + (eq.sign > 0 ? "+" : "-") + "dL/dx_{" + src + "}";
    for (std::size_t i = 0; i < n; ++i) {
      const auto a = Eigen::Index(std::size_t(eq.lhs) * n + i);
      for (std::size_t k = 0; k < r.residuals.size(); ++k) {
        row.derived_max = std::max(row.derived_max, std::abs(r.residuals[k][a]));
        row.printed_max = std::max(row.printed_max, std::abs(printed[k][a]));
      }
    }
    audit.rows.push_back(std::move(row));
  }
  return audit;
}

[[nodiscard]] inline std::string render(const ElAudit& audit, double tol = kResidualWarning) {
  std::ostringstream os;
  os << "Euler-Lagrange audit for " << to_string(audit.structure) << " along the derived flow (tolerance " << tol
     << ")\n";
  os << std::left << std::setw(40) << "printed equation" << std::setw(26) << "derived max residual"
     << std::setw(26) << "printed max residual" << "printed\n";
  for (const auto& row : audit.rows)
    os << std::left << std::setw(40) << row.equation << std::setw(26) << format_double(row.derived_max)
       << std::setw(26) << format_double(row.printed_max) << (row.printed_max <= tol ? "pass" : "fail") << "\n";
  return os.str();
}

}  // namespace paramech
