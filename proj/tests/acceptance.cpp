// Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion; exits 1 on any failure.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "paramech/paramech.hpp"

using namespace paramech;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances.
constexpr int kAlgebraSamples = 1000;
constexpr double kClosedFormRel = 1e-12;
constexpr double kResidualTol = 1e-6;
constexpr double kEnergyTolHamiltonian = 1e-10;
constexpr double kReturnTol = 1e-6;
constexpr double kRhsAgreement = 1e-10;
constexpr double kEnergyTolLagrangian = 1e-8;
constexpr double kPrintedFMin = 0.1;
constexpr double kFiniteDiffRel = 1e-6;
constexpr double kOrderSlack = 0.2;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Q = SplitQuaternion<Rational>;
using K = KForm<Rational>;

Q random_q(RationalSampler& rs) { return {rs.next(), rs.next(), rs.next(), rs.next()}; }

double inf_norm(const Vector& v) { return v.lpNorm<Eigen::Infinity>(); }

double max_residual(const ResidualSeries& r) {
  double m = 0.0;
  for (const auto& v : r) m = std::max(m, inf_norm(v));
  return m;
}

StepperConfig config(Method m, double dt) {
  StepperConfig c;
  c.method = m;
  c.dt = dt;
  return c;
}

Vector unit_x() { return (Vector(4) << 1, 0, 0, 0).finished(); }

// 1. Algebra.
void algebra(Outcome& o) {
  RationalSampler rs(101);
  int bad = 0;
  for (int k = 0; k < kAlgebraSamples; ++k) {
    const Q p = random_q(rs), q = random_q(rs), r = random_q(rs);
    bad += !((p * q) * r == p * (q * r));
    bad += !(sq_conj(p * q) == sq_conj(q) * sq_conj(p));
    bad += !(sq_norm_sq(p * q) == sq_norm_sq(p) * sq_norm_sq(q));
  }
  o.require(bad == 0, std::to_string(bad) + " algebra identity violations");

  // Square classification against brute-force squaring on a 10^4 grid.
  std::vector<Rational> grid;
  for (int k = -4; k <= 5; ++k) grid.emplace_back(k, 2);
  int mismatches = 0, points = 0;
  for (const auto& x : grid)
    for (const auto& y : grid)
      for (const auto& u : grid)
        for (const auto& v : grid) {
          const Q p{x, y, u, v};
          const Q sq = p * p;
          const SquareClass brute = sq == -Q::one()  ? SquareClass::SquaresToMinusOne
                                    : sq == Q::one() ? SquareClass::SquaresToPlusOne
                                                     : SquareClass::Other;
          mismatches += sq_square_class(p) != brute;
          ++points;
        }
  o.require(points == 10000 && mismatches == 0, std::to_string(mismatches) + " classification mismatches");
  o.detail << " samples=" << kAlgebraSamples << " grid=" << points;
}

// 2. Structures.
void structures(Outcome& o) {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& r : verify_relations(n)) o.require(r.holds, r.name + " n=" + std::to_string(n));
    for (Tag tag : kAllTags) {
      o.require(metric_compatibility({tag, false}, n).holds, "metric " + to_string(tag));
      const IntMatrix w = fundamental_form({tag, false}, n);
      o.require(w.transpose() == -w, "omega antisymmetric " + to_string(tag));
      o.require(ext_d(K::from_matrix(w.cast<Rational>())).is_zero(), "omega closed " + to_string(tag));
    }
  }
  o.detail << " n=1..4 exact";
}

// Printed symplectic forms of the dual structures, transcribed.
K printed_phi(Tag tag, std::size_t n) {
  const std::size_t dim = 4 * n;
  const auto dd = [dim](std::size_t a, std::size_t b) { return wedge(K::dx(dim, int(a)), K::dx(dim, int(b))); };
  K phi(dim, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t b0 = i, b1 = n + i, b2 = 2 * n + i, b3 = 3 * n + i;
    if (tag == Tag::F) phi += dd(b1, b0) + dd(b3, b2);
    if (tag == Tag::G) phi += dd(b2, b0) + dd(b1, b3);
    if (tag == Tag::H) phi += dd(b3, b0) + dd(b2, b1);
  }
  return phi;
}

// 3. Symbolic reproduction.
void symbolic(Outcome& o) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags) {
      const K phi = printed_phi(tag, n);
      o.require(-ext_d(liouville_one_form<Rational>({tag, true}, n)) == phi, "-d lambda " + to_string(tag) + "*");
      o.require(ext_d(phi).is_zero(), "d Phi " + to_string(tag) + "*");
    }
  RationalSampler rs(103);
  int checked = 0;
  for (std::size_t n = 1; n <= 2; ++n)
    for (Tag tag : kAllTags)
      for (int k = 0; k < 5; ++k) {
        o.require(ext_d(lagrangian_two_form(tag, rs.polynomial(4 * n, 4, 8))).is_zero(), "d Phi_L " + to_string(tag));
        ++checked;
      }
  o.detail << " random L checked=" << checked << " exact";
}

// 4. Matrix identity.
void matrix_identity(Outcome& o) {
  RationalSampler rs(104);
  int points = 0;
  for (std::size_t n = 1; n <= 2; ++n)
    for (Tag tag : kAllTags) {
      const DenseMatrix<Rational> a = build_structure(tag, n).matrix().cast<Rational>();
      for (int k = 0; k < 3; ++k) {
        const auto l = rs.polynomial(4 * n, 4, 8);
        const K phi = lagrangian_two_form(tag, l);
        for (int p = 0; p < 10; ++p) {
          const auto x = rs.point(4 * n);
          DenseMatrix<Rational> h(4 * n, 4 * n);
          for (std::size_t b = 0; b < 4 * n; ++b)
            for (std::size_t c = 0; c < 4 * n; ++c) h(b, c) = l.derivative(b).derivative(c).evaluate(x);
          o.require(form_to_matrix(phi, x) == a.transpose() * h - h * a, "matrix identity " + to_string(tag));
          ++points;
        }
      }
    }
  o.detail << " points=" << points << " exact";
}

// Printed Hamilton equations x'_{lhs} = sign dH/dx_{src}, transcribed per block.
struct HamEq {
  int lhs, sign, src;
};
std::array<HamEq, 4> printed_hamilton(Tag tag) {
  switch (tag) {
    case Tag::F: return {{{0, -1, 1}, {1, 1, 0}, {2, -1, 3}, {3, 1, 2}}};
    case Tag::G: return {{{0, -1, 2}, {1, 1, 3}, {2, 1, 0}, {3, -1, 1}}};
    case Tag::H: return {{{0, -1, 3}, {1, -1, 2}, {2, 1, 1}, {3, 1, 0}}};
  }
  return {};
}

// 5. Hamiltonian closed forms.
void hamiltonian_forms(Outcome& o) {
  RationalSampler rs(105);
  double worst_rel = 0.0;
  for (Tag tag : kAllTags) {
    const ScalarField h = ScalarField::polynomial(rs.polynomial(8, 4, 10).cast<double>());
    for (int k = 0; k < 100; ++k) {
      Vector x(8);
      for (auto& v : x) v = to_double(rs.next());
      const Vector a = hamiltonian_vector_field(tag, h, x);
      const Vector b = generic_field_from_form(tag, h, x);
      worst_rel = std::max(worst_rel, inf_norm(a - b) / std::max(1.0, inf_norm(b)));
    }
  }
  o.require(worst_rel <= kClosedFormRel, "closed form vs generic solve");

  // Exact flows of H = 1/2|x|^2 from e_1: x_1 = cos t and the partner block
  // carries sign * sin t; residuals of the printed equations on x(t), x'(t).
  double worst_res = 0.0;
  for (Tag tag : kAllTags) {
    const auto eqs = printed_hamilton(tag);
    int partner = 0, sign = 0;
    for (const auto& e : eqs)
      if (e.src == 0) partner = e.lhs, sign = e.sign;
    for (int k = 0; k <= 100; ++k) {
      const double t = kTwoPi * k / 100.0;
      Vector x = Vector::Zero(4), dx = Vector::Zero(4);
      x[0] = std::cos(t);
      dx[0] = -std::sin(t);
      x[partner] = sign * std::sin(t);
      dx[partner] = sign * std::cos(t);
      for (const auto& e : eqs) worst_res = std::max(worst_res, std::abs(dx[e.lhs] - e.sign * x[e.src]));
    }
  }
  // Residuals along computed flows of a non-quadratic H.
  for (Tag tag : kAllTags) {
    const ScalarField h = ScalarField::polynomial(rs.polynomial(8, 3, 8).cast<double>()) + ScalarField::harmonic(8);
    const HamiltonianSystem sys{tag, h};
    const Trajectory t = integrate_hamiltonian(sys, Vector::Constant(8, 0.1), 0.5, config(Method::rk4, 1e-3));
    worst_res = std::max(worst_res, max_residual(hamilton_residuals(sys, t)));
  }
  o.require(worst_res <= kResidualTol, "printed Hamilton residuals");
  o.detail << " max_rel=" << worst_rel << " max_residual=" << worst_res;
}

// 6. Conservation.
void conservation(Outcome& o) {
  double drift = 0.0, ret = 0.0;
  for (Tag tag : kAllTags) {
    const HamiltonianSystem sys{tag, ScalarField::harmonic(4)};
    const Trajectory t = integrate_hamiltonian(sys, unit_x(), 10.0, config(Method::implicit_midpoint, 1e-3));
    o.require(t.size() == 10001, "10^4 steps");
    const auto& e = t.invariants.at("energy");
    for (double v : e) drift = std::max(drift, std::abs(v - e.front()));
    const Trajectory p = integrate_hamiltonian(sys, unit_x(), kTwoPi, config(Method::implicit_midpoint, 1e-3));
    ret = std::max(ret, (p.states.back() - unit_x()).norm());
  }
  o.require(drift <= kEnergyTolHamiltonian, "energy drift");
  o.require(ret <= kReturnTol, "period return");
  o.detail << " drift=" << drift << " return=" << ret;
}

ScalarField random_lagrangian(std::mt19937_64& rng, std::size_t n, double quartic) {
  const std::size_t dim = 4 * n;
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  Polynomial<double> p(dim);
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      Monomial m(dim, 0);
      m[a] += 1;
      m[b] += 1;
      p.add_term(m, a == b ? 1.0 + 0.5 * u(rng) : u(rng));
    }
  for (std::size_t a = 0; quartic != 0.0 && a < dim; ++a) {
    Monomial m(dim, 0);
    m[a] = 4;
    p.add_term(m, quartic);
  }
  return ScalarField::polynomial(p);
}

// 7. Lagrangian dynamics.
void lagrangian(Outcome& o) {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (Tag tag : kAllTags)
      for (double quartic : {0.0, 0.05}) {
        const ScalarField l = random_lagrangian(rng, n, quartic);
        for (int k = 0; k < 10; ++k) {
          Vector x(static_cast<Eigen::Index>(4 * n));
          for (auto& v : x) v = u(rng);
          const Vector a = canonical_rhs(tag, l, x);
          worst = std::max(worst, inf_norm(a - intrinsic_solve(tag, l, x)) / std::max(1.0, inf_norm(a)));
        }
      }
  o.require(worst <= kRhsAgreement, "canonical_rhs vs intrinsic_solve");

  const LagrangianSystem harmonic{Tag::F, ScalarField::harmonic(4), Convention::derived};
  const Trajectory t = integrate_lagrangian(harmonic, unit_x(), kTwoPi, config(Method::implicit_midpoint, 1e-3));
  const auto& e = t.invariants.at("energy");
  double drift = 0.0;
  for (double v : e) drift = std::max(drift, std::abs(v - e.front()));
  o.require(drift <= kEnergyTolLagrangian, "energy drift");

  double res = max_residual(el_residuals(harmonic, t));
  for (Tag tag : kAllTags) {
    const LagrangianSystem sys{tag, random_lagrangian(rng, 2, 0.05), Convention::derived};
    const Trajectory tr = integrate_lagrangian(sys, Vector::Constant(8, 0.2), 0.5, config(Method::rk4, 1e-2));
    res = std::max(res, max_residual(el_residuals(sys, tr)));
  }
  o.require(res <= kResidualTol, "derived residuals");
  o.detail << " rhs_rel=" << worst << " energy_drift=" << drift << " residual=" << res;
}

// 8. Equation audit.
void equation_audit(Outcome& o) {
  double gh = 0.0, f = 0.0;
  for (Tag tag : kAllTags) {
    const LagrangianSystem sys{tag, ScalarField::harmonic(4), Convention::derived};
    const Trajectory t =
        integrate_lagrangian(sys, unit_x(), tag == Tag::F ? kTwoPi : 1.0, config(Method::implicit_midpoint, 1e-3));
    const double printed = max_residual(el_residuals(tag, sys.lagrangian, Convention::printed, t));
    if (tag == Tag::F)
      f = printed;
    else
      gh = std::max(gh, printed);
  }
  o.require(gh <= kResidualTol, "printed G/H residuals");
  o.require(f >= kPrintedFMin, "printed F residual on the unit circle");

  const AuditReport report = verify_all(2);
  std::size_t documented = 0;
  for (const auto& r : report.records)
    if (r.status == AuditStatus::documented_discrepancy) {
      ++documented;
      o.require(r.name.find("for F") != std::string::npos, "discrepancy record is the F system");
    }
  o.require(documented == 1, "one documented discrepancy");
  o.require(report.count(AuditStatus::fail) == 0, "no failed audit records");
  o.require(report.records.size() >= 20, "at least 20 audit records");
  o.detail << " printed_GH=" << gh << " printed_F=" << f << " audit_records=" << report.records.size();
}

// 9. Numerics hygiene.
double rotation_error(Method m, double dt) {
  Matrix j = Matrix::Zero(4, 4);
  j(0, 1) = -1;
  j(1, 0) = 1;
  const VectorField f{[j](const Vector& x) { return Vector(j * x); }, [j](const Vector&) { return j; },
                      {true, false, true, false}};
  const Trajectory t = integrate_fixed(
      unit_x(), 1.0, config(m, dt), [&](const Vector& x, const StepperConfig& c) { return step_explicit(f, x, c); },
      [&](const Vector& x) { return f.rhs(x); },
      [](const Vector&) { return std::vector<std::pair<std::string, double>>{}; });
  const Vector exact = (Vector(4) << std::cos(1.0), std::sin(1.0), 0, 0).finished();
  return (t.states.back() - exact).norm();
}

void numerics(Outcome& o) {
  using D = HyperDual<double>;
  const ScalarField g = ScalarField::generic(4, [](std::span<const D> x) {
    return sin(x[0]) * exp(D(0.5) * x[1]) + x[2] * x[2] * x[3] + log(D(3.0) + x[3] * x[0]) + sqrt(D(2.0) + x[1] * x[1]);
  });
  const ScalarField l = kinetic_minus_potential({1.0}, 2.0);
  std::mt19937_64 rng(109);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  const double h = 1e-5;
  for (const ScalarField* f : {&g, &l})
    for (int k = 0; k < 100; ++k) {
      Vector x(4);
      for (auto& v : x) v = u(rng);
      const EvalResult r = f->eval_autodiff(x);
      Vector fg(4);
      Matrix fh(4, 4);
      for (Eigen::Index a = 0; a < 4; ++a) {
        Vector xp = x, xm = x;
        xp[a] += h;
        xm[a] -= h;
        fg[a] = (f->value(xp) - f->value(xm)) / (2 * h);
        fh.col(a) = (f->eval_autodiff(xp).gradient - f->eval_autodiff(xm).gradient) / (2 * h);
      }
      worst = std::max(worst, inf_norm(r.gradient - fg) / std::max(1.0, inf_norm(fg)));
      worst = std::max(worst, (r.hessian - fh).lpNorm<Eigen::Infinity>() / std::max(1.0, fh.lpNorm<Eigen::Infinity>()));
    }
  o.require(worst <= kFiniteDiffRel, "autodiff vs finite differences");

  const std::array<std::tuple<Method, double, double>, 3> orders{{
      {Method::rk4, 4.0, 0.1},
      {Method::implicit_midpoint, 2.0, 0.05},
      {Method::symplectic_euler, 1.0, 0.01},
  }};
  for (const auto& [m, nominal, dt] : orders) {
    const double p = std::log2(rotation_error(m, dt) / rotation_error(m, dt / 2));
    o.require(std::abs(p - nominal) <= kOrderSlack, to_string(m) + " order");
    o.detail << " " << to_string(m) << "=" << p;
  }
  o.detail << " fd_rel=" << worst;
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<void(Outcome&)>>, 9> criteria{{
      {"algebra suite", algebra},
      {"structure suite", structures},
      {"symbolic reproduction", symbolic},
      {"matrix identity", matrix_identity},
      {"hamiltonian closed forms", hamiltonian_forms},
      {"conservation", conservation},
      {"lagrangian dynamics", lagrangian},
      {"equation audit", equation_audit},
      {"numerics hygiene", numerics},
  }};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    o.detail.precision(3);
    try {
      criteria[k].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::printf("criterion %zu %s: %s%s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
  }
  return failures == 0 ? 0 : 1;
}
