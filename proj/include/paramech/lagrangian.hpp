#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "forms.hpp"
#include "integrators.hpp"
#include "linalg.hpp"
#include "scalar_field.hpp"
#include "structures.hpp"

namespace paramech {

/// Which Euler-Lagrange system residuals are reported against.
/// `derived`: Hess(L) x' = A grad L, implied by i_X Phi_L^A = dE_L^A.
/// `printed`: the boxed coordinate systems exactly as displayed; the F
/// system there carries the opposite overall sign.
enum class Convention { derived, printed };

[[nodiscard]] inline std::string to_string(Convention c) { return c == Convention::derived ? "derived" : "printed"; }

struct LagrangianSystem {
  Tag kind = Tag::F;
  ScalarField lagrangian;
  Convention convention = Convention::derived;
};

using ResidualSeries = std::vector<Vector>;

/// One equation  d/dt(dL/dx_{lhs n+i}) - sign * dL/dx_{source n+i} = 0.
struct PrintedEquation {
  int lhs;
  int sign;
  int source;
};

namespace detail {

constexpr std::array<PrintedEquation, 4> kPrintedELF{{{0, +1, 1}, {1, -1, 0}, {2, +1, 3}, {3, -1, 2}}};
constexpr std::array<PrintedEquation, 4> kPrintedELG{{{0, +1, 2}, {1, -1, 3}, {2, +1, 0}, {3, -1, 1}}};
constexpr std::array<PrintedEquation, 4> kPrintedELH{{{0, +1, 3}, {1, +1, 2}, {2, +1, 1}, {3, +1, 0}}};

inline std::size_t quadruple_count(const Vector& x) {
  if (x.size() == 0 || x.size() % 4 != 0) throw InputError("state dimension must be a positive multiple of 4");
  return std::size_t(x.size()) / 4;
}

inline Matrix structure_matrix(Tag tag, std::size_t n, bool dual = false) {
  return to_eigen(build_structure(tag, n, dual).matrix());
}

}  // namespace detail

/// Printed Euler-Lagrange system for a structure, as coordinate equations.
[[nodiscard]] inline const std::array<PrintedEquation, 4>& printed_euler_lagrange(Tag tag) {
  switch (tag) {
    case Tag::F: return detail::kPrintedELF;
    case Tag::G: return detail::kPrintedELG;
    case Tag::H: return detail::kPrintedELH;
  }
  throw std::logic_error("printed_euler_lagrange: bad tag");
}

/// Liouville field V_A = A X.
[[nodiscard]] inline Vector liouville_field(Tag kind, const Vector& semispray) {
  return detail::structure_matrix(kind, detail::quadruple_count(semispray)) * semispray;
}

/// E_L^A = V_A(L) - L = (A X) . grad L - L.
[[nodiscard]] inline double lagrangian_energy(Tag kind, const ScalarField& lagrangian, const Vector& x,
                                              const Vector& semispray) {
  if (semispray.size() != x.size()) throw InputError("lagrangian_energy: semispray dimension mismatch");
  const EvalResult r = lagrangian.eval(x);
  return liouville_field(kind, semispray).dot(r.gradient) - r.value;
}

/// Solves Hess(L)(x) x' = A grad L(x).
[[nodiscard]] inline Vector canonical_rhs(Tag kind, const ScalarField& lagrangian, const Vector& x) {
  const EvalResult r = lagrangian.eval(x);
  const Matrix a = detail::structure_matrix(kind, detail::quadruple_count(x));
  return LuSolver(r.hessian, "Hessian of the Lagrangian (degenerate Lagrangian)").solve(a * r.gradient);
}

/// Matrix of Phi_L^A at x: symbolic -d d_A L for polynomial Lagrangians,
/// A^T Hess - Hess A otherwise.
[[nodiscard]] inline Matrix lagrangian_form_matrix(Tag kind, const ScalarField& lagrangian, const Vector& x) {
  if (const Polynomial<double>* poly = lagrangian.as_polynomial()) {
    const KForm<double> phi = lagrangian_two_form(kind, *poly);
    const std::vector<double> pt(x.data(), x.data() + x.size());
    return to_eigen(form_to_matrix(phi, pt));
  }
  const Matrix a = detail::structure_matrix(kind, detail::quadruple_count(x));
  const Matrix hess = lagrangian.eval(x).hessian;
  return a.transpose() * hess - hess * a;
}

/// Solves i_X Phi_L^A = dE_L^A directly, with (i_X Phi)_b = sum_a X_a Phi[a][b]
/// and dE = Hess A X - grad L (semispray components held fixed).
[[nodiscard]] inline Vector intrinsic_solve(Tag kind, const ScalarField& lagrangian, const Vector& x) {
  const Matrix omega = lagrangian_form_matrix(kind, lagrangian, x);
  {
    const Eigen::PartialPivLU<Matrix> lu(omega);
    const double rc = omega.size() == 0 ? 0.0 : lu.rcond();
    if (!(rc >= kSingularRcond)) throw SingularSystemError("Lagrangian 2-form is degenerate at this point");
  }
  const EvalResult r = lagrangian.eval(x);
  const Matrix a = detail::structure_matrix(kind, detail::quadruple_count(x));
  // omega^T X = Hess A X - grad L  <=>  (omega^T - Hess A) X = -grad L
  const Matrix system = omega.transpose() - r.hessian * a;
  return LuSolver(system, "intrinsic Lagrangian system").solve(-r.gradient);
}

[[nodiscard]] inline MassSystem lagrangian_mass_system(Tag kind, const ScalarField& lagrangian, std::size_t n) {
  const Matrix a = detail::structure_matrix(kind, n);
  return MassSystem{
      [lagrangian](const Vector& y) { return lagrangian.eval(y).hessian; },
      [lagrangian, a](const Vector& y) { return Vector(a * lagrangian.eval(y).gradient); },
  };
}

/// Integrates Hess(L) x' = A grad L and records E_L^A ("energy") per sample.
[[nodiscard]] inline Trajectory integrate_lagrangian(const LagrangianSystem& sys, const Vector& x0, double t_end,
                                                     const StepperConfig& cfg) {
  if (cfg.method == Method::symplectic_euler)
    throw InputError("Lagrangian integration supports rk4 and implicit_midpoint");
  if (std::size_t(x0.size()) != sys.lagrangian.dim()) throw InputError("integrate_lagrangian: x0 dimension mismatch");
  const std::size_t n = detail::quadruple_count(x0);
  const MassSystem mass = lagrangian_mass_system(sys.kind, sys.lagrangian, n);
  return integrate_fixed(
      x0, t_end, cfg, [&](const Vector& x, const StepperConfig& c) { return step_implicit_mass(mass, x, c); },
      [&](const Vector& x) { return canonical_rhs(sys.kind, sys.lagrangian, x); },
      [&](const Vector& x) {
        const Vector rate = canonical_rhs(sys.kind, sys.lagrangian, x);
        return std::vector<std::pair<std::string, double>>{
            {"energy", lagrangian_energy(sys.kind, sys.lagrangian, x, rate)}};
      });
}

/// Residuals of the Euler-Lagrange system selected by `convention`, with
/// d/dt(grad L) = Hess(L) x' from the trajectory's own rates.
[[nodiscard]] inline ResidualSeries el_residuals(Tag kind, const ScalarField& lagrangian, Convention convention,
                                                 const Trajectory& traj) {
  ResidualSeries out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Vector& x = traj.states[k];
    const std::size_t n = detail::quadruple_count(x);
    const EvalResult r = lagrangian.eval(x);
    const Vector ddt_grad = r.hessian * traj.rates[k];
    Vector res(x.size());
    if (convention == Convention::derived) {
      res = ddt_grad - detail::structure_matrix(kind, n) * r.gradient;
    } else {
      for (const PrintedEquation& eq : printed_euler_lagrange(kind))
        for (std::size_t i = 0; i < n; ++i) {
          const auto lhs = Eigen::Index(std::size_t(eq.lhs) * n + i);
          const auto src = Eigen::Index(std::size_t(eq.source) * n + i);
          res[lhs] = ddt_grad[lhs] - double(eq.sign) * r.gradient[src];
        }
    }
    out.push_back(std::move(res));
  }
  return out;
}

[[nodiscard]] inline ResidualSeries el_residuals(const LagrangianSystem& sys, const Trajectory& traj) {
  return el_residuals(sys.kind, sys.lagrangian, sys.convention, traj);
}

}  // namespace paramech
