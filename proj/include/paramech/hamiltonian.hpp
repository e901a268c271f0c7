#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "forms.hpp"
#include "integrators.hpp"
#include "lagrangian.hpp"
#include "linalg.hpp"
#include "scalar_field.hpp"
#include "structures.hpp"

namespace paramech {

struct HamiltonianSystem {
  Tag kind = Tag::F;  // dual structure F*, G* or H*
  ScalarField hamiltonian;
};

/// One coordinate equation  dx_{lhs n+i}/dt = sign * dH/dx_{source n+i}.
struct HamiltonEquation {
  int lhs;
  int sign;
  int source;
};

namespace detail {

// Base 1-forms: sign of x_a dx_a per block.
constexpr std::array<int, 4> kBaseFormF{+1, +1, +1, +1};
constexpr std::array<int, 4> kBaseFormG{+1, +1, -1, -1};
constexpr std::array<int, 4> kBaseFormH{+1, +1, -1, -1};

// Canonical symplectic forms as (row block, column block) with entry +1;
// the antisymmetric partner carries -1.
//   F*: dx_{n+i}^dx_i + dx_{3n+i}^dx_{2n+i}
//   G*: dx_{2n+i}^dx_i + dx_{n+i}^dx_{3n+i}
//   H*: dx_{3n+i}^dx_i + dx_{2n+i}^dx_{n+i}
constexpr std::array<std::array<int, 2>, 2> kCanonicalF{{{1, 0}, {3, 2}}};
constexpr std::array<std::array<int, 2>, 2> kCanonicalG{{{2, 0}, {1, 3}}};
constexpr std::array<std::array<int, 2>, 2> kCanonicalH{{{3, 0}, {2, 1}}};

// Closed-form Hamiltonian vector fields.
constexpr std::array<HamiltonEquation, 4> kFieldF{{{0, -1, 1}, {1, +1, 0}, {2, -1, 3}, {3, +1, 2}}};
constexpr std::array<HamiltonEquation, 4> kFieldG{{{0, -1, 2}, {1, +1, 3}, {2, +1, 0}, {3, -1, 1}}};
constexpr std::array<HamiltonEquation, 4> kFieldH{{{0, -1, 3}, {1, -1, 2}, {2, +1, 1}, {3, +1, 0}}};

// Printed Hamilton equations along integral curves.
constexpr std::array<HamiltonEquation, 4> kPrintedF{{{0, -1, 1}, {1, +1, 0}, {2, -1, 3}, {3, +1, 2}}};
constexpr std::array<HamiltonEquation, 4> kPrintedG{{{0, -1, 2}, {1, +1, 3}, {2, +1, 0}, {3, -1, 1}}};
constexpr std::array<HamiltonEquation, 4> kPrintedH{{{0, -1, 3}, {1, -1, 2}, {2, +1, 1}, {3, +1, 0}}};

template <typename Table>
const Table& pick(Tag tag, const Table& f, const Table& g, const Table& h) {
  switch (tag) {
    case Tag::F: return f;
    case Tag::G: return g;
    case Tag::H: return h;
  }
  throw std::logic_error("bad tag");
}

}  // namespace detail

[[nodiscard]] inline const std::array<HamiltonEquation, 4>& printed_hamilton_equations(Tag tag) {
  return detail::pick(tag, detail::kPrintedF, detail::kPrintedG, detail::kPrintedH);
}

/// Base 1-form omega_{A*} = 1/2 sum_a eps_a x_a dx_a.
template <typename T = Rational>
[[nodiscard]] KForm<T> base_one_form(Tag kind, std::size_t n) {
  if (n < 1) throw InputError("base_one_form: n must be >= 1");
  const auto& signs = detail::pick(kind, detail::kBaseFormF, detail::kBaseFormG, detail::kBaseFormH);
  const std::size_t dim = 4 * n;
  KForm<T> w(dim, 1);
  for (int b = 0; b < 4; ++b)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t a = std::size_t(b) * n + i;
      w.add_term({int(a)}, (T(signs[std::size_t(b)]) / T(2)) * Polynomial<T>::variable(dim, a));
    }
  return w;
}

/// Liouville form lambda_{A*} = A*(omega_{A*}), the dual operator acting on
/// each dx factor.
template <typename T = Rational>
[[nodiscard]] KForm<T> liouville_one_form(StructureKind kind, std::size_t n) {
  if (!kind.dual) throw InputError("liouville_one_form: dual structure (F*, G*, H*) required");
  const StructureOperator op = build_structure(kind, n);
  const KForm<T> base = base_one_form<T>(kind.tag, n);
  KForm<T> lambda(op.dim(), 1);
  for (const auto& [idx, coeff] : base.terms()) {
    const auto [row, sign] = op.image(std::size_t(idx[0]));
    lambda.add_term({int(row)}, T(sign) * coeff);
  }
  return lambda;
}

/// Exact matrix of Phi_{A*}.
[[nodiscard]] inline IntMatrix canonical_two_form(StructureKind kind, std::size_t n) {
  if (!kind.dual) throw InputError("canonical_two_form: dual structure (F*, G*, H*) required");
  if (n < 1) throw InputError("canonical_two_form: n must be >= 1");
  const auto& pairs = detail::pick(kind.tag, detail::kCanonicalF, detail::kCanonicalG, detail::kCanonicalH);
  IntMatrix m(4 * n, 4 * n);
  for (const auto& p : pairs)
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = std::size_t(p[0]) * n + i;
      const std::size_t c = std::size_t(p[1]) * n + i;
      m(r, c) = 1;
      m(c, r) = -1;
    }
  return m;
}

/// Closed-form Hamiltonian vector field of the dual structure.
[[nodiscard]] inline Vector hamiltonian_vector_field(Tag kind, const ScalarField& h, const Vector& x) {
  const std::size_t n = detail::quadruple_count(x);
  const Vector grad = h.eval(x).gradient;
  Vector out(x.size());
  for (const HamiltonEquation& eq : detail::pick(kind, detail::kFieldF, detail::kFieldG, detail::kFieldH))
    for (std::size_t i = 0; i < n; ++i)
      out[Eigen::Index(std::size_t(eq.lhs) * n + i)] = double(eq.sign) * grad[Eigen::Index(std::size_t(eq.source) * n + i)];
  return out;
}

/// Solves i_X Phi = dH, i.e. sum_a X_a M[a][b] = dH/dx_b, with M = Phi_{A*}.
[[nodiscard]] inline Vector generic_field_from_form(Tag kind, const ScalarField& h, const Vector& x) {
  const std::size_t n = detail::quadruple_count(x);
  const Matrix m = to_eigen(canonical_two_form({kind, true}, n));
  return LuSolver(m.transpose(), "canonical 2-form").solve(h.eval(x).gradient);
}

/// First member of each conjugate pair of the canonical form.
[[nodiscard]] inline std::vector<bool> conjugate_partition(Tag kind, std::size_t n) {
  const IntMatrix m = canonical_two_form({kind, true}, n);
  std::vector<bool> first(4 * n, false);
  for (std::size_t r = 0; r < 4 * n; ++r)
    for (std::size_t c = r + 1; c < 4 * n; ++c)
      if (m(r, c) != 0) first[r] = true;
  return first;
}

[[nodiscard]] inline VectorField hamiltonian_field(const HamiltonianSystem& sys, std::size_t n) {
  // X = K grad H with K = (M^T)^{-1} constant, so the Jacobian is K Hess H.
  const Matrix m = to_eigen(canonical_two_form({sys.kind, true}, n));
  const Matrix k = m.transpose().inverse();
  const ScalarField h = sys.hamiltonian;
  const Tag kind = sys.kind;
  return VectorField{
      [h, kind](const Vector& y) { return hamiltonian_vector_field(kind, h, y); },
      [h, k](const Vector& y) { return Matrix(k * h.eval(y).hessian); },
      conjugate_partition(kind, n),
  };
}

/// Integrates x' = X_H(x) and records H ("energy") per sample.
[[nodiscard]] inline Trajectory integrate_hamiltonian(const HamiltonianSystem& sys, const Vector& x0, double t_end,
                                                      const StepperConfig& cfg) {
  if (std::size_t(x0.size()) != sys.hamiltonian.dim()) throw InputError("integrate_hamiltonian: x0 dimension mismatch");
  const std::size_t n = detail::quadruple_count(x0);
  const VectorField field = hamiltonian_field(sys, n);
  return integrate_fixed(
      x0, t_end, cfg, [&](const Vector& x, const StepperConfig& c) { return step_explicit(field, x, c); },
      [&](const Vector& x) { return field.rhs(x); },
      [&](const Vector& x) {
        return std::vector<std::pair<std::string, double>>{{"energy", sys.hamiltonian.value(x)}};
      });
}

/// Residuals x'_a - sign * dH/dx_source of the printed Hamilton system of
/// `kind`, with x' the trajectory's own rates.
[[nodiscard]] inline ResidualSeries hamilton_residuals(Tag kind, const ScalarField& h, const Trajectory& traj) {
  ResidualSeries out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Vector& x = traj.states[k];
    const std::size_t n = detail::quadruple_count(x);
    const Vector grad = h.eval(x).gradient;
    Vector res(x.size());
    for (const HamiltonEquation& eq : printed_hamilton_equations(kind))
      for (std::size_t i = 0; i < n; ++i) {
        const auto lhs = Eigen::Index(std::size_t(eq.lhs) * n + i);
        res[lhs] = traj.rates[k][lhs] - double(eq.sign) * grad[Eigen::Index(std::size_t(eq.source) * n + i)];
      }
    out.push_back(std::move(res));
  }
  return out;
}

[[nodiscard]] inline ResidualSeries hamilton_residuals(const HamiltonianSystem& sys, const Trajectory& traj) {
  return hamilton_residuals(sys.kind, sys.hamiltonian, traj);
}

}  // namespace paramech
