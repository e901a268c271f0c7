#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace paramech {

enum class Method { rk4, symplectic_euler, implicit_midpoint };

[[nodiscard]] inline std::string to_string(Method m) {
  switch (m) {
    case Method::rk4: return "rk4";
    case Method::symplectic_euler: return "symplectic_euler";
    case Method::implicit_midpoint: return "implicit_midpoint";
  }
  return "?";
}

[[nodiscard]] inline Method parse_method(const std::string& s) {
  if (s == "rk4") return Method::rk4;
  if (s == "symplectic_euler") return Method::symplectic_euler;
  if (s == "implicit_midpoint") return Method::implicit_midpoint;
  throw InputError("unknown method '" + s + "' (expected rk4, symplectic_euler or implicit_midpoint)");
}

struct StepperConfig {
  Method method = Method::implicit_midpoint;
  double dt = 1e-3;
  double newton_tol = 1e-12;
  int newton_max_iters = 50;

  void validate() const {
    if (!(dt > 0.0)) throw InputError("StepperConfig: dt must be positive");
    if (!(newton_tol > 0.0)) throw InputError("StepperConfig: newton_tol must be positive");
    if (newton_max_iters < 1) throw InputError("StepperConfig: newton_max_iters must be >= 1");
  }
};

/// x' = f(x). `jacobian` (optional) enables Newton iterations in implicit
/// stages; `first_block` (optional) marks the coordinates updated first by
/// symplectic Euler, default even indices.
struct VectorField {
  std::function<Vector(const Vector&)> rhs;
  std::function<Matrix(const Vector&)> jacobian;
  std::vector<bool> first_block;
};

/// M(x) x' = b(x), with M invertible along the motion.
struct MassSystem {
  std::function<Matrix(const Vector&)> mass;
  std::function<Vector(const Vector&)> force;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  /// x' reported by the generating field at each sample.
  std::vector<Vector> rates;
  std::map<std::string, std::vector<double>> invariants;

  [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
};

namespace detail {

inline double update_norm(const Vector& delta, const Vector& y) {
  return delta.lpNorm<Eigen::Infinity>() / (1.0 + y.lpNorm<Eigen::Infinity>());
}

inline Vector rk4_step(const std::function<Vector(const Vector&)>& f, const Vector& x, double h) {
  const Vector k1 = f(x);
  const Vector k2 = f(x + 0.5 * h * k1);
  const Vector k3 = f(x + 0.5 * h * k2);
  const Vector k4 = f(x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

inline Vector midpoint_step(const VectorField& f, const Vector& x, const StepperConfig& cfg) {
  const double h = cfg.dt;
  Vector y = x + h * f.rhs(x);
  const Eigen::Index dim = x.size();
  for (int it = 1; it <= cfg.newton_max_iters; ++it) {
    if (!y.allFinite()) throw ConvergenceError("implicit midpoint iteration diverged", it);
    const Vector mid = 0.5 * (x + y);
    const Vector residual = y - x - h * f.rhs(mid);
    Vector delta;
    if (f.jacobian) {
      const Matrix j = Matrix::Identity(dim, dim) - 0.5 * h * f.jacobian(mid);
      delta = -LuSolver(j, "implicit midpoint Newton matrix").solve(residual);
    } else {
      delta = -residual;
    }
    y += delta;
    if (update_norm(delta, y) <= cfg.newton_tol) return y;
  }
  throw ConvergenceError("implicit midpoint stage did not converge in " + std::to_string(cfg.newton_max_iters) +
                             " iterations",
                         cfg.newton_max_iters);
}

inline Vector symplectic_euler_step(const VectorField& f, const Vector& x, const StepperConfig& cfg) {
  const double h = cfg.dt;
  const Eigen::Index dim = x.size();
  std::vector<bool> first = f.first_block;
  if (first.empty()) {
    first.resize(std::size_t(dim));
    for (Eigen::Index a = 0; a < dim; ++a) first[std::size_t(a)] = a % 2 == 0;
  }
  if (first.size() != std::size_t(dim)) throw InputError("symplectic Euler: partition length mismatch");
  // First block: y_A = x_A + h f_A(y_A, x_B), solved by fixed-point iteration.
  Vector y = x;
  bool converged = false;
  for (int it = 1; it <= cfg.newton_max_iters; ++it) {
    const Vector rate = f.rhs(y);
    Vector next = y;
    for (Eigen::Index a = 0; a < dim; ++a)
      if (first[std::size_t(a)]) next[a] = x[a] + h * rate[a];
    const Vector delta = next - y;
    y = next;
    if (update_norm(delta, y) <= cfg.newton_tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw ConvergenceError("symplectic Euler stage did not converge", cfg.newton_max_iters);
  // Second block: explicit with the updated first block.
  const Vector rate = f.rhs(y);
  for (Eigen::Index a = 0; a < dim; ++a)
    if (!first[std::size_t(a)]) y[a] = x[a] + h * rate[a];
  return y;
}

}  // namespace detail

/// One step of size cfg.dt of the configured method for x' = f(x).
[[nodiscard]] inline Vector step_explicit(const VectorField& f, const Vector& x, const StepperConfig& cfg) {
  switch (cfg.method) {
    case Method::rk4: return detail::rk4_step(f.rhs, x, cfg.dt);
    case Method::implicit_midpoint: return detail::midpoint_step(f, x, cfg);
    case Method::symplectic_euler: return detail::symplectic_euler_step(f, x, cfg);
  }
  throw std::logic_error("step_explicit: bad method");
}

/// One step of x' = M(x)^{-1} b(x) via linear solves (no explicit inverse).
/// Implicit midpoint factors M once, at the step start, and uses it to drive
/// the exact midpoint residual M(m)(y - x) - h b(m) to zero.
[[nodiscard]] inline Vector step_implicit_mass(const MassSystem& sys, const Vector& x, const StepperConfig& cfg) {
  const auto rate = [&sys](const Vector& y) { return LuSolver(sys.mass(y), "mass matrix").solve(sys.force(y)); };
  switch (cfg.method) {
    case Method::rk4: return detail::rk4_step(rate, x, cfg.dt);
    case Method::implicit_midpoint: {
      const double h = cfg.dt;
      const LuSolver lu(sys.mass(x), "mass matrix");
      Vector y = x + h * lu.solve(sys.force(x));
      for (int it = 1; it <= cfg.newton_max_iters; ++it) {
        if (!y.allFinite()) throw ConvergenceError("implicit midpoint iteration diverged", it);
        const Vector mid = 0.5 * (x + y);
        const Vector residual = sys.mass(mid) * (y - x) - h * sys.force(mid);
        const Vector delta = -lu.solve(residual);
        y += delta;
        if (detail::update_norm(delta, y) <= cfg.newton_tol) return y;
      }
      throw ConvergenceError("implicit midpoint stage did not converge", cfg.newton_max_iters);
    }
    case Method::symplectic_euler:
      throw InputError("symplectic_euler is not available for mass-matrix systems");
  }
  throw std::logic_error("step_implicit_mass: bad method");
}

/// Fixed-step driver: steps of cfg.dt, the last one shortened to land on
/// t_end. `rate` and `observe` are sampled at every recorded state.
/// Failures of the step or rate functions are rethrown with the time.
template <typename StepFn, typename RateFn, typename ObserveFn>
[[nodiscard]] Trajectory integrate_fixed(const Vector& x0, double t_end, const StepperConfig& cfg, StepFn&& step,
                                         RateFn&& rate, ObserveFn&& observe) {
  cfg.validate();
  if (!(t_end >= 0.0)) throw InputError("integrate: t_end must be >= 0");
  Trajectory traj;
  const auto record = [&](double t, const Vector& x) {
    traj.times.push_back(t);
    traj.states.push_back(x);
    traj.rates.push_back(rate(x));
    for (const auto& [name, value] : observe(x)) traj.invariants[name].push_back(value);
  };
  double t = 0.0;
  try {
    record(0.0, x0);
    Vector x = x0;
    const double tiny = 1e-9 * cfg.dt;
    for (std::size_t k = 1; t_end - t > tiny; ++k) {
      double t_next = double(k) * cfg.dt;
      if (t_next > t_end - tiny) t_next = t_end;
      StepperConfig local = cfg;
      local.dt = t_next - t;
      x = step(x, local);
      if (!x.allFinite()) throw ConvergenceError("state became non-finite", 0);
      t = t_next;
      record(t, x);
    }
  } catch (const SingularSystemError& e) {
    throw SingularSystemError(std::string(e.what()) + " at t = " + std::to_string(t), t);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string(e.what()) + " at t = " + std::to_string(t), e.iterations());
  }
  return traj;
}

}  // namespace paramech
