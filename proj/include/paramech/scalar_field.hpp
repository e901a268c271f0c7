#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "hyperdual.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"

namespace paramech {

struct EvalResult {
  double value = 0.0;
  Vector gradient;
  Matrix hessian;
};

/// Real function on R^{4n}, built from polynomials, builtins and linear
/// combinations. Values are immutable and cheap to copy.
///
/// Builtins read everything on the coordinates: `kinetic` is the quadratic
/// form 1/2 sum_i m_i (x_i^2 + x_{n+i}^2 + x_{2n+i}^2 + x_{3n+i}^2) and
/// `distance` is the Euclidean norm (not the neutral metric).
class ScalarField {
 public:
  using Dual = HyperDual<double>;
  using GenericFn = std::function<Dual(std::span<const Dual>)>;

  [[nodiscard]] static ScalarField polynomial(Polynomial<double> p) {
    const std::size_t dim = p.nvars();
    return ScalarField(dim, PolyNode{std::move(p)});
  }
  /// 1/2 sum_a x_a^2.
  [[nodiscard]] static ScalarField harmonic(std::size_t dim) {
    return kinetic(std::vector<double>(dim / 4, 1.0), dim);
  }
  /// Euclidean distance to the origin; singular at 0.
  [[nodiscard]] static ScalarField distance(std::size_t dim) { return ScalarField(dim, DistanceNode{}); }
  [[nodiscard]] static ScalarField kinetic(std::vector<double> masses, std::size_t dim = 0) {
    if (masses.empty()) throw InputError("kinetic: need at least one mass");
    for (double m : masses)
      if (!(m > 0.0)) throw InputError("kinetic: masses must be positive");
    if (dim == 0) dim = 4 * masses.size();
    if (dim != 4 * masses.size()) throw InputError("kinetic: need one mass per quadruple of coordinates");
    return ScalarField(dim, KineticNode{std::move(masses)});
  }
  /// Field evaluated through hyper-dual arithmetic only.
  [[nodiscard]] static ScalarField generic(std::size_t dim, GenericFn fn, std::string name = "generic") {
    return ScalarField(dim, GenericNode{std::move(fn), std::move(name)});
  }
  [[nodiscard]] static ScalarField constant(std::size_t dim, double c) {
    return polynomial(Polynomial<double>::constant(dim, c));
  }

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

  /// Non-null when the field is a bare polynomial (enables symbolic routes).
  [[nodiscard]] const Polynomial<double>* as_polynomial() const {
    const auto* node = std::get_if<PolyNode>(&node_->data);
    return node ? &node->poly : nullptr;
  }

  friend ScalarField operator+(const ScalarField& a, const ScalarField& b) { return combine(1.0, a, 1.0, b); }
  friend ScalarField operator-(const ScalarField& a, const ScalarField& b) { return combine(1.0, a, -1.0, b); }
  friend ScalarField operator*(double s, const ScalarField& a) {
    if (const auto* p = a.as_polynomial()) return polynomial(s * *p);
    return ScalarField(a.dim_, SumNode{{{s, a.node_}}});
  }

  [[nodiscard]] double value(const Vector& x) const {
    check_dim(x);
    return value_of<double>(*node_, std::span<const double>(x.data(), std::size_t(x.size())));
  }

  /// Value, gradient and Hessian with closed-form derivatives where
  /// available and hyper-dual propagation otherwise.
  [[nodiscard]] EvalResult eval(const Vector& x) const {
    check_dim(x);
    return eval_node(*node_, x);
  }

  /// Same quantities computed purely by hyper-dual propagation.
  [[nodiscard]] EvalResult eval_autodiff(const Vector& x) const {
    check_dim(x);
    return autodiff(*node_, x);
  }

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct PolyNode {
    Polynomial<double> poly;
  };
  struct DistanceNode {};
  struct KineticNode {
    std::vector<double> masses;
  };
  struct GenericNode {
    GenericFn fn;
    std::string name;
  };
  struct SumNode {
    std::vector<std::pair<double, NodePtr>> parts;
  };
  struct Node {
    std::variant<PolyNode, DistanceNode, KineticNode, GenericNode, SumNode> data;
  };

  template <typename N>
  ScalarField(std::size_t dim, N node) : dim_(dim), node_(std::make_shared<const Node>(Node{std::move(node)})) {}

  static ScalarField combine(double sa, const ScalarField& a, double sb, const ScalarField& b) {
    if (a.dim_ != b.dim_) throw InputError("ScalarField: dimension mismatch");
    const auto* pa = a.as_polynomial();
    const auto* pb = b.as_polynomial();
    if (pa && pb) return polynomial(sa * *pa + sb * *pb);
    return ScalarField(a.dim_, SumNode{{{sa, a.node_}, {sb, b.node_}}});
  }

  void check_dim(const Vector& x) const {
    if (std::size_t(x.size()) != dim_)
      throw InputError("ScalarField: point has " + std::to_string(x.size()) + " coordinates, expected " +
                       std::to_string(dim_));
  }

  static double mass_of(const KineticNode& k, std::size_t a) { return k.masses[a % k.masses.size()]; }

  template <typename U>
  static U value_of(const Node& node, std::span<const U> x) {
    return std::visit(
        [&](const auto& d) -> U {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, PolyNode>) {
            return d.poly.evaluate(x);
          } else if constexpr (std::is_same_v<D, DistanceNode>) {
            using std::sqrt;
            U r2(0);
            for (const U& v : x) r2 += v * v;
            if (real_part(r2) == 0.0) throw DomainError("distance: singular at the origin");
            return sqrt(r2);
          } else if constexpr (std::is_same_v<D, KineticNode>) {
            U acc(0);
            for (std::size_t a = 0; a < x.size(); ++a) acc += U(0.5 * mass_of(d, a)) * x[a] * x[a];
            return acc;
          } else if constexpr (std::is_same_v<D, GenericNode>) {
            if constexpr (std::is_same_v<U, Dual>) {
              return d.fn(x);
            } else {
              std::vector<Dual> lifted(x.begin(), x.end());
              return d.fn(std::span<const Dual>(lifted)).re;
            }
          } else {
            U acc(0);
            for (const auto& [s, part] : d.parts) acc += U(s) * value_of<U>(*part, x);
            return acc;
          }
        },
        node.data);
  }

  static EvalResult autodiff(const Node& node, const Vector& x) {
    const std::size_t dim = std::size_t(x.size());
    EvalResult out{0.0, Vector::Zero(Eigen::Index(dim)), Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim))};
    std::vector<Dual> seeded(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      for (std::size_t k = j; k < dim; ++k) {
        for (std::size_t a = 0; a < dim; ++a) seeded[a] = Dual(x[Eigen::Index(a)]);
        seeded[j].e1 = 1.0;
        seeded[k].e2 = 1.0;
        const Dual r = value_of<Dual>(node, std::span<const Dual>(seeded));
        out.value = r.re;
        out.gradient[Eigen::Index(j)] = r.e1;
        out.gradient[Eigen::Index(k)] = r.e2;
        out.hessian(Eigen::Index(j), Eigen::Index(k)) = r.e12;
        out.hessian(Eigen::Index(k), Eigen::Index(j)) = r.e12;
      }
    }
    if (dim == 0) out.value = value_of<double>(node, {});
    return out;
  }

  static EvalResult eval_node(const Node& node, const Vector& x) {
    const Eigen::Index dim = x.size();
    const auto zero = [&] {
      return EvalResult{0.0, Vector::Zero(dim), Matrix::Zero(dim, dim)};
    };
    return std::visit(
        [&](const auto& d) -> EvalResult {
          using D = std::decay_t<decltype(d)>;
          if constexpr (std::is_same_v<D, PolyNode>) {
            EvalResult r = zero();
            const std::span<const double> pt(x.data(), std::size_t(dim));
            r.value = d.poly.evaluate(pt);
            for (Eigen::Index j = 0; j < dim; ++j) {
              const Polynomial<double> dj = d.poly.derivative(std::size_t(j));
              r.gradient[j] = dj.evaluate(pt);
              for (Eigen::Index k = j; k < dim; ++k) {
                const double h = dj.derivative(std::size_t(k)).evaluate(pt);
                r.hessian(j, k) = h;
                r.hessian(k, j) = h;
              }
            }
            return r;
          } else if constexpr (std::is_same_v<D, DistanceNode>) {
            const double rad = x.norm();
            if (rad == 0.0) throw DomainError("distance: singular at the origin");
            EvalResult r = zero();
            r.value = rad;
            r.gradient = x / rad;
            r.hessian = (Matrix::Identity(dim, dim) - r.gradient * r.gradient.transpose()) / rad;
            return r;
          } else if constexpr (std::is_same_v<D, KineticNode>) {
            EvalResult r = zero();
            for (Eigen::Index a = 0; a < dim; ++a) {
              const double m = mass_of(d, std::size_t(a));
              r.value += 0.5 * m * x[a] * x[a];
              r.gradient[a] = m * x[a];
              r.hessian(a, a) = m;
            }
            return r;
          } else if constexpr (std::is_same_v<D, GenericNode>) {
            return autodiff(node, x);
          } else {
            EvalResult r = zero();
            for (const auto& [s, part] : d.parts) {
              const EvalResult p = eval_node(*part, x);
              r.value += s * p.value;
              r.gradient += s * p.gradient;
              r.hessian += s * p.hessian;
            }
            return r;
          }
        },
        node.data);
  }

  std::size_t dim_ = 0;
  NodePtr node_;
};

[[nodiscard]] inline EvalResult eval_field(const ScalarField& f, const Vector& x) { return f.eval(x); }

namespace detail {
inline void check_masses(const std::vector<double>& masses) {
  if (masses.empty()) throw InputError("masses: need at least one mass");
  for (double m : masses)
    if (!(m > 0.0)) throw InputError("masses: every mass must be positive");
}
}  // namespace detail

/// T = 1/2 sum_i m_i (v_i^2 + v_{n+i}^2 + v_{2n+i}^2 + v_{3n+i}^2).
[[nodiscard]] inline double kinetic_energy(const std::vector<double>& masses, const Vector& v) {
  detail::check_masses(masses);
  const std::size_t n = masses.size();
  if (std::size_t(v.size()) != 4 * n) throw InputError("kinetic_energy: velocity must have 4n components");
  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t b = 0; b < 4; ++b) {
      const double vb = v[Eigen::Index(b * n + i)];
      t += 0.5 * masses[i] * vb * vb;
    }
  return t;
}

/// P = sum_i m_i g h(x); h defaults to the Euclidean distance to the origin.
[[nodiscard]] inline double potential_energy(const std::vector<double>& masses, double g_const, const Vector& x,
                                             const ScalarField* height = nullptr) {
  detail::check_masses(masses);
  double total_mass = 0.0;
  for (double m : masses) total_mass += m;
  const double h = height ? height->value(x) : ScalarField::distance(std::size_t(x.size())).value(x);
  return total_mass * g_const * h;
}

/// Potential field sum_i m_i g h(x) as a ScalarField.
[[nodiscard]] inline ScalarField potential_field(const std::vector<double>& masses, double g_const,
                                                 std::size_t dim, const ScalarField* height = nullptr) {
  detail::check_masses(masses);
  double total_mass = 0.0;
  for (double m : masses) total_mass += m;
  const ScalarField h = height ? *height : ScalarField::distance(dim);
  return (total_mass * g_const) * h;
}

/// L = T - P.
[[nodiscard]] inline ScalarField lagrangian_from_TP(const ScalarField& kinetic, const ScalarField& potential) {
  return kinetic - potential;
}

/// The builtin L = T - P with T the kinetic quadratic form and P = sum m_i g |x|.
[[nodiscard]] inline ScalarField kinetic_minus_potential(const std::vector<double>& masses, double g_const) {
  const ScalarField t = ScalarField::kinetic(masses);
  return lagrangian_from_TP(t, potential_field(masses, g_const, t.dim()));
}

}  // namespace paramech
