#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "polynomial.hpp"
#include "scalar.hpp"
#include "structures.hpp"

namespace paramech {

/// Strictly increasing list of 0-based coordinate indices (dx_{I_1} ^ ... ^ dx_{I_k}).
using FormIndex = std::vector<int>;

inline constexpr int kMaxFormDegree = 3;

/// Differential form of degree 0..3 on R^{4n} with polynomial coefficients.
template <typename T>
class KForm {
 public:
  KForm() = default;
  KForm(std::size_t nvars, int degree) : nvars_(nvars), degree_(degree) {
    if (degree < 0 || degree > kMaxFormDegree) throw std::invalid_argument("KForm: degree must be in 0..3");
  }

  static KForm function(const Polynomial<T>& f) {
    KForm k(f.nvars(), 0);
    k.add_term({}, f);
    return k;
  }
  /// dx_a (0-based).
  static KForm dx(std::size_t nvars, int a) {
    KForm k(nvars, 1);
    k.add_term({a}, Polynomial<T>::constant(nvars, T(1)));
    return k;
  }
  /// Constant-coefficient 2-form with matrix M (M[b][c] = form(e_b, e_c)).
  static KForm from_matrix(const DenseMatrix<T>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("KForm::from_matrix: matrix not square");
    KForm k(m.rows(), 2);
    for (std::size_t b = 0; b < m.rows(); ++b)
      for (std::size_t c = b + 1; c < m.cols(); ++c) {
        if (m(b, c) + m(c, b) != T(0)) throw std::invalid_argument("KForm::from_matrix: matrix not antisymmetric");
        k.add_term({int(b), int(c)}, Polynomial<T>::constant(m.rows(), m(b, c)));
      }
    return k;
  }

  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] int degree() const noexcept { return degree_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const std::map<FormIndex, Polynomial<T>>& terms() const noexcept { return terms_; }

  /// Adds coeff * dx_{idx[0]} ^ ... in any index order; repeated indices vanish.
  void add_term(FormIndex idx, const Polynomial<T>& coeff) {
    if (int(idx.size()) != degree_) throw std::invalid_argument("KForm: index tuple length != degree");
    if (coeff.nvars() != nvars_) throw std::invalid_argument("KForm: coefficient coordinate count mismatch");
    for (int a : idx)
      if (a < 0 || std::size_t(a) >= nvars_) throw std::out_of_range("KForm: coordinate index");
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
      for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
        if (idx[j - 1] == idx[j]) return;
        std::swap(idx[j - 1], idx[j]);
        sign = -sign;
      }
    if (coeff.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
      terms_.emplace(std::move(idx), sign > 0 ? coeff : -coeff);
      return;
    }
    if (sign > 0)
      it->second += coeff;
    else
      it->second -= coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  [[nodiscard]] Polynomial<T> coefficient(const FormIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Polynomial<T>(nvars_) : it->second;
  }

  KForm& operator+=(const KForm& o) {
    check(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
  }
  KForm& operator-=(const KForm& o) {
    check(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    return *this;
  }
  friend KForm operator+(KForm a, const KForm& b) { return a += b; }
  friend KForm operator-(KForm a, const KForm& b) { return a -= b; }
  friend KForm operator-(const KForm& a) { return T(-1) * a; }
  friend KForm operator*(const T& s, const KForm& a) {
    KForm r(a.nvars_, a.degree_);
    for (const auto& [idx, c] : a.terms_) r.add_term(idx, s * c);
    return r;
  }
  friend KForm operator*(const Polynomial<T>& f, const KForm& a) {
    KForm r(a.nvars_, a.degree_);
    for (const auto& [idx, c] : a.terms_) r.add_term(idx, f * c);
    return r;
  }
  friend bool operator==(const KForm& a, const KForm& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  template <typename U>
  [[nodiscard]] KForm<U> cast() const {
    KForm<U> r(nvars_, degree_);
    for (const auto& [idx, c] : terms_) r.add_term(idx, c.template cast<U>());
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const KForm& k) {
    if (k.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [idx, c] : k.terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "^" : " ") << "dx" << (idx[i] + 1);
    }
    return os;
  }

 private:
  void check(const KForm& o) const {
    if (o.nvars_ != nvars_ || o.degree_ != degree_) throw std::invalid_argument("KForm: incompatible operands");
  }

  std::size_t nvars_ = 0;
  int degree_ = 0;
  std::map<FormIndex, Polynomial<T>> terms_;
};

/// Vector field with polynomial components.
template <typename T>
using SymVectorField = std::vector<Polynomial<T>>;

template <typename T>
[[nodiscard]] SymVectorField<T> constant_vector_field(std::size_t nvars, const std::vector<T>& components) {
  if (components.size() != nvars) throw std::invalid_argument("constant_vector_field: length mismatch");
  SymVectorField<T> x;
  for (const T& c : components) x.push_back(Polynomial<T>::constant(nvars, c));
  return x;
}

template <typename T>
[[nodiscard]] KForm<T> wedge(const KForm<T>& a, const KForm<T>& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("wedge: coordinate count mismatch");
  if (a.degree() + b.degree() > kMaxFormDegree) throw std::invalid_argument("wedge: resulting degree exceeds 3");
  KForm<T> r(a.nvars(), a.degree() + b.degree());
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      FormIndex idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  return r;
}

/// Exterior derivative d(f dx_I) = sum_j (df/dx_j) dx_j ^ dx_I.
template <typename T>
[[nodiscard]] KForm<T> ext_d(const KForm<T>& a) {
  if (a.degree() >= kMaxFormDegree) throw std::invalid_argument("ext_d: degree must be <= 2");
  KForm<T> r(a.nvars(), a.degree() + 1);
  for (const auto& [idx, c] : a.terms())
    for (std::size_t j = 0; j < a.nvars(); ++j) {
      Polynomial<T> dc = c.derivative(j);
      if (dc.is_zero()) continue;
      FormIndex out{int(j)};
      out.insert(out.end(), idx.begin(), idx.end());
      r.add_term(std::move(out), dc);
    }
  return r;
}

/// Contraction (i_X a)(Y_1, ...) = a(X, Y_1, ...).
template <typename T>
[[nodiscard]] KForm<T> interior(const SymVectorField<T>& x, const KForm<T>& a) {
  if (a.degree() < 1) throw std::invalid_argument("interior: degree-0 input");
  if (x.size() != a.nvars()) throw std::invalid_argument("interior: vector field dimension mismatch");
  KForm<T> r(a.nvars(), a.degree() - 1);
  for (const auto& [idx, c] : a.terms())
    for (std::size_t k = 0; k < idx.size(); ++k) {
      const Polynomial<T>& xk = x[std::size_t(idx[k])];
      if (xk.is_zero()) continue;
      FormIndex rest;
      for (std::size_t m = 0; m < idx.size(); ++m)
        if (m != k) rest.push_back(idx[m]);
      r.add_term(std::move(rest), (k % 2 == 0 ? T(1) : T(-1)) * (xk * c));
    }
  return r;
}

/// Vertical derivation i_A: replaces one argument at a time by its A-image.
/// On covectors i_A(dx_b) = sum_a A[b][a] dx_a; zero on functions.
template <typename T>
[[nodiscard]] KForm<T> vertical_derivation(const StructureOperator& op, const KForm<T>& a) {
  if (op.kind().dual) throw std::invalid_argument("vertical_derivation: tangent structures only");
  if (op.dim() != a.nvars()) throw std::invalid_argument("vertical_derivation: dimension mismatch");
  KForm<T> r(a.nvars(), a.degree());
  if (a.degree() == 0) return r;
  const std::size_t dim = op.dim();
  for (const auto& [idx, c] : a.terms())
    for (std::size_t k = 0; k < idx.size(); ++k)
      for (std::size_t col = 0; col < dim; ++col) {
        const int entry = op(std::size_t(idx[k]), col);
        if (entry == 0) continue;
        FormIndex out = idx;
        out[k] = int(col);
        r.add_term(std::move(out), T(entry) * c);
      }
  return r;
}

template <typename T>
[[nodiscard]] KForm<T> vertical_derivation(Tag tag, const KForm<T>& a) {
  if (a.nvars() % 4 != 0) throw std::invalid_argument("vertical_derivation: dimension must be 4n");
  return vertical_derivation(build_structure(tag, a.nvars() / 4), a);
}

/// Vertical differential d_A = i_A d - d i_A, on functions.
template <typename T>
[[nodiscard]] KForm<T> vertical_differential(Tag tag, const Polynomial<T>& f) {
  const KForm<T> f0 = KForm<T>::function(f);
  return vertical_derivation(tag, ext_d(f0)) - ext_d(vertical_derivation(tag, f0));
}

/// One term of a coordinate expression sum_i sign * (d/dx_{deriv n + i}) dx_{target n + i}.
struct CoordinateRule {
  int target;
  int sign;
  int deriv;
};

namespace detail {

// d_F = d/dx_{n+i} dx_i - d/dx_i dx_{n+i} + d/dx_{3n+i} dx_{2n+i} - d/dx_{2n+i} dx_{3n+i}
constexpr std::array<CoordinateRule, 4> kVerticalDF{{{0, +1, 1}, {1, -1, 0}, {2, +1, 3}, {3, -1, 2}}};
// d_G = d/dx_{2n+i} dx_i - d/dx_{3n+i} dx_{n+i} + d/dx_i dx_{2n+i} - d/dx_{n+i} dx_{3n+i}
constexpr std::array<CoordinateRule, 4> kVerticalDG{{{0, +1, 2}, {1, -1, 3}, {2, +1, 0}, {3, -1, 1}}};
// d_H = d/dx_{3n+i} dx_i + d/dx_{2n+i} dx_{n+i} + d/dx_{n+i} dx_{2n+i} + d/dx_i dx_{3n+i}
constexpr std::array<CoordinateRule, 4> kVerticalDH{{{0, +1, 3}, {1, +1, 2}, {2, +1, 1}, {3, +1, 0}}};

}  // namespace detail

[[nodiscard]] inline const std::array<CoordinateRule, 4>& vertical_differential_rules(Tag tag) {
  switch (tag) {
    case Tag::F: return detail::kVerticalDF;
    case Tag::G: return detail::kVerticalDG;
    case Tag::H: return detail::kVerticalDH;
  }
  throw std::logic_error("vertical_differential_rules: bad tag");
}

/// d_A f from the explicit coordinate expressions (second, independent route).
template <typename T>
[[nodiscard]] KForm<T> vertical_differential_coordinates(Tag tag, const Polynomial<T>& f) {
  if (f.nvars() == 0 || f.nvars() % 4 != 0) throw std::invalid_argument("vertical_differential: dimension must be 4n");
  const std::size_t n = f.nvars() / 4;
  KForm<T> r(f.nvars(), 1);
  for (const CoordinateRule& rule : vertical_differential_rules(tag))
    for (std::size_t i = 0; i < n; ++i)
      r.add_term({int(rule.target * n + i)}, T(rule.sign) * f.derivative(rule.deriv * n + i));
  return r;
}

/// Phi_L^A = -d d_A L.
template <typename T>
[[nodiscard]] KForm<T> lagrangian_two_form(Tag tag, const Polynomial<T>& lagrangian) {
  return -ext_d(vertical_differential(tag, lagrangian));
}

/// M[b][c] = a(e_b, e_c) at `point`.
template <typename T, typename U>
[[nodiscard]] DenseMatrix<U> form_to_matrix(const KForm<T>& a, std::span<const U> point) {
  if (a.degree() != 2) throw std::invalid_argument("form_to_matrix: degree must be 2");
  if (point.size() != a.nvars()) throw std::invalid_argument("form_to_matrix: point dimension mismatch");
  DenseMatrix<U> m(a.nvars(), a.nvars());
  for (const auto& [idx, c] : a.terms()) {
    const U v = c.evaluate(point);
    m(std::size_t(idx[0]), std::size_t(idx[1])) = v;
    m(std::size_t(idx[1]), std::size_t(idx[0])) = -v;
  }
  return m;
}

template <typename T, typename U>
[[nodiscard]] DenseMatrix<U> form_to_matrix(const KForm<T>& a, const std::vector<U>& point) {
  return form_to_matrix(a, std::span<const U>(point));
}

}  // namespace paramech
