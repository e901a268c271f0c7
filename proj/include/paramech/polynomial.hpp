#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "scalar.hpp"

namespace paramech {

/// Exponent vector of a monomial, one entry per coordinate.
using Monomial = std::vector<int>;

/// Sparse multivariate polynomial in `nvars` coordinates. No zero
/// coefficient is ever stored; terms are kept in lexicographic order.
template <typename T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const T& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  /// The coordinate function x_k (0-based).
  static Polynomial variable(std::size_t nvars, std::size_t k) {
    if (k >= nvars) throw std::out_of_range("Polynomial::variable: index");
    Monomial m(nvars, 0);
    m[k] = 1;
    Polynomial p(nvars);
    p.add_term(m, T(1));
    return p;
  }

  [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  [[nodiscard]] const std::map<Monomial, T>& terms() const noexcept { return terms_; }

  void add_term(const Monomial& m, const T& c) {
    if (m.size() != nvars_) throw std::invalid_argument("Polynomial: monomial length mismatch");
    for (int e : m)
      if (e < 0) throw std::invalid_argument("Polynomial: negative exponent");
    if (c == T(0)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  [[nodiscard]] int degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (int e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, T(-c));
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return T(-1) * a; }
  friend Polynomial operator*(const T& s, const Polynomial& a) {
    Polynomial r(a.nvars_);
    if (s == T(0)) return r;
    for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, s * c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.nvars_);
    Monomial m(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t k = 0; k < a.nvars_; ++k) m[k] = ma[k] + mb[k];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Partial derivative with respect to coordinate k.
  [[nodiscard]] Polynomial derivative(std::size_t k) const {
    if (k >= nvars_) throw std::out_of_range("Polynomial::derivative: index");
    Polynomial r(nvars_);
    for (const auto& [m, c] : terms_) {
      if (m[k] == 0) continue;
      Monomial dm = m;
      dm[k] -= 1;
      r.add_term(dm, T(m[k]) * c);
    }
    return r;
  }

  /// Evaluates at a point of any scalar type U (coefficients cast to U).
  template <typename U>
  [[nodiscard]] U evaluate(std::span<const U> x) const {
    if (x.size() != nvars_) throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
    U acc(0);
    for (const auto& [m, c] : terms_) {
      U term = scalar_cast<U>(c);
      for (std::size_t k = 0; k < nvars_; ++k)
        for (int e = 0; e < m[k]; ++e) term *= x[k];
      acc += term;
    }
    return acc;
  }
  template <typename U>
  [[nodiscard]] U evaluate(const std::vector<U>& x) const {
    return evaluate(std::span<const U>(x));
  }

  template <typename U>
  [[nodiscard]] Polynomial<U> cast() const {
    Polynomial<U> r(nvars_);
    for (const auto& [m, c] : terms_) r.add_term(m, scalar_cast<U>(c));
    return r;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.terms_.empty()) return os << "0";
    bool first = true;
    for (const auto& [m, c] : p.terms_) {
      if (!first) os << " + ";
      first = false;
      os << c;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) continue;
        os << "*x" << (k + 1);
        if (m[k] > 1) os << "^" << m[k];
      }
    }
    return os;
  }

 private:
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw std::invalid_argument("Polynomial: coordinate count mismatch");
  }

  std::size_t nvars_ = 0;
  std::map<Monomial, T> terms_;
};

}  // namespace paramech
