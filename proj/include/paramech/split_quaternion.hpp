#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace paramech {

// Split quaternions p = x + i y + s u + t v with i^2 = -1, s^2 = t^2 = +1,
// is = t = -si. Coefficient type T is any ordered field (Rational or double).

namespace detail {

struct BasisProduct {
  int sign;
  int index;  // 0:1  1:i  2:s  3:t
};

// Each basis element as a word i^a s^b in the generators.
constexpr std::array<std::array<int, 2>, 4> kBasisWords{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

// Reduces the word i^a1 s^b1 i^a2 s^b2 to normal form using only
// ii = -1, ss = 1 and si = -is.
constexpr BasisProduct reduce_word(int a1, int b1, int a2, int b2) {
  int sign = 1;
  // Move i^a2 left across s^b1: each crossing of s past i flips the sign.
  if (b1 == 1 && a2 == 1) sign = -sign;
  int a = a1 + a2;
  int b = b1 + b2;
  if (a == 2) {
    sign = -sign;
    a = 0;
  }
  if (b == 2) b = 0;
  for (int k = 0; k < 4; ++k)
    if (kBasisWords[k][0] == a && kBasisWords[k][1] == b) return {sign, k};
  return {0, -1};
}

constexpr std::array<std::array<BasisProduct, 4>, 4> make_product_table() {
  std::array<std::array<BasisProduct, 4>, 4> table{};
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      table[p][q] = reduce_word(kBasisWords[p][0], kBasisWords[p][1], kBasisWords[q][0], kBasisWords[q][1]);
  return table;
}

}  // namespace detail

/// The 16 products of basis elements, derived from the generator relations.
inline constexpr auto kSplitQuaternionTable = detail::make_product_table();

template <typename T>
struct SplitQuaternion {
  T x{0};  // 1
  T y{0};  // i
  T u{0};  // s
  T v{0};  // t

  static SplitQuaternion one() { return {T(1), T(0), T(0), T(0)}; }
  static SplitQuaternion basis(int k) {
    SplitQuaternion q;
    q[k] = T(1);
    return q;
  }

  T& operator[](int k) {
    switch (k) {
      case 0: return x;
      case 1: return y;
      case 2: return u;
      case 3: return v;
      default: throw std::out_of_range("SplitQuaternion: component index");
    }
  }
  const T& operator[](int k) const { return const_cast<SplitQuaternion&>(*this)[k]; }

  friend SplitQuaternion operator+(const SplitQuaternion& a, const SplitQuaternion& b) {
    return {a.x + b.x, a.y + b.y, a.u + b.u, a.v + b.v};
  }
  friend SplitQuaternion operator-(const SplitQuaternion& a, const SplitQuaternion& b) {
    return {a.x - b.x, a.y - b.y, a.u - b.u, a.v - b.v};
  }
  friend SplitQuaternion operator-(const SplitQuaternion& a) { return {-a.x, -a.y, -a.u, -a.v}; }
  friend SplitQuaternion operator*(const T& s, const SplitQuaternion& a) {
    return {s * a.x, s * a.y, s * a.u, s * a.v};
  }
  friend SplitQuaternion operator*(const SplitQuaternion& a, const SplitQuaternion& b) {
    SplitQuaternion r;
    for (int p = 0; p < 4; ++p) {
      if (a[p] == T(0)) continue;
      for (int q = 0; q < 4; ++q) {
        const auto e = kSplitQuaternionTable[p][q];
        const T prod = a[p] * b[q];
        if (e.sign > 0)
          r[e.index] += prod;
        else
          r[e.index] -= prod;
      }
    }
    return r;
  }
  friend bool operator==(const SplitQuaternion& a, const SplitQuaternion& b) {
    return a.x == b.x && a.y == b.y && a.u == b.u && a.v == b.v;
  }

  friend std::ostream& operator<<(std::ostream& os, const SplitQuaternion& q) {
    return os << "(" << q.x << ", " << q.y << "i, " << q.u << "s, " << q.v << "t)";
  }
};

template <typename T>
[[nodiscard]] SplitQuaternion<T> sq_mul(const SplitQuaternion<T>& p, const SplitQuaternion<T>& q) {
  return p * q;
}

template <typename T>
[[nodiscard]] SplitQuaternion<T> sq_conj(const SplitQuaternion<T>& p) {
  return {p.x, -p.y, -p.u, -p.v};
}

/// Indefinite squared norm Re(conj(p) p) = x^2 + y^2 - u^2 - v^2, signature (2,2).
template <typename T>
[[nodiscard]] T sq_norm_sq(const SplitQuaternion<T>& p) {
  return p.x * p.x + p.y * p.y - p.u * p.u - p.v * p.v;
}

enum class SquareClass { SquaresToMinusOne, SquaresToPlusOne, Other };

template <typename T>
[[nodiscard]] SquareClass sq_square_class(const SplitQuaternion<T>& p) {
  if (p.x == T(0)) {
    const T q = p.y * p.y - p.u * p.u - p.v * p.v;
    if (q == T(1)) return SquareClass::SquaresToMinusOne;
    if (q == T(-1)) return SquareClass::SquaresToPlusOne;
    return SquareClass::Other;
  }
  if (p.y == T(0) && p.u == T(0) && p.v == T(0) && (p.x == T(1) || p.x == T(-1)))
    return SquareClass::SquaresToPlusOne;
  return SquareClass::Other;
}

/// Element of the right B-module B^n (identified with R^{4n}).
template <typename T>
using BVector = std::vector<SplitQuaternion<T>>;

/// n x n matrix over B, row-major.
template <typename T>
class BMatrix {
 public:
  explicit BMatrix(std::size_t n) : n_(n), data_(n * n) {
    if (n == 0) throw std::invalid_argument("BMatrix: size must be >= 1");
  }

  static BMatrix identity(std::size_t n) {
    BMatrix m(n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = SplitQuaternion<T>::one();
    return m;
  }
  static BMatrix diagonal(const BVector<T>& d) {
    BMatrix m(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) m(k, k) = d[k];
    return m;
  }

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  SplitQuaternion<T>& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const SplitQuaternion<T>& operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  [[nodiscard]] BMatrix conj_transpose() const {
    BMatrix m(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) m(c, r) = sq_conj((*this)(r, c));
    return m;
  }

  friend BMatrix operator*(const BMatrix& a, const BMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("BMatrix: size mismatch");
    BMatrix p(a.n_);
    for (std::size_t r = 0; r < a.n_; ++r)
      for (std::size_t c = 0; c < a.n_; ++c)
        for (std::size_t k = 0; k < a.n_; ++k) p(r, c) = p(r, c) + a(r, k) * b(k, c);
    return p;
  }

  [[nodiscard]] BVector<T> apply(const BVector<T>& xi) const {
    if (xi.size() != n_) throw std::invalid_argument("BMatrix: vector length mismatch");
    BVector<T> out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) out[r] = out[r] + (*this)(r, c) * xi[c];
    return out;
  }

 private:
  std::size_t n_;
  std::vector<SplitQuaternion<T>> data_;
};

/// <xi, eta> = Re( sum_k conj(xi_k) eta_k ); signature (2n, 2n) on R^{4n}.
template <typename T>
[[nodiscard]] T bn_inner(const BVector<T>& xi, const BVector<T>& eta) {
  if (xi.size() != eta.size()) throw std::invalid_argument("bn_inner: length mismatch");
  if (xi.empty()) throw std::invalid_argument("bn_inner: empty vector");
  T acc(0);
  for (std::size_t k = 0; k < xi.size(); ++k) acc += (sq_conj(xi[k]) * eta[k]).x;
  return acc;
}

/// Membership in Sp(n,B): conj(A)^T A = 1 with every coefficient within tol.
template <typename T>
[[nodiscard]] bool sp_nB_member(const BMatrix<T>& a, const T& tol) {
  const BMatrix<T> prod = a.conj_transpose() * a;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) {
      SplitQuaternion<T> d = prod(r, c);
      if (r == c) d.x -= T(1);
      for (int k = 0; k < 4; ++k) {
        const T e = d[k] < T(0) ? T(-d[k]) : d[k];
        if (e > tol) return false;
      }
    }
  return true;
}

/// Action of Sp(n,B) x Sp(1,B) on B^n: (A, p).xi = A xi conj(p).
template <typename T>
[[nodiscard]] BVector<T> group_action(const BMatrix<T>& a, const SplitQuaternion<T>& p, const BVector<T>& xi) {
  if (a.size() != xi.size()) throw std::invalid_argument("group_action: dimension mismatch");
  BVector<T> out = a.apply(xi);
  const SplitQuaternion<T> pc = sq_conj(p);
  for (auto& e : out) e = e * pc;
  return out;
}

/// Real coordinates (x_1..x_n, y_1..y_n, u_1..u_n, v_1..v_n) of xi in R^{4n}.
template <typename T>
[[nodiscard]] std::vector<T> to_real_coordinates(const BVector<T>& xi) {
  const std::size_t n = xi.size();
  std::vector<T> out(4 * n);
  for (std::size_t k = 0; k < n; ++k)
    for (int c = 0; c < 4; ++c) out[c * n + k] = xi[k][c];
  return out;
}

template <typename T>
[[nodiscard]] BVector<T> from_real_coordinates(const std::vector<T>& coords) {
  if (coords.empty() || coords.size() % 4 != 0)
    throw std::invalid_argument("from_real_coordinates: length must be a positive multiple of 4");
  const std::size_t n = coords.size() / 4;
  BVector<T> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (int c = 0; c < 4; ++c) out[k][c] = coords[c * n + k];
  return out;
}

}  // namespace paramech
