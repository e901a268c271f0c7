#pragma once

#include <cmath>
#include <ostream>

namespace paramech {

/// Hyper-dual number a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0. Seeding
/// e1 along x_j and e2 along x_k yields f, df/dx_j, df/dx_k and
/// d2f/dx_j dx_k with no truncation error.
template <typename T>
struct HyperDual {
  T re{0};
  T e1{0};
  T e2{0};
  T e12{0};

  HyperDual() = default;
  HyperDual(T value) : re(value) {}  // NOLINT: implicit on purpose, constants mix freely
  HyperDual(T value, T d1, T d2, T d12) : re(value), e1(d1), e2(d2), e12(d12) {}

  HyperDual& operator+=(const HyperDual& o) {
    re += o.re;
    e1 += o.e1;
    e2 += o.e2;
    e12 += o.e12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    re -= o.re;
    e1 -= o.e1;
    e2 -= o.e2;
    e12 -= o.e12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
  friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
  friend HyperDual operator-(const HyperDual& a) { return {-a.re, -a.e1, -a.e2, -a.e12}; }
  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.re * b.re, a.re * b.e1 + a.e1 * b.re, a.re * b.e2 + a.e2 * b.re,
            a.re * b.e12 + a.e1 * b.e2 + a.e2 * b.e1 + a.e12 * b.re};
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) { return a * inverse(b); }

  friend HyperDual inverse(const HyperDual& b) {
    const T inv = T(1) / b.re;
    return chain(b, inv, -inv * inv, T(2) * inv * inv * inv);
  }

  /// Applies a scalar function given its value and first two derivatives at re.
  friend HyperDual chain(const HyperDual& x, T f, T df, T d2f) {
    return {f, df * x.e1, df * x.e2, df * x.e12 + d2f * x.e1 * x.e2};
  }

  friend bool operator<(const HyperDual& a, const HyperDual& b) { return a.re < b.re; }
  friend bool operator==(const HyperDual& a, const HyperDual& b) {
    return a.re == b.re && a.e1 == b.e1 && a.e2 == b.e2 && a.e12 == b.e12;
  }

  friend std::ostream& operator<<(std::ostream& os, const HyperDual& h) {
    return os << "[" << h.re << ", " << h.e1 << ", " << h.e2 << ", " << h.e12 << "]";
  }
};

template <typename T>
HyperDual<T> sqrt(const HyperDual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.re);
  return chain(x, s, T(0.5) / s, T(-0.25) / (s * x.re));
}
template <typename T>
HyperDual<T> exp(const HyperDual<T>& x) {
  using std::exp;
  const T e = exp(x.re);
  return chain(x, e, e, e);
}
template <typename T>
HyperDual<T> log(const HyperDual<T>& x) {
  using std::log;
  return chain(x, log(x.re), T(1) / x.re, T(-1) / (x.re * x.re));
}
template <typename T>
HyperDual<T> sin(const HyperDual<T>& x) {
  using std::cos;
  using std::sin;
  return chain(x, sin(x.re), cos(x.re), -sin(x.re));
}
template <typename T>
HyperDual<T> cos(const HyperDual<T>& x) {
  using std::cos;
  using std::sin;
  return chain(x, cos(x.re), -sin(x.re), -cos(x.re));
}

template <typename T>
[[nodiscard]] inline T real_part(const T& v) {
  return v;
}
template <typename T>
[[nodiscard]] inline T real_part(const HyperDual<T>& v) {
  return v.re;
}

}  // namespace paramech
