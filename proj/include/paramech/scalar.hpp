#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace paramech {

/// Exact rational scalar used on every verification path.
using Rational = boost::multiprecision::cpp_rational;

template <typename T>
[[nodiscard]] inline double to_double(const T& v) {
  return static_cast<double>(v);
}
template <>
[[nodiscard]] inline double to_double<Rational>(const Rational& v) {
  return v.template convert_to<double>();
}

/// Converts between scalar types; double -> Rational is exact.
template <typename To, typename From>
[[nodiscard]] inline To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, double>) {
    return to_double(v);
  } else {
    return To(v);
  }
}

/// Small dense row-major matrix over an arbitrary ring. Used for the exact
/// integer/rational structure matrices; numerical work goes through Eigen.
template <typename T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix p(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& ark = a(r, k);
        if (ark == T(0)) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) p(r, c) += ark * b(k, c);
      }
    return p;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    a.check_same(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& v : a.data_) v = -v;
    return a;
  }
  friend DenseMatrix operator*(const T& s, DenseMatrix a) {
    for (auto& v : a.data_) v *= s;
    return a;
  }

  [[nodiscard]] std::vector<T> apply(const std::vector<T>& x) const {
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix: vector length mismatch");
    std::vector<T> y(rows_, T(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) y[r] += (*this)(r, c) * x[c];
    return y;
  }

  template <typename U>
  [[nodiscard]] DenseMatrix<U> cast() const {
    DenseMatrix<U> m(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) m(r, c) = scalar_cast<U>((*this)(r, c));
    return m;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const DenseMatrix& m) {
    for (std::size_t r = 0; r < m.rows_; ++r) {
      for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? " " : "") << m(r, c);
      os << '\n';
    }
    return os;
  }

 private:
  void check_same(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("DenseMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = DenseMatrix<int>;

/// Exact determinant by Gaussian elimination over the rationals.
template <typename T>
[[nodiscard]] Rational exact_determinant(const DenseMatrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("exact_determinant: matrix not square");
  const std::size_t n = m.rows();
  DenseMatrix<Rational> a = m.template cast<Rational>();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a(pivot, k) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (a(r, k) == 0) continue;
      const Rational f = a(r, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

}  // namespace paramech
