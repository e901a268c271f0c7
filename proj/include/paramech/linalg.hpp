#pragma once

#include <string>

#include <Eigen/Dense>

#include "errors.hpp"
#include "scalar.hpp"

namespace paramech {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Reciprocal condition estimates below this are treated as singular.
inline constexpr double kSingularRcond = 1e-12;

template <typename T>
[[nodiscard]] Matrix to_eigen(const DenseMatrix<T>& m) {
  Matrix out(Eigen::Index(m.rows()), Eigen::Index(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(Eigen::Index(r), Eigen::Index(c)) = to_double(m(r, c));
  return out;
}

/// Dense LU with partial pivoting; throws SingularSystemError when the
/// reciprocal condition estimate falls below kSingularRcond.
class LuSolver {
 public:
  LuSolver(const Matrix& a, const std::string& what) : lu_(a) {
    const double rc = a.size() == 0 ? 0.0 : lu_.rcond();
    if (!(rc >= kSingularRcond)) throw SingularSystemError(what + " is singular (rcond " + std::to_string(rc) + ")");
  }
  [[nodiscard]] Vector solve(const Vector& b) const { return lu_.solve(b); }

 private:
  Eigen::PartialPivLU<Matrix> lu_;
};

}  // namespace paramech
