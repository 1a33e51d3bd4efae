#pragma once

// Small dense real/complex linear algebra and finite-difference helpers.
// Everything here works on matrices of dimension <= 8.

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace su11 {

using cplx = std::complex<double>;

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using CVec4 = Eigen::Vector4cd;
using CMat4 = Eigen::Matrix4cd;

namespace numerics {

/// Default step for phase derivatives (radians).
inline constexpr double kDefaultStep = 1e-5;

/// Relative pivot threshold below which a solve reports a singular matrix.
inline constexpr double kPivotTolerance = 1e-14;

/// Solves A X = B by LU with partial pivoting.
/// Throws SingularMatrixError when a pivot is smaller than
/// kPivotTolerance times the largest entry of its row.
RealMatrix solve_linear(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b);

RealMatrix inverse(const RealMatrix& a);
ComplexMatrix inverse(const ComplexMatrix& a);

/// det(A) from the pivoted LU factors; an exactly singular matrix gives 0.
double determinant(const RealMatrix& a);
cplx determinant(const ComplexMatrix& a);

/// ||A||_inf * ||A^-1||_inf, or +inf when A is singular.
double condition_number(const RealMatrix& a);
double condition_number(const ComplexMatrix& a);

/// Largest absolute entry (0 for an empty matrix).
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// (f(x+h) - f(x-h)) / 2h.
double central_difference(const std::function<double(double)>& f, double x,
                          double h = kDefaultStep);

/// Matrix-valued central difference, entry by entry.
template <typename F>
auto central_difference_matrix(F&& f, double x, double h = kDefaultStep) {
  auto plus = f(x + h);
  auto minus = f(x - h);
  return ((plus - minus) / (2.0 * h)).eval();
}

/// (f(x+h) - 2 f(x) + f(x-h)) / h^2.
double second_difference(const std::function<double(double)>& f, double x,
                         double h);

}  // namespace numerics
}  // namespace su11
