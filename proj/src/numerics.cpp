#include "su11/numerics.hpp"

#include "su11/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

namespace su11::numerics {
namespace {

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// In-place LU with partial pivoting. `perm` maps factor rows to input rows.
// Returns false (and leaves the factorization incomplete) on the first pivot
// that fails the threshold; `threshold` of 0 only rejects exact zeros.
template <typename Scalar>
bool lu_factor(Dense<Scalar>& lu, std::vector<int>& perm, int& swaps,
               double threshold) {
  const Eigen::Index n = lu.rows();
  perm.resize(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  swaps = 0;
  std::vector<double> row_scale(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    row_scale[static_cast<std::size_t>(i)] = lu.row(i).cwiseAbs().maxCoeff();
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index pivot = k;
    double best = std::abs(lu(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (pivot != k) {
      lu.row(k).swap(lu.row(pivot));
      std::swap(perm[static_cast<std::size_t>(k)],
                perm[static_cast<std::size_t>(pivot)]);
      std::swap(row_scale[static_cast<std::size_t>(k)],
                row_scale[static_cast<std::size_t>(pivot)]);
      ++swaps;
    }
    const double scale = row_scale[static_cast<std::size_t>(k)];
    if (best == 0.0 || best < threshold * scale) return false;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      lu.row(i).tail(n - k - 1) -= lu(i, k) * lu.row(k).tail(n - k - 1);
    }
  }
  return true;
}

template <typename Scalar>
Dense<Scalar> solve_impl(const Dense<Scalar>& a, const Dense<Scalar>& b) {
  if (a.rows() != a.cols()) throw DomainError("solve_linear: matrix is not square");
  if (b.rows() != a.rows()) throw DomainError("solve_linear: right-hand side is not conformable");
  Dense<Scalar> lu = a;
  std::vector<int> perm;
  int swaps = 0;
  if (!lu_factor(lu, perm, swaps, kPivotTolerance)) {
    throw SingularMatrixError("solve_linear: pivot below " +
                              std::to_string(kPivotTolerance) +
                              " x row scale");
  }
  const Eigen::Index n = a.rows();
  Dense<Scalar> x(n, b.cols());
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = b.row(perm[static_cast<std::size_t>(i)]);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) x.row(i) -= lu(i, j) * x.row(j);
  }
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = i + 1; j < n; ++j) x.row(i) -= lu(i, j) * x.row(j);
    x.row(i) /= lu(i, i);
  }
  return x;
}

template <typename Scalar>
Scalar determinant_impl(const Dense<Scalar>& a) {
  if (a.rows() != a.cols()) throw DomainError("determinant: matrix is not square");
  if (a.rows() == 0) return Scalar(1);
  Dense<Scalar> lu = a;
  std::vector<int> perm;
  int swaps = 0;
  if (!lu_factor(lu, perm, swaps, 0.0)) return Scalar(0);
  Scalar det = lu.diagonal().prod();
  return (swaps % 2 == 0) ? det : -det;
}

template <typename Scalar>
double condition_impl(const Dense<Scalar>& a) {
  try {
    const Dense<Scalar> inv =
        solve_impl<Scalar>(a, Dense<Scalar>::Identity(a.rows(), a.cols()));
    const double norm_a = a.cwiseAbs().rowwise().sum().maxCoeff();
    const double norm_inv = inv.cwiseAbs().rowwise().sum().maxCoeff();
    return norm_a * norm_inv;
  } catch (const SingularMatrixError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

RealMatrix solve_linear(const RealMatrix& a, const RealMatrix& b) {
  return solve_impl<double>(a, b);
}
ComplexMatrix solve_linear(const ComplexMatrix& a, const ComplexMatrix& b) {
  return solve_impl<cplx>(a, b);
}

RealMatrix inverse(const RealMatrix& a) {
  return solve_impl<double>(a, RealMatrix::Identity(a.rows(), a.cols()));
}
ComplexMatrix inverse(const ComplexMatrix& a) {
  return solve_impl<cplx>(a, ComplexMatrix::Identity(a.rows(), a.cols()));
}

double determinant(const RealMatrix& a) { return determinant_impl<double>(a); }
cplx determinant(const ComplexMatrix& a) { return determinant_impl<cplx>(a); }

double condition_number(const RealMatrix& a) { return condition_impl<double>(a); }
double condition_number(const ComplexMatrix& a) { return condition_impl<cplx>(a); }

double central_difference(const std::function<double(double)>& f, double x,
                          double h) {
  if (!(h > 0.0)) throw DomainError("central_difference: step must be positive");
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double second_difference(const std::function<double(double)>& f, double x,
                         double h) {
  if (!(h > 0.0)) throw DomainError("second_difference: step must be positive");
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace su11::numerics
