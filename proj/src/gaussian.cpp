#include "su11/gaussian.hpp"

#include "su11/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace su11 {

double InputState::n_squeezed() const {
  const double s = std::sinh(r);
  return s * s;
}

GaussianState::GaussianState() : mean_(Vec4::Zero()), cov_(Mat4::Identity()) {}

GaussianState::GaussianState(const Vec4& mean, const Mat4& cov)
    : mean_(mean), cov_(0.5 * (cov + cov.transpose())) {}

const Mat4& ComplexMoments::omega() {
  static const Mat4 kOmega = [] {
    Mat4 o = Mat4::Zero();
    o(0, 1) = 1.0;
    o(1, 0) = -1.0;
    o(2, 3) = 1.0;
    o(3, 2) = -1.0;
    return o;
  }();
  return kOmega;
}

const Mat4& symplectic_form() { return ComplexMoments::omega(); }

const CMat4& basis_change() {
  static const CMat4 kH = [] {
    const cplx i{0.0, 1.0};
    CMat4 h = CMat4::Zero();
    h(0, 0) = 1.0;
    h(0, 1) = i;
    h(1, 0) = 1.0;
    h(1, 1) = -i;
    h(2, 2) = 1.0;
    h(2, 3) = i;
    h(3, 2) = 1.0;
    h(3, 3) = -i;
    return CMat4(h / std::sqrt(2.0));
  }();
  return kH;
}

Mat2 squeezed_covariance(double r, double theta_s) {
  const double c = std::cos(0.5 * theta_s);
  const double s = std::sin(0.5 * theta_s);
  Mat2 rot;
  rot << c, -s, s, c;
  const Mat2 diag = Eigen::Vector2d(std::exp(2.0 * r), std::exp(-2.0 * r)).asDiagonal();
  return rot * diag * rot.transpose();
}

GaussianState prepare_input(double alpha_mag, double theta_alpha, double r,
                            double theta_s) {
  return prepare_input(InputState{alpha_mag, theta_alpha, r, theta_s, {}});
}

GaussianState prepare_input(const InputState& input) {
  const cplx alpha = input.alpha();
  Vec4 mean;
  mean << 2.0 * alpha.real(), 2.0 * alpha.imag(),
      2.0 * input.b_displacement.real(), 2.0 * input.b_displacement.imag();
  Mat4 cov = Mat4::Identity();
  cov.block<2, 2>(2, 2) = squeezed_covariance(input.r, input.theta_s);
  return {mean, cov};
}

double wigner_value(const GaussianState& state, cplx alpha, cplx beta) {
  const double det = numerics::determinant(RealMatrix(state.cov()));
  if (det < 1e-14) throw SingularMatrixError("wigner_value: singular covariance");
  Vec4 x;
  x << 2.0 * alpha.real(), 2.0 * alpha.imag(), 2.0 * beta.real(), 2.0 * beta.imag();
  const Vec4 delta = x - state.mean();
  const Vec4 w = numerics::solve_linear(RealMatrix(state.cov()), RealMatrix(delta));
  const double pi = std::numbers::pi;
  return 4.0 / (pi * pi * std::sqrt(det)) * std::exp(-0.5 * delta.dot(w));
}

ModeMoments marginal(const GaussianState& state, Mode mode) {
  const int k = 2 * static_cast<int>(mode);
  return {state.mean().segment<2>(k), state.cov().block<2, 2>(k, k)};
}

ComplexMoments to_complex(const GaussianState& state) {
  const CMat4 k = basis_change() / std::sqrt(2.0);
  ComplexMoments out;
  out.dbar = k * state.mean().cast<cplx>();
  out.sigma = k * state.cov().cast<cplx>() * k.transpose();
  return out;
}

GaussianState from_complex(const ComplexMoments& moments) {
  // K^-1 = sqrt2 H^dagger, since H is unitary.
  const CMat4 k_inv = std::sqrt(2.0) * basis_change().adjoint();
  const CVec4 mean = k_inv * moments.dbar;
  const CMat4 cov = k_inv * moments.sigma * k_inv.transpose();
  return {mean.real(), cov.real()};
}

double uncertainty_min_eigenvalue(const GaussianState& state) {
  const CMat4 m = state.cov().cast<cplx>() +
                  cplx{0.0, 1.0} * symplectic_form().cast<cplx>();
  Eigen::SelfAdjointEigenSolver<CMat4> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace su11
