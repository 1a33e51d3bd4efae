#include "su11/transforms.hpp"

#include "su11/errors.hpp"

#include <array>
#include <cmath>

namespace su11 {
namespace {

Mat2 rotation(double angle) {
  Mat2 r;
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

// Distance of an angle from a target modulo 2 pi.
double angle_distance(double angle, double target) {
  const double two_pi = 2.0 * std::numbers::pi;
  double d = std::fmod(angle - target, two_pi);
  if (d < 0) d += two_pi;
  return std::min(d, two_pi - d);
}

}  // namespace

double SymplecticTransform::symplectic_residual() const {
  const Mat4& j = symplectic_form();
  return numerics::max_abs(matrix_ * j * matrix_.transpose() - j);
}

double SymplecticTransform::determinant() const {
  return numerics::determinant(RealMatrix(matrix_));
}

SymplecticTransform opa(double g, double theta) {
  const double c = std::cosh(g);
  const double s = std::sinh(g);
  Mat2 coupling;
  coupling << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  Mat4 m = c * Mat4::Identity();
  m.block<2, 2>(0, 2) = s * coupling;
  m.block<2, 2>(2, 0) = s * coupling;
  return SymplecticTransform(m);
}

SymplecticTransform phase_shifter(double phi, PhasePlacement placement) {
  Mat4 m = Mat4::Identity();
  switch (placement) {
    case PhasePlacement::mode_a_only:
      m.block<2, 2>(0, 0) = rotation(phi);
      break;
    case PhasePlacement::both_arms_half:
      m.block<2, 2>(0, 0) = rotation(0.5 * phi);
      m.block<2, 2>(2, 2) = rotation(-0.5 * phi);
      break;
  }
  return SymplecticTransform(m);
}

SymplecticTransform beam_splitter(double theta_bs) {
  // Multiplication by i acts on (x, p) as a quarter-turn rotation.
  const Mat2 times_i = rotation(std::numbers::pi / 2);
  Mat4 m = std::cos(theta_bs) * Mat4::Identity();
  m.block<2, 2>(0, 2) = std::sin(theta_bs) * times_i;
  m.block<2, 2>(2, 0) = std::sin(theta_bs) * times_i;
  return SymplecticTransform(m);
}

SymplecticTransform compose(std::span<const SymplecticTransform> stages) {
  SymplecticTransform total;
  for (const auto& stage : stages) total = stage * total;
  return total;
}

GaussianState apply(const SymplecticTransform& s, const GaussianState& state) {
  const Mat4& m = s.matrix();
  return {m * state.mean(), m * state.cov() * m.transpose()};
}

SU11Spec SU11Spec::balanced(double g, double phi, const InputState& input) {
  return SU11Spec{g, 0.0, g, std::numbers::pi, phi, input};
}

bool balanced(const SU11Spec& spec) {
  constexpr double tol = 1e-12;
  return angle_distance(spec.theta1, 0.0) <= tol &&
         angle_distance(spec.theta2, std::numbers::pi) <= tol &&
         std::abs(spec.g1 - spec.g2) <= tol;
}

SymplecticTransform transfer(const SU11Spec& spec) {
  const std::array stages{opa(spec.g1, spec.theta1),
                          phase_shifter(spec.phi, PhasePlacement::mode_a_only),
                          opa(spec.g2, spec.theta2)};
  return compose(stages);
}

SymplecticTransform transfer(const MziSpec& spec) {
  const std::array stages{beam_splitter(spec.theta_bs),
                          phase_shifter(spec.phi, PhasePlacement::both_arms_half),
                          beam_splitter(spec.theta_bs)};
  return compose(stages);
}

SymplecticTransform transfer(const Interferometer& ifm) {
  return std::visit([](const auto& spec) { return transfer(spec); }, ifm);
}

SymplecticTransform first_stage(const Interferometer& ifm) {
  if (const auto* su = std::get_if<SU11Spec>(&ifm)) return opa(su->g1, su->theta1);
  return beam_splitter(std::get<MziSpec>(ifm).theta_bs);
}

const InputState& input_of(const Interferometer& ifm) {
  return std::visit([](const auto& spec) -> const InputState& { return spec.input; }, ifm);
}

double phase_of(const Interferometer& ifm) {
  return std::visit([](const auto& spec) { return spec.phi; }, ifm);
}

Interferometer with_phase(const Interferometer& ifm, double phi) {
  return std::visit(
      [phi](auto spec) -> Interferometer {
        spec.phi = phi;
        return spec;
      },
      ifm);
}

GaussianState output_state(const Interferometer& ifm) {
  return apply(transfer(ifm), prepare_input(input_of(ifm)));
}

GaussianState internal_state(const Interferometer& ifm) {
  return apply(first_stage(ifm), prepare_input(input_of(ifm)));
}

GaussianState phased_state(const Interferometer& ifm) {
  const double phi = phase_of(ifm);
  const SymplecticTransform shift =
      std::holds_alternative<SU11Spec>(ifm)
          ? phase_shifter(phi, PhasePlacement::mode_a_only)
          : phase_shifter(phi, PhasePlacement::both_arms_half);
  return apply(shift * first_stage(ifm), prepare_input(input_of(ifm)));
}

double stationary_phase(const Interferometer& ifm) {
  return std::holds_alternative<SU11Spec>(ifm) ? 0.0 : std::numbers::pi;
}

Eigen::Matrix2cd ComplexTransfer::forward() const {
  Eigen::Matrix2cd t1, t2, tphi;
  t1 << u1, v1, std::conj(v1), u1;
  t2 << u2, v2, std::conj(v2), u2;
  const cplx e_minus = a - cplx{0.0, 1.0} * b;  // e^{-i phi}
  tphi << 1.0 / e_minus, 0.0, 0.0, 1.0;
  return t2 * tphi * t1;
}

Eigen::Matrix2cd ComplexTransfer::inverse() const {
  Eigen::Matrix2cd m;
  m << g, r, -r, h;
  return m;
}

ComplexTransfer su11_transfer(const SU11Spec& spec) {
  if (!balanced(spec)) {
    throw UnbalancedSpecError(
        "su11_transfer: closed form needs g1 = g2, theta1 = 0, theta2 = pi");
  }
  const double g = spec.g1;
  const double phi = spec.phi;
  const cplx i{0.0, 1.0};
  ComplexTransfer t;
  t.u1 = std::cosh(spec.g1);
  t.v1 = std::polar(std::sinh(spec.g1), spec.theta1);
  t.u2 = std::cosh(spec.g2);
  t.v2 = std::polar(std::sinh(spec.g2), spec.theta2);
  const cplx half = std::polar(1.0, -0.5 * phi);
  t.a = std::cos(0.5 * phi) * half;
  t.b = std::sin(0.5 * phi) * half;
  t.g = t.a - i * t.b * std::cosh(2.0 * g);
  t.h = t.a + i * t.b * std::cosh(2.0 * g);
  t.r = -i * t.b * std::sinh(2.0 * g);
  return t;
}

CMat4 ladder_form(const SymplecticTransform& s) {
  const CMat4 k = basis_change() / std::sqrt(2.0);
  const CMat4 k_inv = std::sqrt(2.0) * basis_change().adjoint();
  return k * s.matrix().cast<cplx>() * k_inv;
}

}  // namespace su11
