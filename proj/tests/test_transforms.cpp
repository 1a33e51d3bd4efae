#include "su11/errors.hpp"
#include "su11/transforms.hpp"
#include "support.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace su11 {
namespace {

using std::numbers::pi;
using testing::uniform;

TEST(Opa, ZeroGainIsIdentity) {
  for (double theta : {0.0, 1.0, pi}) EXPECT_EQ(opa(0.0, theta).matrix(), Mat4::Identity());
}

TEST(Opa, BlockStructure) {
  const Mat4 s = opa(1.0, 0.0).matrix();
  const double c = std::cosh(1.0);
  const double sh = std::sinh(1.0);
  Mat4 expected;
  expected << c, 0, sh, 0,
              0, c, 0, -sh,
              sh, 0, c, 0,
              0, -sh, 0, c;
  EXPECT_LT(testing::max_diff(s, expected), 1e-15);
}

TEST(Opa, SymplecticAndUnitDeterminant) {
  for (int trial = 0; trial < 50; ++trial) {
    const SymplecticTransform s = opa(uniform(0, 3), uniform(-pi, pi));
    EXPECT_LT(s.symplectic_residual(), 1e-10);
    EXPECT_NEAR(s.determinant(), 1.0, 1e-8);
  }
}

TEST(Opa, VacuumGivesTwoModeSqueezedVacuum) {
  const double g = 0.8;
  const GaussianState s = apply(opa(g, 0.0), GaussianState::vacuum());
  EXPECT_EQ(s.mean(), Vec4::Zero());
  const Mat4& c = s.cov();
  EXPECT_NEAR(c(0, 0), std::cosh(2 * g), 1e-12);
  EXPECT_NEAR(c(3, 3), std::cosh(2 * g), 1e-12);
  EXPECT_NEAR(c(0, 2), std::sinh(2 * g), 1e-12);
  EXPECT_NEAR(c(1, 3), -std::sinh(2 * g), 1e-12);
}

TEST(Opa, OppositePhasesCancel) {
  for (double g : {0.3, 1.0, 2.5}) {
    const SymplecticTransform s = opa(g, pi) * opa(g, 0.0);
    EXPECT_LT(testing::max_diff(s.matrix(), Mat4::Identity()), 1e-12 * std::exp(2 * g));
  }
}

TEST(PhaseShifter, ZeroAndQuarterTurn) {
  EXPECT_EQ(phase_shifter(0.0).matrix(), Mat4::Identity());
  const Mat4 s = phase_shifter(pi / 2).matrix();
  // x -> -p, p -> x on mode a.
  EXPECT_NEAR(s(0, 1), -1.0, 1e-15);
  EXPECT_NEAR(s(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(s(0, 0), 0.0, 1e-15);
  EXPECT_EQ(Mat2(s.block<2, 2>(2, 2)), Mat2::Identity());
}

TEST(PhaseShifter, BothArmsSplitsPhase) {
  const double phi = 0.9;
  const Mat4 s = phase_shifter(phi, PhasePlacement::both_arms_half).matrix();
  EXPECT_NEAR(s(0, 0), std::cos(phi / 2), 1e-15);
  EXPECT_NEAR(s(2, 2), std::cos(phi / 2), 1e-15);
  EXPECT_NEAR(s(1, 0), std::sin(phi / 2), 1e-15);
  EXPECT_NEAR(s(3, 2), -std::sin(phi / 2), 1e-15);
  const SymplecticTransform round =
      phase_shifter(-phi, PhasePlacement::both_arms_half) *
      phase_shifter(phi, PhasePlacement::both_arms_half);
  EXPECT_LT(testing::max_diff(round.matrix(), Mat4::Identity()), 1e-15);
}

TEST(BeamSplitter, ZeroIsIdentityAndOrthogonal) {
  EXPECT_EQ(beam_splitter(0.0).matrix(), Mat4::Identity());
  for (double t : {0.2, pi / 4, 1.3}) {
    const Mat4 s = beam_splitter(t).matrix();
    EXPECT_LT(testing::max_diff(s * s.transpose(), Mat4::Identity()), 1e-15);
    EXPECT_LT(beam_splitter(t).symplectic_residual(), 1e-15);
  }
}

TEST(BeamSplitter, BalancedSplitsCoherentLight) {
  const GaussianState out = apply(beam_splitter(pi / 4), prepare_input(2.0, 0, 0, 0));
  // |<a>|^2 = |<b>|^2 = 2.
  EXPECT_NEAR(out.mean().head<2>().squaredNorm() / 4, 2.0, 1e-12);
  EXPECT_NEAR(out.mean().tail<2>().squaredNorm() / 4, 2.0, 1e-12);
  EXPECT_LT(testing::max_diff(out.cov(), Mat4::Identity()), 1e-15);
}

TEST(Compose, FirstStageActsFirst) {
  const SymplecticTransform a = opa(0.4, 0.0);
  const SymplecticTransform b = phase_shifter(0.3);
  const std::array stages{a, b};
  EXPECT_EQ(compose(stages).matrix(), (b * a).matrix());
  EXPECT_EQ(compose({}).matrix(), Mat4::Identity());
}

TEST(Compose, RandomChainsStaySymplectic) {
  for (int trial = 0; trial < 30; ++trial) {
    const std::array stages{opa(uniform(0, 2), uniform(-pi, pi)), phase_shifter(uniform(-pi, pi)),
                            beam_splitter(uniform(0, pi)), opa(uniform(0, 2), uniform(-pi, pi))};
    const SymplecticTransform s = compose(stages);
    EXPECT_LT(s.symplectic_residual(), 1e-9);
    EXPECT_NEAR(s.determinant(), 1.0, 1e-6);
  }
}

TEST(Su11, BalancedAtZeroPhaseIsIdentity) {
  for (double g : {0.1, 1.0, 2.0}) {
    const Mat4 s = transfer(SU11Spec::balanced(g, 0.0)).matrix();
    EXPECT_LT(testing::max_diff(s, Mat4::Identity()), 1e-12 * std::exp(2 * g));
  }
}

TEST(Su11, BalancedDetection) {
  EXPECT_TRUE(balanced(SU11Spec::balanced(1.0, 0.3)));
  SU11Spec wrapped = SU11Spec::balanced(1.0, 0.3);
  wrapped.theta2 = -pi;
  EXPECT_TRUE(balanced(wrapped));
  SU11Spec uneven = SU11Spec::balanced(1.0, 0.3);
  uneven.g2 = 1.1;
  EXPECT_FALSE(balanced(uneven));
  EXPECT_THROW(su11_transfer(uneven), UnbalancedSpecError);
}

TEST(Su11, PhaseAndStationaryPoints) {
  const Interferometer su = SU11Spec::balanced(1.0, 0.4);
  const Interferometer mz = MziSpec{pi / 4, 0.4, {}};
  EXPECT_DOUBLE_EQ(phase_of(su), 0.4);
  EXPECT_DOUBLE_EQ(phase_of(with_phase(mz, 1.1)), 1.1);
  EXPECT_DOUBLE_EQ(stationary_phase(su), 0.0);
  EXPECT_DOUBLE_EQ(stationary_phase(mz), pi);
}

TEST(Su11, StateStagesAreConsistent) {
  InputState in = testing::random_input();
  const Interferometer ifm = SU11Spec::balanced(0.7, 0.9, in);
  const GaussianState internal = internal_state(ifm);
  const GaussianState phased = phased_state(ifm);
  const GaussianState out = output_state(ifm);
  EXPECT_LT(testing::max_diff(apply(opa(0.7, 0.0), prepare_input(in)).cov(), internal.cov()),
            1e-12);
  EXPECT_LT(testing::max_diff(apply(phase_shifter(0.9), internal).mean(), phased.mean()), 1e-12);
  EXPECT_LT(testing::max_diff(apply(opa(0.7, pi), phased).cov(), out.cov()), 1e-10);
}

TEST(Mzi, DarkPortAtPi) {
  const Interferometer ifm = MziSpec{pi / 4, pi, {1.5, 0.0, 0.0, 0.0}};
  const GaussianState out = output_state(ifm);
  EXPECT_LT(out.mean().tail<2>().norm(), 1e-12);
  EXPECT_NEAR(out.mean().head<2>().norm(), 3.0, 1e-12);
}

TEST(ComplexTransferView, ZeroPhaseIsIdentity) {
  const ComplexTransfer t = su11_transfer(SU11Spec::balanced(1.0, 0.0));
  EXPECT_LT(std::abs(t.g - 1.0), 1e-12);
  EXPECT_LT(std::abs(t.h - 1.0), 1e-12);
  EXPECT_LT(std::abs(t.r), 1e-12);
}

TEST(ComplexTransferView, PiPhaseAmplitude) {
  const ComplexTransfer t = su11_transfer(SU11Spec::balanced(1.0, pi));
  EXPECT_NEAR(std::abs(t.r), std::sinh(2.0), 1e-12);
  EXPECT_NEAR(std::abs(t.r), 3.62686, 1e-5);
}

// The ladder-operator form of the quadrature matrix must agree with the
// complex transfer on (a, b^dagger).
TEST(ComplexTransferView, MatchesLadderForm) {
  for (int trial = 0; trial < 30; ++trial) {
    const double g = uniform(0.0, 2.0);
    const double phi = uniform(-pi, pi);
    const SU11Spec spec = SU11Spec::balanced(g, phi);
    const ComplexTransfer t = su11_transfer(spec);
    const CMat4 c = ladder_form(transfer(spec));
    const Eigen::Matrix2cd f = t.forward();
    const double scale = std::exp(2 * g);
    EXPECT_LT(std::abs(c(0, 0) - f(0, 0)), 1e-12 * scale);
    EXPECT_LT(std::abs(c(0, 3) - f(0, 1)), 1e-12 * scale);
    EXPECT_LT(std::abs(c(3, 0) - f(1, 0)), 1e-12 * scale);
    EXPECT_LT(std::abs(c(3, 3) - f(1, 1)), 1e-12 * scale);
    EXPECT_LT(std::abs(c(0, 1)) + std::abs(c(0, 2)), 1e-12 * scale);

    EXPECT_LT(testing::max_diff(Eigen::Matrix2cd(f * t.inverse()), Eigen::Matrix2cd::Identity()),
              1e-10 * scale);
    EXPECT_NEAR(std::norm(t.g) - std::norm(t.r), 1.0, 1e-9 * scale);
    EXPECT_NEAR(std::norm(t.h) - std::norm(t.r), 1.0, 1e-9 * scale);
    EXPECT_NEAR(std::norm(t.u1) - std::norm(t.v1), 1.0, 1e-12 * scale);
    EXPECT_LT(std::abs(t.inverse().determinant() - std::polar(1.0, -phi)), 1e-9 * scale);
  }
}

}  // namespace
}  // namespace su11
