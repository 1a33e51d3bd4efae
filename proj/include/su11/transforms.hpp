#pragma once

// Symplectic (Heisenberg-picture) transfer matrices on the quadratures
// (x_a, p_a, x_b, p_b), and the SU(1,1) and Mach-Zehnder interferometers
// assembled from them.

#include "su11/gaussian.hpp"
#include "su11/numerics.hpp"

#include <numbers>
#include <span>
#include <variant>

namespace su11 {

class SymplecticTransform {
 public:
  SymplecticTransform() : matrix_(Mat4::Identity()) {}
  explicit SymplecticTransform(const Mat4& matrix) : matrix_(matrix) {}

  const Mat4& matrix() const { return matrix_; }

  /// max |S J S^T - J|.
  double symplectic_residual() const;
  double determinant() const;

  /// `outer * inner` acts as inner first, then outer.
  friend SymplecticTransform operator*(const SymplecticTransform& outer,
                                       const SymplecticTransform& inner) {
    return SymplecticTransform(outer.matrix_ * inner.matrix_);
  }

 private:
  Mat4 matrix_;
};

/// Two-mode squeezer a -> a cosh g + e^{i theta} b^dagger sinh g (and a <-> b).
/// theta = 0 and theta = pi give the two OPA matrices of the balanced setup.
SymplecticTransform opa(double g, double theta);

enum class PhasePlacement {
  mode_a_only,     ///< a -> e^{i phi} a
  both_arms_half,  ///< a -> e^{i phi/2} a, b -> e^{-i phi/2} b
};

SymplecticTransform phase_shifter(double phi,
                                  PhasePlacement placement = PhasePlacement::mode_a_only);

/// a -> cos t a + i sin t b, b -> i sin t a + cos t b; transmittance cos^2 t,
/// 50-50 at t = pi/4.
SymplecticTransform beam_splitter(double theta_bs);

/// Composes in application order: `stages[0]` acts first.
SymplecticTransform compose(std::span<const SymplecticTransform> stages);

/// X -> S X, Gamma -> S Gamma S^T.
GaussianState apply(const SymplecticTransform& s, const GaussianState& state);

struct SU11Spec {
  double g1 = 0.0;
  double theta1 = 0.0;
  double g2 = 0.0;
  double theta2 = std::numbers::pi;
  double phi = 0.0;
  InputState input;

  /// g1 = g2 = g, theta1 = 0, theta2 = pi.
  static SU11Spec balanced(double g, double phi, const InputState& input = {});
};

/// theta1 = 0, theta2 = pi (mod 2 pi) and g1 = g2, to 1e-12.
bool balanced(const SU11Spec& spec);

struct MziSpec {
  double theta_bs = std::numbers::pi / 4;
  double phi = 0.0;
  InputState input;
};

using Interferometer = std::variant<SU11Spec, MziSpec>;

/// OPA2 . phase(mode a) . OPA1.
SymplecticTransform transfer(const SU11Spec& spec);
/// BS . phase(both arms, +-phi/2) . BS.
SymplecticTransform transfer(const MziSpec& spec);
SymplecticTransform transfer(const Interferometer& ifm);

/// Transform up to the phase shifter (the first OPA or beam splitter).
SymplecticTransform first_stage(const Interferometer& ifm);

const InputState& input_of(const Interferometer& ifm);
double phase_of(const Interferometer& ifm);
Interferometer with_phase(const Interferometer& ifm, double phi);

/// Output Gaussian state for the interferometer's input and phase.
GaussianState output_state(const Interferometer& ifm);

/// State between the two mixing elements, before the phase shifter.
GaussianState internal_state(const Interferometer& ifm);

/// State right after the phase shifter. It differs from the output only by
/// the phase-independent second mixer, so it carries the same Fisher
/// information with a better-conditioned covariance.
GaussianState phased_state(const Interferometer& ifm);

/// The phase at which the detection port sees the unperturbed input: 0 for
/// SU(1,1), pi for the Mach-Zehnder (dark b port).
double stationary_phase(const Interferometer& ifm);

/// Complex-amplitude view of the balanced SU(1,1) interferometer.
/// Forward map on (a, b^dagger): T = T_OPA2 T_phi T_OPA1; the Wigner
/// pre-image is T^-1 = [[G, R], [-R, H]].
struct ComplexTransfer {
  cplx u1, v1, u2, v2;
  cplx a, b;  ///< cos(phi/2) e^{-i phi/2}, sin(phi/2) e^{-i phi/2}
  cplx g, h, r;

  Eigen::Matrix2cd forward() const;
  Eigen::Matrix2cd inverse() const;
};

/// Throws UnbalancedSpecError unless balanced(spec).
ComplexTransfer su11_transfer(const SU11Spec& spec);

/// S expressed on (a, a^dagger, b, b^dagger): K S K^-1 with K = H / sqrt2.
CMat4 ladder_form(const SymplecticTransform& s);

}  // namespace su11
