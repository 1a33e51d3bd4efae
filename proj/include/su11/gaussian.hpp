#pragma once

// Two-mode Gaussian states in the quadrature convention x = a + a^dagger,
// p = -i(a - a^dagger), so the vacuum covariance is the identity.
// Quadrature order is (x_a, p_a, x_b, p_b).

#include "su11/numerics.hpp"

namespace su11 {

enum class Mode { a = 0, b = 1 };

/// Coherent light on mode a, displaced squeezed vacuum on mode b.
/// `b_displacement` is zero for the coherent x squeezed-vacuum input and
/// carries the second coherent amplitude for two-coherent inputs.
struct InputState {
  double alpha_mag = 0.0;
  double theta_alpha = 0.0;
  double r = 0.0;
  double theta_s = 0.0;
  cplx b_displacement{0.0, 0.0};

  cplx alpha() const { return std::polar(alpha_mag, theta_alpha); }
  /// Mean photon number of the coherent part on mode a, |alpha|^2.
  double n_alpha() const { return alpha_mag * alpha_mag; }
  /// Mean photon number of the squeezed vacuum, sinh^2 r.
  double n_squeezed() const;
};

class GaussianState {
 public:
  /// Vacuum.
  GaussianState();
  /// Symmetrizes `cov`.
  GaussianState(const Vec4& mean, const Mat4& cov);

  const Vec4& mean() const { return mean_; }
  const Mat4& cov() const { return cov_; }

  static GaussianState vacuum() { return {}; }

 private:
  Vec4 mean_;
  Mat4 cov_;
};

struct ModeMoments {
  Vec2 mean;
  Mat2 cov;
};

/// Mean and symmetrized covariance of d = (a, a^dagger, b, b^dagger).
/// sigma is complex symmetric (not Hermitian); omega is [d_u, d_v].
struct ComplexMoments {
  CVec4 dbar;
  CMat4 sigma;

  static const Mat4& omega();
};

/// |alpha_0> (x) |0, xi = r e^{i theta_s}>.
GaussianState prepare_input(double alpha_mag, double theta_alpha, double r,
                            double theta_s = 0.0);
GaussianState prepare_input(const InputState& input);

/// Wigner function in the alpha convention (per-mode vacuum peak 2/pi):
/// 4 / (pi^2 sqrt(det cov)) exp(-1/2 d^T cov^-1 d) at X = 2(Re a, Im a,
/// Re b, Im b). Integrates to 1 over d^2alpha d^2beta; over quadrature
/// coordinates the Jacobian is 1/16.
double wigner_value(const GaussianState& state, cplx alpha, cplx beta);

/// Reduced moments of one mode (restriction of mean and covariance).
ModeMoments marginal(const GaussianState& state, Mode mode);

/// d-bar = K X-bar and Sigma = K Gamma K^T with K = H / sqrt(2), so that
/// d-bar holds <a>, <a^dagger>, <b>, <b^dagger>.
ComplexMoments to_complex(const GaussianState& state);
GaussianState from_complex(const ComplexMoments& moments);

/// The constant basis-change matrix H (rows (1, i)/sqrt2, (1, -i)/sqrt2 per
/// mode).
const CMat4& basis_change();

/// Per-mode symplectic form, blocks [[0, 1], [-1, 0]].
const Mat4& symplectic_form();

/// Smallest eigenvalue of the Hermitian matrix cov + iJ; the uncertainty
/// principle requires it to be >= 0.
double uncertainty_min_eigenvalue(const GaussianState& state);

/// Covariance of single-mode squeezed vacuum with squeezing angle theta_s
/// (anti-squeezed axis at theta_s / 2).
Mat2 squeezed_covariance(double r, double theta_s);

}  // namespace su11
