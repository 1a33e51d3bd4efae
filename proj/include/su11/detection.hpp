#pragma once

// Detection signals (parity, homodyne, intensity) on Gaussian outputs and the
// phase sensitivity noise / |d signal / d phi|.

#include "su11/gaussian.hpp"
#include "su11/transforms.hpp"

#include <limits>
#include <optional>
#include <string>

namespace su11 {

enum class Scheme { parity, homodyne, intensity };

/// Port::both is only meaningful for intensity (total photon number).
enum class Port { a, b, both };

struct Detector {
  Scheme scheme = Scheme::parity;
  Port port = Port::b;
  /// Homodyne only. Unset means the quadrature that minimizes the phase
  /// uncertainty at the evaluation phase.
  std::optional<double> quadrature_angle;
};

/// Mean and variance of a measured observable.
struct Reading {
  double mean = 0.0;
  double variance = 0.0;
};

/// (det G_m)^{-1/2} exp(-1/2 mu_m^T G_m^-1 mu_m) on the chosen mode.
/// Throws SingularMatrixError when det G_m < 1e-14.
double parity_expectation(const GaussianState& state, Mode mode);

/// cos(t) x + sin(t) p on one mode.
Reading homodyne_signal(const GaussianState& state, Mode mode, double quadrature_angle);

/// Photon number of one mode: <n> = (tr V + |mu|^2 - 2) / 4,
/// Var n = (tr V^2 - 2) / 8 + mu^T V mu / 4.
Reading intensity_signal(const GaussianState& state, Mode mode);

/// n_a + n_b, including the cross-mode covariance.
Reading total_intensity_signal(const GaussianState& state);

/// Reading of a detector with a fixed quadrature (homodyne without an angle
/// reads x).
Reading measure(const Detector& detector, const GaussianState& state);

/// Closed-form parity of mode b for the balanced SU(1,1) interferometer with
/// coherent x squeezed-vacuum input, written as e^{-t2/t3} / sqrt(t1).
struct ParityClosedFormTerms {
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;

  double value() const;
};

ParityClosedFormTerms parity_terms_su11(double alpha_mag, double theta_alpha, double r,
                                      double g, double phi);
double parity_closed_form_su11(double alpha_mag, double theta_alpha, double r, double g,
                               double phi);

enum class SensitivityKind {
  direct,              ///< noise / |slope| at phi
  analytic_limit,      ///< closed-form limit at the stationary phase
  extrapolated_limit,  ///< 0/0 point resolved from symmetric offsets
  divergent,           ///< slope vanishes while noise does not
};

struct SensitivityResult {
  double phi = 0.0;
  double signal = 0.0;
  double noise = 0.0;
  double d_signal_d_phi = 0.0;
  double delta_phi = std::numeric_limits<double>::infinity();
  SensitivityKind kind = SensitivityKind::divergent;
  std::string diagnostic;
};

struct SensitivityOptions {
  double step = numerics::kDefaultStep;
  /// Use the closed-form parity limit where it applies instead of
  /// extrapolating.
  bool analytic_limit = true;
  /// Largest offset of the stationary-point extrapolation.
  double offset = 1e-2;
};

SensitivityResult phase_sensitivity(const Detector& detector, const Interferometer& ifm,
                                    double phi, const SensitivityOptions& options = {});

/// Scheme on port b with the optimal quadrature for homodyne.
SensitivityResult phase_sensitivity(Scheme scheme, const Interferometer& ifm, double phi,
                                    const SensitivityOptions& options = {});

/// Best sensitivity over phi in [lo, hi]: grid scan plus Brent refinement.
SensitivityResult optimize_sensitivity(const Detector& detector, const Interferometer& ifm,
                                       double lo, double hi, int samples = 400,
                                       const SensitivityOptions& options = {});

/// Parity sensitivity of the balanced SU(1,1) interferometer at phi -> 0:
/// 1 / sqrt({N_a [sinh 2r cos 2theta_a + cosh 2r] + N_s + 1} N_OPA (N_OPA + 2))
/// with sinh^2 r = N_s. Throws DomainError when n_opa <= 0.
double parity_sensitivity_phi0(double n_alpha, double n_s, double n_opa,
                               double theta_alpha);

std::string to_string(Scheme scheme);
std::string to_string(SensitivityKind kind);

}  // namespace su11
