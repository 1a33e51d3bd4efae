#pragma once

// Brute-force two-mode simulator in a truncated Fock basis, used as an
// independent check of the Gaussian formulas at small photon numbers.

#include "su11/gaussian.hpp"
#include "su11/transforms.hpp"

#include <Eigen/Dense>

namespace su11 {

/// Largest probability mass the truncation may lose.
inline constexpr double kLeakTolerance = 1e-10;
inline constexpr int kDefaultCutoff = 40;

/// Amplitudes c(n_a, n_b) for 0 <= n_a, n_b <= cutoff.
class FockState {
 public:
  /// Vacuum.
  explicit FockState(int cutoff);

  int cutoff() const { return cutoff_; }
  int dim() const { return cutoff_ + 1; }

  cplx operator()(int na, int nb) const { return amps_(index(na, nb)); }
  cplx& operator()(int na, int nb) { return amps_(index(na, nb)); }

  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }

  double norm_squared() const { return amps_.squaredNorm(); }

  /// Largest truncation loss seen while preparing and evolving this state.
  double leakage() const { return leakage_; }
  void note_leakage(double loss) { leakage_ = std::max(leakage_, loss); }

  int index(int na, int nb) const { return na * (cutoff_ + 1) + nb; }

 private:
  int cutoff_;
  Eigen::VectorXcd amps_;
  double leakage_ = 0.0;
};

/// |alpha> (x) D(beta) |0, xi = r e^{i theta_s}>. Throws CutoffTooSmallError
/// when the truncated series miss more than kLeakTolerance.
FockState prepare_fock(cplx alpha, double r, double theta_s, int cutoff,
                       cplx b_displacement = {0.0, 0.0});
FockState prepare_fock(const InputState& input, int cutoff);

/// exp(g (e^{i theta} a^dagger b^dagger - e^{-i theta} a b)).
/// Leakage is the largest population on the cutoff boundary at any sub-step.
FockState two_mode_squeezer(const FockState& state, double g, double theta);

/// Multiplies amplitudes by e^{i n phi} on the chosen mode.
FockState fock_phase(const FockState& state, double phi, Mode mode);

enum class FockObservable { parity_a, parity_b, n_a, n_b, n_b_squared, x_b, x_b_squared };

double fock_expectation(const FockState& state, FockObservable observable);

/// Quadrature mean and symmetrized covariance of the truncated state.
GaussianState fock_moments(const FockState& state);

/// |<a|b>|^2.
double fidelity(const FockState& a, const FockState& b);

/// prepare -> OPA1 -> phase on mode a -> OPA2. With `adaptive`, the cutoff
/// is doubled (up to 8x) until the leakage passes.
FockState simulate_su11(const SU11Spec& spec, int cutoff = kDefaultCutoff,
                        bool adaptive = true);

}  // namespace su11
