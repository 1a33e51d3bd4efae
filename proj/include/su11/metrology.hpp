#pragma once

// Quantum Fisher information of Gaussian phase families, Cramer-Rao bounds,
// photon-number benchmarks and the catalog of closed-form bounds.

#include "su11/detection.hpp"
#include "su11/gaussian.hpp"
#include "su11/transforms.hpp"

#include <functional>
#include <string>
#include <vector>

namespace su11 {

struct QfiOptions {
  double step = numerics::kDefaultStep;
  /// Largest condition number accepted for the operators that are inverted.
  double condition_limit = 1e12;
};

/// F = 1/2 Tr{D [Sigma D^-1 Sigma^T + 1/4 Omega D^-1 Omega^T]^-1}
///     + dd^T Sigma^-1 dd,  D = d Sigma / d phi, dd = d dbar / d phi,
/// with derivatives by central differences. When D vanishes identically the
/// covariance term is zero. Throws SingularMatrixError if D is singular
/// (retry at another phase) and DiagnosticsError on ill-conditioning.
double qfi_gaussian(const std::function<GaussianState(double)>& family, double phi,
                    const QfiOptions& options = {});

/// QFI of the interferometer's phase family at phi, taken on the state right
/// after the phase shifter. Retried at nearby phases if the phase derivative
/// of the covariance is singular.
double qfi(const Interferometer& ifm, double phi = 0.7, const QfiOptions& options = {});

/// 1 / sqrt(F); DomainError for F <= 0.
double qcrb(double fisher);

/// Closed-form QCRB of the balanced SU(1,1) interferometer with coherent x
/// squeezed-vacuum input, in photon numbers.
double qcrb_su11_closed(double n_alpha, double n_s, double n_opa);
/// The same bound written with hyperbolic functions of r.
double qcrb_su11_hyperbolic(double n_alpha, double r, double n_opa);

/// 2 sinh^2 g.
double n_opa(double g);
/// N_OPA (N_OPA + 2).
double kappa(double n_opa);
/// (N_OPA + 1)(N_a + N_s) + N_OPA.
double n_total(double n_alpha, double n_s, double n_opa);

struct Limits {
  double hl = 0.0;
  double snl = 0.0;
};

/// HL = 1/N, SNL = 1/sqrt N; DomainError for N <= 0.
Limits hl_snl(double n_total);

/// tanh(2g) e^r / 2.
double optimal_alpha(double g, double r);

/// Mean photon number between the two mixing elements, from the Gaussian
/// moments.
double internal_photon_number(const Interferometer& ifm);

enum class InterferometerKind { su11, mzi };
enum class InputKind { vacuum, one_coherent, two_coherent, coherent_squeezed };
enum class Column { parity, homodyne, intensity, qcrb };

enum class CellKind {
  exact,       ///< closed form holds at every parameter point
  asymptotic,  ///< closed form is a limit; checked in its regime
  nek,         ///< no closed form known
  always_bad,  ///< signal carries no phase information
};

struct CatalogParams {
  double g = 1.0;
  double alpha_mag = 1.0;
  double r = 0.5;
};

struct BoundCell {
  Column column = Column::qcrb;
  CellKind kind = CellKind::exact;
  /// Parameters the cell is evaluated at (the asymptotic regime for
  /// asymptotic cells, the requested parameters otherwise).
  CatalogParams params;
  /// Closed-form value at `params`; NaN for nek, +inf for always_bad.
  double closed = 0.0;
  std::string formula;
};

/// Closed forms for one row of the bound tables. SU(1,1) rows carry
/// parity, homodyne, intensity and QCRB cells; MZI rows parity and QCRB.
/// Throws DomainError for combinations outside the tables.
std::vector<BoundCell> bound_catalog(InterferometerKind ifm, InputKind input,
                                     const CatalogParams& params = {});

/// Interferometer (at its stationary phase) realizing a table cell.
Interferometer catalog_configuration(InterferometerKind ifm, InputKind input, Column column,
                                     const CatalogParams& params);

/// Numeric counterpart of a cell: QFI for QCRB cells, Gaussian detection
/// statistics otherwise. +inf when the signal has no phase dependence.
double catalog_numeric(InterferometerKind ifm, InputKind input, Column column,
                       const CatalogParams& params);

/// Literal tabulated QCRB expression for the coherent x squeezed-vacuum SU(1,1)
/// row. It disagrees with qcrb_su11_closed and with the numeric QFI.
double qcrb_coherent_squeezed_literal(double n_alpha, double n_s, double n_opa);

std::string to_string(InterferometerKind kind);
std::string to_string(InputKind kind);
std::string to_string(Column column);
std::string to_string(CellKind kind);

}  // namespace su11
