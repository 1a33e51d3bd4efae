#include "su11/metrology.hpp"

#include "su11/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace su11 {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Asymptotic regime of the two-coherent homodyne cell: its relative
// deviation decays like e^{-2g}.
constexpr double kHomodyneRegimeGain = 8.0;

ComplexMatrix cm(const CMat4& m) { return ComplexMatrix(m); }

void require_conditioned(const ComplexMatrix& m, double limit, const char* what) {
  const double c = numerics::condition_number(m);
  if (!(c <= limit)) {
    throw DiagnosticsError(std::string("qfi_gaussian: ") + what +
                           " is ill-conditioned (condition number " + std::to_string(c) + ")");
  }
}

InputState catalog_input(InterferometerKind ifm, InputKind input, Column column,
                         const CatalogParams& p) {
  InputState in;
  switch (input) {
    case InputKind::vacuum:
      break;
    case InputKind::one_coherent:
      in.alpha_mag = p.alpha_mag;
      break;
    case InputKind::two_coherent: {
      // |i a0 / sqrt2> (x) |a0 / sqrt2>. For SU(1,1) the closed forms hold for
      // arg a0 = -pi/4; the total-intensity cell uses a real a0.
      double arg = 0.0;
      if (ifm == InterferometerKind::su11 && column != Column::intensity) {
        arg = -std::numbers::pi / 4;
      }
      const double half = p.alpha_mag / std::numbers::sqrt2;
      in.alpha_mag = half;
      in.theta_alpha = arg + std::numbers::pi / 2;
      in.b_displacement = std::polar(half, arg);
      break;
    }
    case InputKind::coherent_squeezed:
      in.alpha_mag = p.alpha_mag;
      in.r = p.r;
      // Beam-splitter phases shift the coherent light by pi/2 relative to
      // the squeezed port.
      if (ifm == InterferometerKind::mzi) in.theta_alpha = std::numbers::pi / 2;
      break;
  }
  return in;
}

}  // namespace

double qfi_gaussian(const std::function<GaussianState(double)>& family, double phi,
                    const QfiOptions& options) {
  const double h = options.step;
  if (!(h > 0.0)) throw DomainError("qfi_gaussian: step must be positive");
  const ComplexMoments mid = to_complex(family(phi));
  const ComplexMoments plus = to_complex(family(phi + h));
  const ComplexMoments minus = to_complex(family(phi - h));
  const ComplexMatrix d_sigma = cm((plus.sigma - minus.sigma) / (2.0 * h));
  const ComplexMatrix d_mean = ComplexMatrix((plus.dbar - minus.dbar) / (2.0 * h));
  const ComplexMatrix sigma = cm(mid.sigma);
  const ComplexMatrix omega = ComplexMatrix(ComplexMoments::omega().cast<cplx>());

  cplx f{0.0, 0.0};
  if (numerics::max_abs(d_sigma) > 1e-9 * std::max(1.0, numerics::max_abs(sigma))) {
    if (!(numerics::condition_number(d_sigma) <= options.condition_limit)) {
      throw SingularMatrixError("qfi_gaussian: d Sigma / d phi is singular at this phase");
    }
    const ComplexMatrix x = numerics::solve_linear(d_sigma, sigma.transpose());
    const ComplexMatrix y = numerics::solve_linear(d_sigma, omega.transpose());
    const ComplexMatrix bracket = sigma * x + 0.25 * omega * y;
    require_conditioned(bracket, options.condition_limit, "bracketed operator");
    f += 0.5 * numerics::solve_linear(bracket, d_sigma).trace();
  }
  require_conditioned(sigma, options.condition_limit, "Sigma");
  f += (d_mean.transpose() * numerics::solve_linear(sigma, d_mean))(0, 0);

  const double scale = std::max(1.0, std::abs(f.real()));
  if (std::abs(f.imag()) > 1e-6 * scale) {
    throw DiagnosticsError("qfi_gaussian: Fisher information has an imaginary part " +
                           std::to_string(f.imag()));
  }
  if (f.real() < -1e-9 * scale) {
    throw DiagnosticsError("qfi_gaussian: negative Fisher information " +
                           std::to_string(f.real()));
  }
  return std::max(f.real(), 0.0);
}

double qfi(const Interferometer& ifm, double phi, const QfiOptions& options) {
  const auto family = [&ifm](double p) { return phased_state(with_phase(ifm, p)); };
  constexpr double shifts[] = {0.0, 0.1, -0.1, 0.2};
  for (double shift : shifts) {
    try {
      return qfi_gaussian(family, phi + shift, options);
    } catch (const SingularMatrixError&) {
      if (shift == shifts[std::size(shifts) - 1]) throw;
    }
  }
  throw SingularMatrixError("qfi: unreachable");
}

double qcrb(double fisher) {
  if (!(fisher > 0.0)) throw DomainError("qcrb: Fisher information must be positive");
  return 1.0 / std::sqrt(fisher);
}

double qcrb_su11_closed(double n_alpha, double n_s, double n_opa) {
  if (!(n_opa > 0.0)) throw DomainError("qcrb_su11_closed: N_OPA must be positive");
  if (n_alpha < 0.0 || n_s < 0.0) {
    throw DomainError("qcrb_su11_closed: photon numbers must be non-negative");
  }
  const double n = n_opa;
  const double f = n * (n * (2.0 * n_s + 1.0) + 2.0) * (n_s + 1.0) +
                   2.0 * (n + 2.0) * n_alpha *
                       (n * (n_s + std::sqrt(n_s * (n_s + 1.0)) + 1.0) + 1.0);
  return 1.0 / std::sqrt(f);
}

double qcrb_su11_hyperbolic(double n_alpha, double r, double n_opa) {
  if (!(n_opa > 0.0)) throw DomainError("qcrb_su11_hyperbolic: N_OPA must be positive");
  const double c = std::cosh(r);
  const double s = std::sinh(r);
  const double n = n_opa;
  const double f = 2.0 * (n + 2.0) * (n * (c * c + c * s) + 1.0) * n_alpha +
                   n * (n * (c * c + s * s) + 2.0) * c * c;
  return 1.0 / std::sqrt(f);
}

double n_opa(double g) { return 2.0 * std::sinh(g) * std::sinh(g); }

double kappa(double n) { return n * (n + 2.0); }

double n_total(double n_alpha, double n_s, double n) {
  return (n + 1.0) * (n_alpha + n_s) + n;
}

Limits hl_snl(double n) {
  if (!(n > 0.0)) throw DomainError("hl_snl: total photon number must be positive");
  return {1.0 / n, 1.0 / std::sqrt(n)};
}

double optimal_alpha(double g, double r) {
  return std::tanh(2.0 * g) * std::exp(r) / 2.0;
}

double internal_photon_number(const Interferometer& ifm) {
  return total_intensity_signal(internal_state(ifm)).mean;
}

double qcrb_coherent_squeezed_literal(double n_alpha, double n_s, double n) {
  const double k = kappa(n);
  const double f =
      k * (2.0 * n_alpha * (std::sqrt((n_s + 1.0) * n_s) + n_s + 1.0) +
           (2.0 * n_s + 1.0) * (n_s + 1.0)) +
      n_alpha + 2.0 * n_s * (n_s + 1.0);
  return 1.0 / std::sqrt(f);
}

std::vector<BoundCell> bound_catalog(InterferometerKind ifm, InputKind input,
                                     const CatalogParams& params) {
  const double na = params.alpha_mag * params.alpha_mag;
  const double ns = std::sinh(params.r) * std::sinh(params.r);
  const double e2r = std::exp(2.0 * params.r);
  const double n = n_opa(params.g);
  const double k = kappa(n);
  const auto cell = [&](Column column, CellKind kind, double value, std::string formula) {
    return BoundCell{column, kind, params, value, std::move(formula)};
  };
  const auto nek = [&](Column column) { return cell(column, CellKind::nek, kNan, "NEK"); };

  if (ifm == InterferometerKind::mzi) {
    switch (input) {
      case InputKind::vacuum:
        break;
      case InputKind::one_coherent:
        return {cell(Column::parity, CellKind::exact, 1.0 / std::sqrt(na), "1/sqrt(Na)"),
                cell(Column::qcrb, CellKind::exact, 1.0 / std::sqrt(na), "1/sqrt(Na)")};
      case InputKind::two_coherent:
        return {cell(Column::parity, CellKind::always_bad, kInf, "always bad"),
                cell(Column::qcrb, CellKind::exact, 1.0 / std::sqrt(na), "1/sqrt(Na)")};
      case InputKind::coherent_squeezed: {
        const double v = 1.0 / std::sqrt(na * e2r + ns);
        return {cell(Column::parity, CellKind::exact, v, "1/sqrt(Na e^{2r} + sinh^2 r)"),
                cell(Column::qcrb, CellKind::exact, v, "1/sqrt(Na e^{2r} + sinh^2 r)")};
      }
    }
    throw DomainError("bound_catalog: the MZI tables have no vacuum-input row");
  }

  switch (input) {
    case InputKind::vacuum:
      return {cell(Column::parity, CellKind::exact, 1.0 / std::sqrt(k), "1/K^{1/2}"),
              cell(Column::homodyne, CellKind::always_bad, kInf, "always bad"),
              cell(Column::intensity, CellKind::exact, 1.0 / std::sqrt(k), "1/K^{1/2}"),
              cell(Column::qcrb, CellKind::exact, 1.0 / std::sqrt(k), "1/K^{1/2}")};
    case InputKind::one_coherent:
      return {cell(Column::parity, CellKind::exact, 1.0 / std::sqrt(k * (na + 1.0)),
                   "1/[K(Na+1)]^{1/2}"),
              cell(Column::homodyne, CellKind::exact, 1.0 / std::sqrt(k * na),
                   "1/(K Na)^{1/2}"),
              nek(Column::intensity),
              cell(Column::qcrb, CellKind::exact,
                   1.0 / std::sqrt(2.0 * na * (k + n + 2.0) + k),
                   "1/[2Na(K+N_OPA+2)+K]^{1/2}")};
    case InputKind::two_coherent: {
      CatalogParams regime = params;
      regime.g = kHomodyneRegimeGain;
      const double k_regime = kappa(n_opa(regime.g));
      BoundCell homodyne{Column::homodyne, CellKind::asymptotic, regime,
                         1.0 / std::sqrt(2.0 * k_regime * na), "~1/(2K Na)^{1/2}"};
      return {nek(Column::parity), homodyne,
              cell(Column::intensity, CellKind::exact, 1.0 / std::sqrt(k * na),
                   "1/(K Na)^{1/2}"),
              cell(Column::qcrb, CellKind::exact,
                   1.0 / std::sqrt(2.0 * na * (k + (n + 1.0) * std::sqrt(k) + 1.0) + k),
                   "1/{2Na[K+(N_OPA+1)K^{1/2}+1]+K}^{1/2}")};
    }
    case InputKind::coherent_squeezed: {
      const double cosh_r = std::cosh(params.r);
      return {cell(Column::parity, CellKind::exact,
                   1.0 / std::sqrt(k * (na * e2r + cosh_r * cosh_r)),
                   "1/[K(Na e^{2r}+cosh^2 r)]^{1/2}"),
              cell(Column::homodyne, CellKind::exact, 1.0 / std::sqrt(k * na * e2r),
                   "1/[K Na e^{2r}]^{1/2}"),
              nek(Column::intensity),
              cell(Column::qcrb, CellKind::exact, qcrb_su11_closed(na, ns, n),
                   "QCRB closed form, coherent x squeezed vacuum")};
    }
  }
  throw DomainError("bound_catalog: unsupported combination");
}

Interferometer catalog_configuration(InterferometerKind ifm, InputKind input, Column column,
                                     const CatalogParams& params) {
  if (ifm == InterferometerKind::mzi) {
    if (input == InputKind::vacuum) {
      throw DomainError("catalog_configuration: the MZI tables have no vacuum-input row");
    }
    if (column == Column::homodyne || column == Column::intensity) {
      throw DomainError("catalog_configuration: MZI rows only list parity and QCRB");
    }
    return MziSpec{std::numbers::pi / 4, std::numbers::pi,
                   catalog_input(ifm, input, column, params)};
  }
  return SU11Spec::balanced(params.g, 0.0, catalog_input(ifm, input, column, params));
}

double catalog_numeric(InterferometerKind ifm_kind, InputKind input, Column column,
                       const CatalogParams& params) {
  const Interferometer ifm = catalog_configuration(ifm_kind, input, column, params);
  if (column == Column::qcrb) return qcrb(qfi(ifm));

  SensitivityOptions options;
  options.analytic_limit = false;
  const double phi_star = stationary_phase(ifm);
  switch (column) {
    case Column::parity: {
      const Detector detector{Scheme::parity, Port::b, std::nullopt};
      if (ifm_kind == InterferometerKind::su11 && input == InputKind::two_coherent) {
        return optimize_sensitivity(detector, ifm, 1e-3, std::numbers::pi, 400, options)
            .delta_phi;
      }
      return phase_sensitivity(detector, ifm, phi_star, options).delta_phi;
    }
    case Column::homodyne:
      return phase_sensitivity(Detector{Scheme::homodyne, Port::b, std::nullopt}, ifm,
                               phi_star, options)
          .delta_phi;
    case Column::intensity: {
      if (input == InputKind::two_coherent) {
        return phase_sensitivity(Detector{Scheme::intensity, Port::both, std::nullopt}, ifm,
                                 phi_star, options)
            .delta_phi;
      }
      const Detector detector{Scheme::intensity, Port::b, std::nullopt};
      if (input == InputKind::vacuum) {
        return phase_sensitivity(detector, ifm, phi_star, options).delta_phi;
      }
      return optimize_sensitivity(detector, ifm, 1e-3, std::numbers::pi, 400, options)
          .delta_phi;
    }
    case Column::qcrb:
      break;
  }
  throw DomainError("catalog_numeric: unsupported column");
}

std::string to_string(InterferometerKind kind) {
  return kind == InterferometerKind::su11 ? "su11" : "mzi";
}

std::string to_string(InputKind kind) {
  switch (kind) {
    case InputKind::vacuum:
      return "vacuum";
    case InputKind::one_coherent:
      return "one_coherent";
    case InputKind::two_coherent:
      return "two_coherent";
    case InputKind::coherent_squeezed:
      return "coherent_squeezed";
  }
  return "?";
}

std::string to_string(Column column) {
  switch (column) {
    case Column::parity:
      return "parity";
    case Column::homodyne:
      return "homodyne";
    case Column::intensity:
      return "intensity";
    case Column::qcrb:
      return "qcrb";
  }
  return "?";
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::exact:
      return "exact";
    case CellKind::asymptotic:
      return "asymptotic";
    case CellKind::nek:
      return "nek";
    case CellKind::always_bad:
      return "always_bad";
  }
  return "?";
}

}  // namespace su11
