#include "su11/detection.hpp"

#include "su11/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>

namespace su11 {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Variance below which a reading counts as noiseless.
constexpr double kNoiselessVariance = 1e-12;
// Slopes below this fraction of the signal scale count as zero.
constexpr double kFlatSlope = 1e-9;
constexpr double kStationarySlope = 1e-6;

Mode single_mode(Port port, const char* what) {
  switch (port) {
    case Port::a:
      return Mode::a;
    case Port::b:
      return Mode::b;
    case Port::both:
      break;
  }
  throw DomainError(std::string(what) + " needs a single output port");
}

GaussianState state_at(const Interferometer& ifm, double phi) {
  return output_state(with_phase(ifm, phi));
}

// Fixes the homodyne quadrature to the one that maximizes
// (d mean)^2 / variance at phi: direction V^-1 d mu.
Detector resolve_quadrature(const Detector& detector, const Interferometer& ifm, double phi,
                            double step) {
  if (detector.scheme != Scheme::homodyne || detector.quadrature_angle) return detector;
  const Mode mode = single_mode(detector.port, "homodyne detection");
  const Vec2 slope =
      (marginal(state_at(ifm, phi + step), mode).mean -
       marginal(state_at(ifm, phi - step), mode).mean) /
      (2.0 * step);
  Detector resolved = detector;
  resolved.quadrature_angle = 0.0;
  if (slope.squaredNorm() == 0.0) return resolved;
  const Mat2 cov = marginal(state_at(ifm, phi), mode).cov;
  const Vec2 dir = cov.ldlt().solve(slope);
  resolved.quadrature_angle = std::atan2(dir(1), dir(0));
  return resolved;
}

SensitivityResult evaluate_direct(const Detector& requested, const Interferometer& ifm,
                                  double phi, double step) {
  const Detector detector = resolve_quadrature(requested, ifm, phi, step);
  const Reading reading = measure(detector, state_at(ifm, phi));
  SensitivityResult out;
  out.phi = phi;
  out.signal = reading.mean;
  out.noise = std::sqrt(std::max(reading.variance, 0.0));
  out.d_signal_d_phi = numerics::central_difference(
      [&](double p) { return measure(detector, state_at(ifm, p)).mean; }, phi, step);
  if (detector.scheme == Scheme::homodyne) {
    std::ostringstream os;
    os.precision(17);
    os << "quadrature angle " << *detector.quadrature_angle;
    out.diagnostic = os.str();
  }

  const double scale = std::max({1.0, std::abs(out.signal), out.noise});
  const double slope = std::abs(out.d_signal_d_phi);
  if (reading.variance < kNoiselessVariance && slope < kStationarySlope * scale) {
    out.kind = SensitivityKind::extrapolated_limit;  // marker for 0/0, resolved by caller
    out.delta_phi = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (slope <= kFlatSlope * scale) {
    out.kind = SensitivityKind::divergent;
    out.delta_phi = kInf;
    out.diagnostic = "zero derivative: signal is stationary while noise is not";
    return out;
  }
  out.kind = SensitivityKind::direct;
  out.delta_phi = out.noise / slope;
  return out;
}

bool is_zero_over_zero(const SensitivityResult& r) {
  return r.kind == SensitivityKind::extrapolated_limit && std::isnan(r.delta_phi);
}

double wrapped(double phi) { return std::remainder(phi, 2.0 * std::numbers::pi); }

std::optional<double> analytic_parity_limit(const Detector& detector,
                                            const Interferometer& ifm, double phi) {
  const auto* spec = std::get_if<SU11Spec>(&ifm);
  if (!spec || detector.scheme != Scheme::parity || detector.port != Port::b) return {};
  if (!balanced(*spec) || spec->g1 <= 0.0) return {};
  const InputState& in = spec->input;
  if (in.b_displacement != cplx{0.0, 0.0} || std::abs(wrapped(in.theta_s)) > 1e-12) return {};
  if (std::abs(wrapped(phi)) > 1e-9) return {};
  const double n_opa = 2.0 * std::sinh(spec->g1) * std::sinh(spec->g1);
  return parity_sensitivity_phi0(in.n_alpha(), in.n_squeezed(), n_opa, in.theta_alpha);
}

// Averages phi* +- delta for delta = d0, d0/2, d0/4 and extrapolates to
// delta -> 0 with Richardson steps in delta^2.
SensitivityResult extrapolate_limit(const Detector& detector, const Interferometer& ifm,
                                    double phi, const SensitivityOptions& options,
                                    SensitivityResult at_point) {
  constexpr int levels = 3;
  std::array<double, levels> values{};
  double delta = options.offset;
  for (int k = 0; k < levels; ++k, delta *= 0.5) {
    const double step = delta * 1e-3;
    const auto plus = evaluate_direct(detector, ifm, phi + delta, step);
    const auto minus = evaluate_direct(detector, ifm, phi - delta, step);
    if (plus.kind != SensitivityKind::direct || minus.kind != SensitivityKind::direct) {
      at_point.kind = SensitivityKind::divergent;
      at_point.delta_phi = kInf;
      at_point.diagnostic =
          "zero derivative: signal and noise stay flat around the stationary phase";
      return at_point;
    }
    values[k] = 0.5 * (plus.delta_phi + minus.delta_phi);
  }
  // In-place Neville table for a polynomial in delta^2.
  for (int j = 1; j < levels; ++j) {
    const double factor = std::pow(4.0, j) - 1.0;
    for (int k = levels - 1; k >= j; --k) {
      values[k] += (values[k] - values[k - 1]) / factor;
    }
  }
  at_point.kind = SensitivityKind::extrapolated_limit;
  at_point.delta_phi = values[levels - 1];
  at_point.diagnostic = "0/0 at stationary phase; limit extrapolated from symmetric offsets";
  return at_point;
}

}  // namespace

double parity_expectation(const GaussianState& state, Mode mode) {
  const ModeMoments m = marginal(state, mode);
  const double det = m.cov.determinant();
  if (!(det >= 1e-14)) {
    throw SingularMatrixError("parity_expectation: singular marginal covariance");
  }
  const double exponent = m.mean.dot(m.cov.inverse() * m.mean);
  return std::exp(-0.5 * exponent) / std::sqrt(det);
}

Reading homodyne_signal(const GaussianState& state, Mode mode, double quadrature_angle) {
  const ModeMoments m = marginal(state, mode);
  const Vec2 u(std::cos(quadrature_angle), std::sin(quadrature_angle));
  return {u.dot(m.mean), u.dot(m.cov * u)};
}

Reading intensity_signal(const GaussianState& state, Mode mode) {
  const ModeMoments m = marginal(state, mode);
  const double mean = (m.cov.trace() + m.mean.squaredNorm() - 2.0) / 4.0;
  const double var = ((m.cov * m.cov).trace() - 2.0) / 8.0 + m.mean.dot(m.cov * m.mean) / 4.0;
  return {mean, var};
}

Reading total_intensity_signal(const GaussianState& state) {
  const Reading a = intensity_signal(state, Mode::a);
  const Reading b = intensity_signal(state, Mode::b);
  const Vec4& mu = state.mean();
  const Mat4& cov = state.cov();
  double cross = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 2; j < 4; ++j) {
      cross += 2.0 * cov(i, j) * cov(i, j) + 4.0 * mu(i) * mu(j) * cov(i, j);
    }
  }
  return {a.mean + b.mean, a.variance + b.variance + 2.0 * cross / 16.0};
}

Reading measure(const Detector& detector, const GaussianState& state) {
  switch (detector.scheme) {
    case Scheme::parity: {
      const double p = parity_expectation(state, single_mode(detector.port, "parity"));
      return {p, (1.0 - p) * (1.0 + p)};
    }
    case Scheme::homodyne:
      return homodyne_signal(state, single_mode(detector.port, "homodyne detection"),
                             detector.quadrature_angle.value_or(0.0));
    case Scheme::intensity:
      if (detector.port == Port::both) return total_intensity_signal(state);
      return intensity_signal(state, single_mode(detector.port, "intensity"));
  }
  throw DomainError("measure: unknown scheme");
}

double ParityClosedFormTerms::value() const { return std::exp(-t2 / t3) / std::sqrt(t1); }

ParityClosedFormTerms parity_terms_su11(double alpha_mag, double theta, double r, double g,
                                      double phi) {
  using std::cos, std::cosh, std::exp, std::pow, std::sin, std::sinh;
  const double e2r = exp(2.0 * r);
  const double s2g = sinh(2.0 * g);
  const double sin_half4 = pow(sin(0.5 * phi), 4);
  ParityClosedFormTerms t;
  t.t1 = exp(-2.0 * r) * (e2r + 1.0) * (e2r + 1.0) *
             (8.0 * pow(s2g, 4) * (cos(2.0 * phi) - cos(phi)) + 4.0 * cosh(4.0 * g) +
              3.0 * cosh(8.0 * g) - 7.0) +
         64.0;
  const double bracket = cos(theta) * sin(phi) -
                         2.0 * cosh(2.0 * g) * sin(theta) * pow(sin(0.5 * phi), 2);
  t.t2 = 4.0 * alpha_mag * alpha_mag * s2g * s2g *
         (8.0 * cosh(4.0 * g) * cos(2.0 * theta) * sin_half4 -
          8.0 * cosh(2.0 * g) * sin(2.0 * theta) * sin(phi) * (cos(phi) - 1.0) +
          8.0 * exp(4.0 * r) * bracket * bracket + 32.0 * e2r * s2g * s2g * sin_half4 +
          8.0 * cosh(4.0 * g) * sin_half4 - 8.0 * pow(cos(theta), 2) * cos(phi) +
          (3.0 * cos(2.0 * theta) - 1.0) * cos(2.0 * phi) + cos(2.0 * theta) + 5.0);
  t.t3 = (e2r + 1.0) * (e2r + 1.0) *
             (8.0 * cosh(8.0 * g) * sin_half4 + 8.0 * cosh(4.0 * g) * pow(sin(phi), 2) +
              4.0 * cos(phi) + 3.0 * cos(2.0 * phi) - 7.0) +
         64.0 * e2r;
  return t;
}

double parity_closed_form_su11(double alpha_mag, double theta_alpha, double r, double g,
                               double phi) {
  return parity_terms_su11(alpha_mag, theta_alpha, r, g, phi).value();
}

SensitivityResult phase_sensitivity(const Detector& detector, const Interferometer& ifm,
                                    double phi, const SensitivityOptions& options) {
  if (!(options.step > 0.0) || !(options.offset > 0.0)) {
    throw DomainError("phase_sensitivity: step and offset must be positive");
  }
  SensitivityResult out = evaluate_direct(detector, ifm, phi, options.step);
  if (!is_zero_over_zero(out)) return out;
  if (options.analytic_limit) {
    if (auto limit = analytic_parity_limit(detector, ifm, phi)) {
      out.kind = SensitivityKind::analytic_limit;
      out.delta_phi = *limit;
      out.diagnostic = "0/0 at phi = 0; closed-form parity limit";
      return out;
    }
  }
  return extrapolate_limit(detector, ifm, phi, options, out);
}

SensitivityResult phase_sensitivity(Scheme scheme, const Interferometer& ifm, double phi,
                                    const SensitivityOptions& options) {
  return phase_sensitivity(Detector{scheme, Port::b, std::nullopt}, ifm, phi, options);
}

SensitivityResult optimize_sensitivity(const Detector& detector, const Interferometer& ifm,
                                       double lo, double hi, int samples,
                                       const SensitivityOptions& options) {
  if (!(hi > lo) || samples < 3) {
    throw DomainError("optimize_sensitivity: need hi > lo and at least 3 samples");
  }
  const double width = (hi - lo) / (samples - 1);
  std::vector<SensitivityResult> scan;
  scan.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    scan.push_back(phase_sensitivity(detector, ifm, lo + i * width, options));
  }
  const auto best_it = std::min_element(
      scan.begin(), scan.end(),
      [](const auto& x, const auto& y) { return x.delta_phi < y.delta_phi; });
  SensitivityResult best = *best_it;
  const auto i = static_cast<int>(best_it - scan.begin());
  if (best.kind != SensitivityKind::direct || i == 0 || i == samples - 1) return best;

  const auto objective = [&](double p) {
    const auto r = evaluate_direct(detector, ifm, p, options.step);
    return r.kind == SensitivityKind::direct ? r.delta_phi : kInf;
  };
  std::uintmax_t iterations = 200;
  const auto [p_min, v_min] = boost::math::tools::brent_find_minima(
      objective, lo + (i - 1) * width, lo + (i + 1) * width,
      std::numeric_limits<double>::digits / 2, iterations);
  if (v_min < best.delta_phi) best = evaluate_direct(detector, ifm, p_min, options.step);
  return best;
}

double parity_sensitivity_phi0(double n_alpha, double n_s, double n_opa, double theta_alpha) {
  if (!(n_opa > 0.0)) throw DomainError("parity_sensitivity_phi0: N_OPA must be positive");
  if (n_alpha < 0.0 || n_s < 0.0) {
    throw DomainError("parity_sensitivity_phi0: photon numbers must be non-negative");
  }
  const double r = std::asinh(std::sqrt(n_s));
  const double k = n_opa * (n_opa + 2.0);
  const double coherent =
      n_alpha * (std::sinh(2.0 * r) * std::cos(2.0 * theta_alpha) + std::cosh(2.0 * r));
  return 1.0 / std::sqrt((coherent + n_s + 1.0) * k);
}

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::parity:
      return "parity";
    case Scheme::homodyne:
      return "homodyne";
    case Scheme::intensity:
      return "intensity";
  }
  return "?";
}

std::string to_string(SensitivityKind kind) {
  switch (kind) {
    case SensitivityKind::direct:
      return "direct";
    case SensitivityKind::analytic_limit:
      return "analytic_limit";
    case SensitivityKind::extrapolated_limit:
      return "extrapolated_limit";
    case SensitivityKind::divergent:
      return "divergent";
  }
  return "?";
}

}  // namespace su11
