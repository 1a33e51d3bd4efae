#include "su11/verify.hpp"

#include "su11/detection.hpp"
#include "su11/errors.hpp"
#include "su11/fock.hpp"
#include "su11/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace su11 {
namespace {

struct Grid {
  std::vector<double> g, r, alpha, theta_alpha, phi;
  /// Compare against a doubled cutoff at every point (otherwise only at the
  /// largest g, r and alpha).
  bool full_convergence = false;
};

Grid grid_for(VerifyGrid which) {
  if (which == VerifyGrid::extended) {
    return {{0.1, 0.3, 0.5, 0.7, 0.8}, {0.0, 0.25, 0.5}, {0.0, 0.5, 1.0}, {0.0, 0.9},
            {0.0, 0.1, 0.5, 1.0, 2.0}, true};
  }
  return {{0.2, 0.5, 0.8}, {0.0, 0.3, 0.5}, {0.0, 0.5, 1.0}, {0.0}, {0.0, 0.1, 0.5, 1.0},
          false};
}

}  // namespace

std::optional<VerifyGrid> parse_grid(const std::string& name) {
  if (name == "default") return VerifyGrid::standard;
  if (name == "extended") return VerifyGrid::extended;
  return std::nullopt;
}

int VerifyReport::failures() const {
  return static_cast<int>(
      std::count_if(checks.begin(), checks.end(), [](const VerifyCheck& c) { return !c.pass; }));
}

VerifyReport run_verify(VerifyGrid which) {
  const Grid grid = grid_for(which);
  VerifyReport report;
  for (double g : grid.g) {
    for (double r : grid.r) {
      for (double alpha : grid.alpha) {
        for (double theta : grid.theta_alpha) {
          if (alpha == 0.0 && theta != grid.theta_alpha.front()) continue;
          for (double phi : grid.phi) {
            ++report.points;
            const InputState input{alpha, theta, r, 0.0, {0.0, 0.0}};
            const SU11Spec spec = SU11Spec::balanced(g, phi, input);
            const auto check = [&](std::string name, double value, double reference,
                                   double tolerance) {
              const double dev = std::abs(value - reference);
              report.checks.push_back(
                  {std::move(name), g, r, alpha, theta, phi, value, reference, dev, tolerance,
                   dev <= tolerance});
            };

            const GaussianState gauss = output_state(spec);
            const double gauss_parity = parity_expectation(gauss, Mode::b);
            const double gauss_nb = intensity_signal(gauss, Mode::b).mean;
            try {
              const FockState fock = simulate_su11(spec, kDefaultCutoff, true);
              report.max_leakage = std::max(report.max_leakage, fock.leakage());
              const double fock_parity = fock_expectation(fock, FockObservable::parity_b);
              const double fock_nb = fock_expectation(fock, FockObservable::n_b);
              check("parity_b", gauss_parity, fock_parity, 1e-6);
              check("n_b", gauss_nb, fock_nb, 1e-8);
              check("leakage", fock.leakage(), 0.0, kLeakTolerance);
              if (phi == 0.0) {
                check("parity_at_zero_phase", fock_parity, 1.0, 1e-10);
                check("gaussian_parity_at_zero_phase", gauss_parity, 1.0, 1e-10);
              }
              const bool corner = g == grid.g.back() && r == grid.r.back() &&
                                  alpha == grid.alpha.back();
              if (grid.full_convergence || corner) {
                const FockState wide = simulate_su11(spec, 2 * fock.cutoff(), false);
                check("cutoff_doubling_parity", fock_expectation(wide, FockObservable::parity_b),
                      fock_parity, 1e-8);
                check("cutoff_doubling_n_b", fock_expectation(wide, FockObservable::n_b),
                      fock_nb, 1e-8);
              }
            } catch (const CutoffTooSmallError& e) {
              check("leakage", e.leakage(), 0.0, kLeakTolerance);
            }
            if (std::abs(parity_closed_form_su11(alpha, theta, r, g, phi) - gauss_parity) >
                1e-10) {
              ++report.closed_form_mismatches;
            }
          }
        }
      }
    }
  }
  return report;
}

void print_verify(std::ostream& out, const VerifyReport& report, bool failures_only) {
  out << "check,g,r,alpha_mag,theta_alpha,phi,value,reference,deviation,tolerance,status\n";
  for (const auto& c : report.checks) {
    if (failures_only && c.pass) continue;
    out << c.name << ',' << format_number(c.g) << ',' << format_number(c.r) << ','
        << format_number(c.alpha_mag) << ',' << format_number(c.theta_alpha) << ','
        << format_number(c.phi) << ',' << format_number(c.value) << ','
        << format_number(c.reference) << ',' << format_number(c.deviation) << ','
        << format_number(c.tolerance) << ',' << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "# points: " << report.points << '\n'
      << "# checks: " << report.checks.size() << '\n'
      << "# max oracle leakage: " << format_number(report.max_leakage) << '\n'
      << "# closed-form parity mismatches (> 1e-10): " << report.closed_form_mismatches << '\n'
      << "# failures: " << report.failures() << '\n';
}

}  // namespace su11
