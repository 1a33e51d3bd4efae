#pragma once

// Gaussian formulas against the Fock-space oracle on a grid of small
// parameters.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace su11 {

enum class VerifyGrid { standard, extended };

std::optional<VerifyGrid> parse_grid(const std::string& name);

struct VerifyCheck {
  std::string name;
  double g = 0.0;
  double r = 0.0;
  double alpha_mag = 0.0;
  double theta_alpha = 0.0;
  double phi = 0.0;
  double value = 0.0;
  double reference = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  double max_leakage = 0.0;
  /// Points where the literal closed-form parity departs from the
  /// Gaussian parity by more than 1e-10 (informational).
  int closed_form_mismatches = 0;
  int points = 0;

  int failures() const;
};

VerifyReport run_verify(VerifyGrid grid = VerifyGrid::standard);

void print_verify(std::ostream& out, const VerifyReport& report, bool failures_only = false);

}  // namespace su11
