#pragma once

// Parameter sweeps over (g, r, |alpha_0|, phi) with deterministic CSV output.

#include "su11/metrology.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace su11 {

struct Range {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;

  /// Evenly spaced points; a single point sits at `start`.
  std::vector<double> values() const;
};

enum class SweepScheme { parity, homodyne, intensity, qcrb };
enum class Coupling { independent, optimal_alpha };

struct SweepConfig {
  InterferometerKind interferometer = InterferometerKind::su11;
  SweepScheme scheme = SweepScheme::parity;
  Range g{1.0, 1.0, 1};
  Range r{0.0, 0.0, 1};
  Range alpha_mag{0.0, 0.0, 1};
  Range phi{0.0, 0.0, 1};
  Coupling coupling = Coupling::independent;
  std::string output;
  /// 0 picks the hardware concurrency.
  int threads = 0;
};

/// Flat `key = value` text; `#` starts a comment. Ranges are
/// `start, stop, count` or a single value. Throws ConfigError with the
/// 1-based line number.
SweepConfig parse_config(std::istream& in);
SweepConfig load_config(const std::string& path);

/// Applies one `key=value` override (command-line; errors carry line 0).
void apply_override(SweepConfig& config, const std::string& assignment);

/// Checks counts >= 1 and start <= stop.
void validate(const SweepConfig& config);

/// Canonical `key = value` rendering, parseable by parse_config.
std::string to_text(const SweepConfig& config);

struct SweepRow {
  double g = 0.0;
  double r = 0.0;
  double alpha_mag = 0.0;
  double phi = 0.0;
  std::optional<double> n_total;
  std::optional<double> snl;
  std::optional<double> hl;
  std::optional<double> qcrb;
  std::optional<double> delta_phi;
  std::string error;
};

/// One row per grid point in lexicographic (g, r, alpha_mag, phi) order.
/// Numerical failures land in the row's `error`; the sweep never aborts.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

SweepRow evaluate_point(const SweepConfig& config, double g, double r, double alpha_mag,
                        double phi);

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Writes the CSV to `path` and run metadata to `path + ".meta.txt"`.
void write_sweep_files(const SweepConfig& config, const std::vector<SweepRow>& rows,
                       const std::string& path);

/// 17 significant digits, '.' separator, `inf` for infinities.
std::string format_number(double value);

enum class FigurePreset { fig2a, fig2b, fig2c };

SweepConfig preset(FigurePreset which);
std::optional<FigurePreset> parse_preset(const std::string& name);

}  // namespace su11
