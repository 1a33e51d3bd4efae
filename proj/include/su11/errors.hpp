#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace su11 {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A linear solve met a pivot below the singularity threshold.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a closed-form expression.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed form that assumes the balanced SU(1,1) configuration was given an
/// unbalanced one.
class UnbalancedSpecError : public Error {
 public:
  using Error::Error;
};

/// The Fock-space oracle lost more than the allowed probability mass.
class CutoffTooSmallError : public Error {
 public:
  CutoffTooSmallError(const std::string& what, int cutoff, double leakage)
      : Error(what), cutoff_(cutoff), leakage_(leakage) {}
  int cutoff() const { return cutoff_; }
  double leakage() const { return leakage_; }

 private:
  int cutoff_;
  double leakage_;
};

/// Numerical diagnostics failed (ill-conditioned operator, complex residue
/// where a real result is required, ...).
class DiagnosticsError : public Error {
 public:
  using Error::Error;
};

/// Malformed sweep configuration. `line()` is 1-based, 0 for command-line
/// overrides.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace su11
