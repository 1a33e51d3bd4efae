#pragma once

// Cell-by-cell comparison of the bound tables against numeric computation.

#include "su11/metrology.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace su11 {

enum class CellStatus { pass, fail, skipped, note };

struct TableLine {
  int table = 0;  ///< 1: SU(1,1) QCRB, 2: MZI QCRB, 3: SU(1,1) detection
  InterferometerKind interferometer = InterferometerKind::su11;
  InputKind input = InputKind::vacuum;
  Column column = Column::qcrb;
  CellKind kind = CellKind::exact;
  CatalogParams params;
  double closed = 0.0;
  double numeric = 0.0;
  double deviation = 0.0;  ///< relative; 0 when both are +inf
  CellStatus status = CellStatus::pass;
  std::string detail;
};

struct TableReport {
  std::vector<TableLine> lines;
  int failures() const;
};

/// Relative deviation tolerance for non-NEK cells.
inline constexpr double kTableTolerance = 1e-6;

TableReport run_tables(const CatalogParams& params = {});

void print_report(std::ostream& out, const TableReport& report);

std::string to_string(CellStatus status);

}  // namespace su11
