#include "su11/tables.hpp"

#include "su11/errors.hpp"
#include "su11/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace su11 {
namespace {

double relative_deviation(double closed, double numeric) {
  if (std::isinf(closed) && std::isinf(numeric)) return 0.0;
  return std::abs(numeric - closed) / std::abs(closed);
}

TableLine evaluate_cell(int table, InterferometerKind ifm, InputKind input,
                        const BoundCell& cell) {
  TableLine line;
  line.table = table;
  line.interferometer = ifm;
  line.input = input;
  line.column = cell.column;
  line.kind = cell.kind;
  line.params = cell.params;
  line.closed = cell.closed;
  try {
    line.numeric = catalog_numeric(ifm, input, cell.column, cell.params);
  } catch (const Error& e) {
    line.numeric = std::numeric_limits<double>::quiet_NaN();
    line.detail = e.what();
  }
  if (cell.kind == CellKind::nek) {
    line.status = CellStatus::skipped;
    line.deviation = std::numeric_limits<double>::quiet_NaN();
    if (line.detail.empty()) line.detail = "no closed form; numeric optimum shown";
    return line;
  }
  line.deviation = relative_deviation(line.closed, line.numeric);
  line.status = line.deviation <= kTableTolerance ? CellStatus::pass : CellStatus::fail;
  if (cell.kind == CellKind::asymptotic && line.detail.empty()) {
    line.detail = "limit form checked at g = " + format_number(cell.params.g);
  }
  return line;
}

std::string sanitized(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int TableReport::failures() const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(), [](const TableLine& l) {
    return l.status == CellStatus::fail;
  }));
}

TableReport run_tables(const CatalogParams& params) {
  TableReport report;
  constexpr InputKind su11_rows[] = {InputKind::vacuum, InputKind::one_coherent,
                                     InputKind::two_coherent, InputKind::coherent_squeezed};
  constexpr InputKind mzi_rows[] = {InputKind::one_coherent, InputKind::two_coherent,
                                    InputKind::coherent_squeezed};

  for (InputKind input : su11_rows) {
    for (const BoundCell& cell : bound_catalog(InterferometerKind::su11, input, params)) {
      if (cell.column == Column::parity || cell.column == Column::qcrb) {
        report.lines.push_back(evaluate_cell(1, InterferometerKind::su11, input, cell));
      }
    }
    if (input == InputKind::coherent_squeezed) {
      // The literal tabulated QCRB expression for this row, for reference.
      const double na = params.alpha_mag * params.alpha_mag;
      const double ns = std::sinh(params.r) * std::sinh(params.r);
      TableLine note;
      note.table = 1;
      note.input = input;
      note.column = Column::qcrb;
      note.params = params;
      note.closed = qcrb_coherent_squeezed_literal(na, ns, n_opa(params.g));
      note.numeric = qcrb(qfi(catalog_configuration(InterferometerKind::su11, input,
                                                    Column::qcrb, params)));
      note.deviation = relative_deviation(note.closed, note.numeric);
      note.status = CellStatus::note;
      note.detail = "literal tabulated expression; inconsistent; closed form used instead";
      report.lines.push_back(note);
    }
  }
  for (InputKind input : mzi_rows) {
    for (const BoundCell& cell : bound_catalog(InterferometerKind::mzi, input, params)) {
      report.lines.push_back(evaluate_cell(2, InterferometerKind::mzi, input, cell));
    }
  }
  for (InputKind input : su11_rows) {
    for (const BoundCell& cell : bound_catalog(InterferometerKind::su11, input, params)) {
      if (cell.column != Column::qcrb) {
        report.lines.push_back(evaluate_cell(3, InterferometerKind::su11, input, cell));
      }
    }
  }
  return report;
}

void print_report(std::ostream& out, const TableReport& report) {
  out << "table,interferometer,input,column,kind,g,alpha_mag,r,closed,numeric,"
         "rel_deviation,status,detail\n";
  for (const auto& l : report.lines) {
    out << l.table << ',' << to_string(l.interferometer) << ',' << to_string(l.input) << ','
        << to_string(l.column) << ',' << (l.status == CellStatus::note ? "note" : to_string(l.kind))
        << ',' << format_number(l.params.g) << ',' << format_number(l.params.alpha_mag) << ','
        << format_number(l.params.r) << ',' << format_number(l.closed) << ','
        << format_number(l.numeric) << ',' << format_number(l.deviation) << ','
        << to_string(l.status) << ',' << sanitized(l.detail) << '\n';
  }
  out << "# failures: " << report.failures() << '\n';
}

std::string to_string(CellStatus status) {
  switch (status) {
    case CellStatus::pass:
      return "PASS";
    case CellStatus::fail:
      return "FAIL";
    case CellStatus::skipped:
      return "SKIP";
    case CellStatus::note:
      return "NOTE";
  }
  return "?";
}

}  // namespace su11
