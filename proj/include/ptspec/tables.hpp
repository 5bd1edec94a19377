#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ptspec/models.hpp"
#include "ptspec/spectrum.hpp"
#include "ptspec/sweep.hpp"

namespace ptspec::tables {

enum class RowKind {
  Critical,  ///< V2 = V_star: E_star and the accompanying CCPEs
  Split,     ///< V2 = V_star + 0.1: the spectrum after the singularity splits
  Plain,     ///< any other V2
};

/// One printed eigenvalue: a real level (bound state) or the Im E > 0 member
/// of a CCPE.
struct PrintedLevel {
  Complex energy;
  bool real = false;
  bool marked = false;  ///< printed with '#': approximately equal to E_star
};

struct Row {
  int number = 0;
  double v1 = 0.0;
  double v2_printed = 0.0;
  double v2 = 0.0;  ///< strength actually used (differs from the print only for a corrected typo)
  RowKind kind = RowKind::Plain;
  std::optional<double> e_star;
  bool e_star_marked = false;
  std::vector<PrintedLevel> levels;
  std::string note;
};

struct Table {
  std::string id;  ///< "I" .. "IV"
  ModelKind model = ModelKind::Scarf2;
  double a = 1.0;
  std::vector<Row> rows;

  PotentialModel model_for(const Row& row) const;
};

const std::vector<Table>& all_tables();
/// Accepts "I".."IV" or "1".."4". Throws ConfigError otherwise.
const Table& table(std::string_view id);

/// Absolute tolerance for a printed value: 5e-3, or 1e-3 relative when the
/// value exceeds 10 in magnitude.
double cell_tolerance(double printed);

struct Cell {
  std::string field;  ///< "V_star", "E_star", "Re E", "Im E", "max Re E"
  double expected = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;
  bool passed = false;

  double delta() const { return computed - expected; }
};

struct RowReport {
  int number = 0;
  RowKind kind = RowKind::Plain;
  /// V2 at which the printed levels are compared: the refined V_star for
  /// critical rows, the printed strength otherwise.
  double v2 = 0.0;
  std::optional<CriticalPoint> critical;  ///< refined from the printed V_star and E_star
  std::vector<EigenRecord> spectrum;      ///< at v2
  int winding = 0;                        ///< at v2
  int located = 0;
  std::vector<Cell> cells;
  std::vector<std::string> notes;  ///< extra computed levels, corrections, failures
  bool passed = false;
};

struct TableReport {
  std::string id;
  std::vector<RowReport> rows;
  int cells = 0;
  int failed_cells = 0;
  bool passed = false;
};

/// Runs every row and compares the computed eigenvalues with the printed ones.
/// Printed levels are matched to computed ones of the same type by nearest
/// distance; each component is a separate cell.
TableReport reproduce_table(const Table& table, const sweep::SweepOptions& opts = {});
TableReport reproduce_table(std::string_view id, const sweep::SweepOptions& opts = {});

std::string_view to_string(RowKind kind);

}  // namespace ptspec::tables
