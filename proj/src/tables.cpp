#include "ptspec/tables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptspec/parallel.hpp"
#include "ptspec/rootfind.hpp"

namespace ptspec::tables {

namespace {

constexpr double kNone = std::numeric_limits<double>::quiet_NaN();

struct L {
  double re;
  double im = 0.0;
  bool marked = false;
};

Row row(int number, double v1, double v2, double e_star, RowKind kind, std::vector<L> levels) {
  Row r;
  r.number = number;
  r.v1 = v1;
  r.v2_printed = v2;
  r.v2 = v2;
  r.kind = kind;
  if (!std::isnan(e_star)) r.e_star = e_star;
  for (const L& l : levels) r.levels.push_back({Complex(l.re, l.im), l.im == 0.0, l.marked});
  return r;
}

constexpr RowKind C = RowKind::Critical;
constexpr RowKind S = RowKind::Split;
constexpr RowKind P = RowKind::Plain;

Table scarf_table() {
  Table t{"I", ModelKind::Scarf2, 1.0, {}};
  t.rows = {
      row(1, 0, 0.75, 0.125, C, {}),
      row(2, 0, 8.75, 2.125, C, {{1.125, 2.915}}),
      row(3, 0, 24.25, 6.125, C, {{5.125, 4.949}, {2.125, 9.892}}),
      row(4, 0, 48.75, 12.125, C, {{11.125, 6.964}, {8.125, 13.982}, {3.125, 20.892}}),
      row(5, 0, 48.85, kNone, S, {{12.150, 0.024}, {11.142, 6.996}, {8.135, 13.967}, {3.128, 20.939}}),
      row(6, 5, 5.75, 2.625, C, {}),
      row(7, 5, 13.75, 4.625, C, {{3.625, 4.301}}),
      row(8, 5, 29.75, 8.625, C, {{7.625, 5.873}, {4.625, 11.747}}),
      row(9, 5, 53.75, 14.625, C, {{13.625, 7.648}, {10.625, 15.297}, {5.625, 22.945}}),
      row(10, 5, 53.85, kNone, S, {{14.650, 0.027}, {13.642, 7.682}, {10.635, 15.337}, {5.628, 22.992}}),
      row(11, -5, 5.24, kNone, P, {{-1.367}, {-1.143}, {-0.028}, {-0.004}}),
      row(12, -5, 5.50, kNone, P, {{-1.235, 0.569}, {0.043, 0.069}}),
      row(13, -5, 19.75, 3.625, C, {{2.625, 3.002}, {-0.375, 7.615}}),
      row(14, -5, 43.75, 9.625, C, {{8.625, 6.204}, {5.625, 12.409}, {0.625, 18.614}}),
      row(15, -5, 75.75, 17.625, C, {{16.625, 8.396}, {13.625, 16.792}, {8.625, 25.189}, {1.625, 33.585}}),
      row(16, -5, 115.75, 27.625, C,
          {{2.625, 52.559}, {11.625, 42.047}, {18.625, 31.535}, {23.625, 21.023}, {26.625, 10.511}}),
      row(17, -5, 115.85, kNone, S,
          {{27.65, 0.023}, {26.645, 10.540}, {23.640, 21.057}, {18.636, 31.573}, {11.636, 42.090}, {2.627, 52.607}}),
  };
  t.rows[2].v2 = 24.75;
  t.rows[2].note = "printed V2 = 24.25 is a typo for 24.75 (the only strength consistent with E_star = 6.125)";
  return t;
}

Table delta_table() {
  Table t{"II", ModelKind::DeltaPair, 1.0, {}};
  t.rows = {
      row(1, 0, 1.110, 0.616, C, {}),
      row(2, 0, 3.332, 5.552, C, {{1.921, 0.663}}),
      row(3, 0, 5.553, 15.421, C, {{7.550, 1.920}, {2.415, 0.291}}),
      row(4, 0, 7.775, 30.226, C, {{17.222, 2.965}, {9.424, 1.455}, {2.457, 0.139}}),
      row(5, 0, 7.875, kNone, S, {{30.251, 0.137}, {17.365, 3.063}, {9.460, 1.412}, {2.457, 0.135}}),
      row(6, 5, 5.394, 2.048, C, {}),
      row(7, 5, 6.449, 8.291, C, {{2.116, 0.016}}),
      row(8, 5, 7.932, 18.958, C, {{8.606, 0.136}, {2.194, 0.0274}}),
      row(9, 5, 9.668, 34.238, C, {{19.591, 0.397}, {8.908, 0.207}, {2.261, 0.031}}),
      row(10, 5, 9.768, kNone, S, {{34.284, 0.048}, {19.627, 0.413}, {8.923, 0.208}, {2.264, 0.031}}),
      row(11, -5, 0, kNone, P, {{-6.163}, {-6.332}}),
      row(12, -5, 2, kNone, P, {{5.250, 5.000}}),
      row(13, -5, 5.571, 3.020, C, {{1.509, 13.929}}),
      row(14, -5, 6.979, 11.855, C, {{5.928, 17.447}, {2.874, 0.037}}),
      row(15, -5, 8.788, 26.118, C, {{11.273, 0.275}, {13.058, 21.971}, {2.748, 0.046}}),
      row(16, -5, 10.776, 45.560, C, {{25.085, 0.744}, {22.781, 26.939}, {10.811, 0.316}, {2.663, 0.041}}),
      row(17, -5, 10.876, kNone, S,
          {{45.510, 0.075}, {25.032, 0.764}, {23.323, 27.190}, {10.793, 0.315}, {2.659, 0.041}}),
  };
  return t;
}

Table well_table() {
  Table t{"III", ModelKind::SquareWell, 2.0, {}};
  t.rows = {
      row(1, 0, 0.519, 0.284, C, {}),
      row(2, 0, 3.330, 4.674, C, {{1.1423, 2.668}}),
      row(3, 0, 6.946, 14.172, C, {{5.950, 4.244}, {1.470, 6.352}}),
      row(4, 0, 11.028, 28.701, C, {{15.390, 5.209}, {6.642, 8.698}, {1.647, 10.464}}),
      row(5, 0, 11.128, kNone, S, {{28.728, 0.139}, {15.413, 5.330}, {6.654, 8.806}, {1.650, 10.595}}),
      row(6, 5, 0.915, 5.851, C, {}),
      row(7, 5, 3.685, 10.534, C, {{6.408, 2.844}}),
      row(8, 5, 7.259, 20.368, C, {{11.520, 4.245}, {6.593, 6.556}}),
      row(9, 5, 11.289, 34.845, C, {{21.124, 5.162}, {11.952, 8.731}, {6.714, 10.684}}),
      row(10, 5, 11.389, kNone, S, {{34.864, 0.136}, {21.139, 5.284}, {11.967, 8.839}, {6.717, 10.786}}),
      row(11, -5, 2.000, kNone, P, {{-0.083}, {-0.918}, {-3.823, 1.601}}),
      row(12, -5, 5.900, kNone, P, {{0.621, 3.899}, {-3.560, 5.466}}),
      row(13, -5, 6.000, 8.033, C, {{0.646, 3.998}, {-3.556, 5.566}}),
      row(14, -5, 10.383, 22.578, C, {{9.732, 5.195}, {1.445, 8.429}, {-3.381, 9.941}}),
      row(15, -5, 14.960, 42.137, C, {{23.995, 5.826}, {10.808, 10.308}, {1.947, 13.119}, {-3.263, 14.533}}),
      row(16, -5, 19.738, 66.662, C,
          {{43.334, 6.246}, {25.054, 11.521}, {11.551, 15.491}, {2.294, 18.010}, {-3.179, 19.329}}),
      row(17, -5, 19.838, kNone, S,
          {{66.685, 0.137}, {43.357, 6.372}, {25.072, 11.638}, {11.563, 15.598}, {2.299, 18.112}, {-3.177, 19.430}}),
  };
  return t;
}

Table exponential_table() {
  Table t{"IV", ModelKind::Exponential, 2.0, {}};
  t.rows = {
      row(1, 0, 1.330, 0.225, C, {}),
      row(2, 0, 14.245, 3.400, C, {{3.180, 5.606}}),
      row(3, 0, 40.250, 9.943, C, {{10.733, 8.610}, {7.760, 21.637}}),
      row(4, 0, 79.253, 19.816, C, {{21.581, 11.464}, {20.199, 27.026}, {13.442, 48.951}}),
      row(5, 0, 79.353, kNone, S, {{19.487, 0.023}, {31.609, 11.681}, {20.221, 27.067}, {13.455, 49.024}}),
      row(6, 5, 5.534, 4.129, C, {}),
      row(7, 5, 20.470, 6.997, C, {{7.634, 8.305}}),
      row(8, 5, 46.232, 13.467, C, {{14.028, 10.212}, {12.392, 25.488}}),
      row(9, 5, 86.139, 23.3298, C, {{25.502, 12.769, true}, {24.517, 29.547}, {18.154, 53.401}}),
      row(10, 5, 86.239, kNone, S, {{23.362, 0.026}, {25.531, 12.807}, {24.540, 29.601}, {18.168, 53.474}}),
      row(11, -5, 3, kNone, P, {{-1.2334}, {-1.554}}),
      row(12, -5, 3.2, kNone, P, {{-1.390, 0.3611}}),
      row(13, -5, 3.381, 0.035, C, {{-1.370, 0.537}}),
      row(14, -5, 32.473, 6.441, C, {{6.651, 6.796, true}, {3.113, 17.229}}),
      row(15, -5, 71.865, 16.326, C, {{17.666, 10.449}, {15.875, 24.310}, {8.720, 44.185}}),
      row(16, -5, 124.100, 29.569, C, {{31.941, 13.782, true}, {31.437, 30.841}, {26.837, 52.641}, {15.213, 82.867}}),
      row(17, -5, 124.200, kNone, S,
          {{29.601, 0.022}, {31.970, 13.814}, {31.462, 30.885}, {26.856, 52.698}, {15.224, 82.943}}),
      row(18, -60, 10, kNone, P,
          {{-43.25}, {-30.82}, {-20.25}, {-14.95}, {-9.19}, {-6.29}, {-3.16}, {-1.75}, {-0.44}, {-0.065}}),
      row(19, -60, 14, kNone, P,
          {{-39.32}, {-33.70}, {-17.64, 1.03}, {-7.73, 0.91}, {-2.43, 0.52}, {-0.20, 0.15}}),
      row(20, -60, 83, 8.551, C, {{8.51, 6.75}, {5.87, 14.99}, {-0.20, 25.17}, {-11.235, 38.20}, {-30.84, 56.27}}),
  };
  for (int n : {9, 14, 16}) t.rows[static_cast<std::size_t>(n - 1)].e_star_marked = true;
  return t;
}

std::string describe(Complex e) {
  std::ostringstream os;
  os.precision(6);
  os << e.real();
  if (e.imag() != 0.0) os << (e.imag() < 0 ? " - " : " + ") << std::abs(e.imag()) << "i";
  return os.str();
}

Cell make_cell(std::string field, double expected, double computed) {
  Cell c;
  c.field = std::move(field);
  c.expected = expected;
  c.computed = computed;
  c.tolerance = cell_tolerance(expected);
  c.passed = std::abs(computed - expected) <= c.tolerance;
  return c;
}

// Greedy nearest matching of printed levels to computed ones of the same type.
void match_levels(const Row& row, const std::vector<EigenRecord>& spectrum, RowReport& out) {
  std::vector<Complex> reals, pairs;
  for (const auto& rec : spectrum) {
    if (rec.kind == EigenKind::RealBound) reals.push_back(rec.energy);
    if (rec.kind == EigenKind::CCPE) pairs.push_back(rec.energy);
  }
  struct Cand {
    double d;
    std::size_t p, c;
  };
  for (bool real : {true, false}) {
    const std::vector<Complex>& pool = real ? reals : pairs;
    std::vector<std::size_t> printed;
    for (std::size_t i = 0; i < row.levels.size(); ++i) {
      if (row.levels[i].real == real) printed.push_back(i);
    }
    std::vector<Cand> cands;
    for (std::size_t p : printed) {
      for (std::size_t c = 0; c < pool.size(); ++c) cands.push_back({std::abs(pool[c] - row.levels[p].energy), p, c});
    }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.d < b.d; });
    std::vector<long> match(row.levels.size(), -1);
    std::vector<bool> used(pool.size(), false);
    for (const Cand& c : cands) {
      if (match[c.p] >= 0 || used[c.c]) continue;
      match[c.p] = static_cast<long>(c.c);
      used[c.c] = true;
    }
    for (std::size_t p : printed) {
      const Complex e = row.levels[p].energy;
      if (match[p] < 0) {
        Cell c = make_cell(real ? "E" : "Re E", e.real(), std::numeric_limits<double>::quiet_NaN());
        c.passed = false;
        out.cells.push_back(c);
        out.notes.push_back("no computed " + std::string(real ? "real level" : "CCPE") + " for printed " + describe(e));
        continue;
      }
      const Complex got = pool[static_cast<std::size_t>(match[p])];
      if (real) {
        out.cells.push_back(make_cell("E", e.real(), got.real()));
      } else {
        out.cells.push_back(make_cell("Re E", e.real(), got.real()));
        out.cells.push_back(make_cell("Im E", e.imag(), got.imag()));
      }
    }
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (!used[c]) out.notes.push_back("computed level not in the table: " + describe(pool[c]));
    }
  }
}

RowReport run_row(const Table& table, const Row& row, const sweep::SweepOptions& opts) {
  RowReport out;
  out.number = row.number;
  out.kind = row.kind;
  out.v2 = row.v2;
  if (!row.note.empty()) out.notes.push_back(row.note);
  const PotentialModel base = table.model_for(row);
  rootfind::RootOptions ropts = opts.roots;
  ropts.jobs = 1;

  if (row.kind == RowKind::Critical && row.e_star) {
    try {
      sweep::SweepOptions so = opts;
      so.roots = ropts;
      const CriticalPoint cp = sweep::refine_critical(base, row.v2, std::sqrt(*row.e_star), so);
      out.critical = cp;
      out.cells.push_back(make_cell("V_star", row.v2, cp.v_star));
      out.cells.push_back(make_cell("E_star", *row.e_star, cp.e_star));
    } catch (const Error& e) {
      out.notes.push_back(std::string("critical refinement failed: ") + e.what());
      Cell c = make_cell("V_star", row.v2, std::numeric_limits<double>::quiet_NaN());
      c.passed = false;
      out.cells.push_back(c);
    }
  }

  const auto solve = [&](double v2, std::vector<EigenRecord>& recs) {
    rootfind::RootResult detail = rootfind::find_zeros(base.with_v2(v2), ropts);
    recs = rootfind::classify(detail.zeros, ropts.axis_tol);
    if (!detail.complete) {
      out.notes.push_back("V2 = " + describe(Complex(v2, 0.0)) + ": winding number " + std::to_string(detail.winding) +
                          " but " + std::to_string(detail.located) + " zeros located");
    }
    return detail;
  };
  if (out.critical) out.v2 = out.critical->v_star;
  const rootfind::RootResult detail = solve(out.v2, out.spectrum);
  out.winding = detail.winding;
  out.located = detail.located;
  if (out.critical) {
    const std::size_t ss = count_kind(out.spectrum, EigenKind::SS);
    if (ss != 1) out.notes.push_back(std::to_string(ss) + " spectral singularities at the refined V_star");
  }
  match_levels(row, out.spectrum, out);
  if (out.critical) {
    // No CCPE above E_star; '#' rows get 2% slack.
    double highest = -std::numeric_limits<double>::infinity();
    for (const auto& r : out.spectrum) {
      if (r.kind == EigenKind::CCPE) highest = std::max(highest, r.energy.real());
    }
    if (std::isfinite(highest)) {
      Cell c;
      const double e_star = out.critical->e_star;
      c.field = "max Re E";
      c.expected = e_star;
      c.computed = highest;
      c.tolerance = row.e_star_marked ? 2e-2 * std::abs(e_star) : 0.0;
      c.passed = highest <= e_star + c.tolerance;
      out.cells.push_back(c);
    }
  }
  out.passed = std::all_of(out.cells.begin(), out.cells.end(), [](const Cell& c) { return c.passed; });
  return out;
}

}  // namespace

PotentialModel Table::model_for(const Row& row) const { return PotentialModel::make(model, row.v1, row.v2, a); }

const std::vector<Table>& all_tables() {
  static const std::vector<Table> tables{scarf_table(), delta_table(), well_table(), exponential_table()};
  return tables;
}

const Table& table(std::string_view id) {
  static const char* const roman[] = {"I", "II", "III", "IV"};
  static const char* const arabic[] = {"1", "2", "3", "4"};
  for (std::size_t i = 0; i < 4; ++i) {
    if (id == roman[i] || id == arabic[i]) return all_tables()[i];
  }
  throw ConfigError("table: unknown id '" + std::string(id) + "' (expected I, II, III or IV)");
}

double cell_tolerance(double printed) {
  const double mag = std::abs(printed);
  return mag > 10.0 ? 1e-3 * mag : 5e-3;
}

TableReport reproduce_table(const Table& t, const sweep::SweepOptions& opts) {
  TableReport out;
  out.id = t.id;
  out.rows.resize(t.rows.size());
  parallel::for_each_index(
      t.rows.size(), [&](std::size_t i) { out.rows[i] = run_row(t, t.rows[i], opts); }, opts.jobs);
  for (const auto& r : out.rows) {
    out.cells += static_cast<int>(r.cells.size());
    out.failed_cells += static_cast<int>(std::count_if(r.cells.begin(), r.cells.end(), [](const Cell& c) { return !c.passed; }));
  }
  out.passed = out.failed_cells == 0;
  return out;
}

TableReport reproduce_table(std::string_view id, const sweep::SweepOptions& opts) { return reproduce_table(table(id), opts); }

std::string_view to_string(RowKind kind) {
  switch (kind) {
    case RowKind::Critical:
      return "critical";
    case RowKind::Split:
      return "split";
    case RowKind::Plain:
      return "plain";
  }
  return "plain";
}

}  // namespace ptspec::tables
