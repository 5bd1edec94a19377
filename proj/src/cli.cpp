#include "ptspec/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "ptspec/diagnostics.hpp"
#include "ptspec/numerov.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/parallel.hpp"
#include "ptspec/rootfind.hpp"
#include "ptspec/sweep.hpp"
#include "ptspec/tables.hpp"

namespace ptspec::cli {

namespace {

using io::Json;

const char* const kCommands[] = {"spectrum", "contours", "sweep",        "ss-find",        "split",
                                 "dets",     "invisibility", "oracle-check", "reproduce-table"};

// ------------------------------------------------------------ field table

template <typename T>
T read_value(const Json& j, const std::string& name) {
  if constexpr (std::is_same_v<T, bool>) {
    if (!j.is_boolean()) throw ConfigError("config: '" + name + "' must be a boolean");
    return j.get<bool>();
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!j.is_string()) throw ConfigError("config: '" + name + "' must be a string");
    return j.get<std::string>();
  } else if constexpr (std::is_same_v<T, double>) {
    if (!j.is_number()) throw ConfigError("config: '" + name + "' must be a number");
    return j.get<double>();
  } else if constexpr (std::is_same_v<T, std::optional<double>>) {
    if (j.is_null()) return std::nullopt;
    if (!j.is_number()) throw ConfigError("config: '" + name + "' must be a number or null");
    return j.get<double>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!j.is_number_unsigned()) throw ConfigError("config: '" + name + "' must be a non-negative integer");
    return j.get<std::uint64_t>();
  } else {
    if (!j.is_number_integer()) throw ConfigError("config: '" + name + "' must be an integer");
    return j.get<T>();
  }
}

struct Field {
  std::string name;
  std::function<void(RunConfig&, const Json&)> read;
  std::function<Json(const RunConfig&)> write;
  std::function<void(RunConfig&, const RunConfig&)> copy;
  std::function<CLI::Option*(CLI::App&, RunConfig&, const std::string&, const std::string&)> bind;
};

template <typename T>
Field field(const char* name, T RunConfig::*member, const char* help) {
  Field f;
  f.name = name;
  f.read = [member, n = f.name](RunConfig& c, const Json& j) { c.*member = read_value<T>(j, n); };
  f.write = [member](const RunConfig& c) -> Json {
    if constexpr (std::is_same_v<T, std::optional<double>>) {
      return (c.*member) ? Json(*(c.*member)) : Json(nullptr);
    } else {
      return Json(c.*member);
    }
  };
  f.copy = [member](RunConfig& dst, const RunConfig& src) { dst.*member = src.*member; };
  std::string help_text = help;
  f.bind = [member, help_text](CLI::App& app, RunConfig& c, const std::string& flag, const std::string&) {
    if constexpr (std::is_same_v<T, bool>) {
      return app.add_flag(flag, c.*member, help_text);
    } else {
      return app.add_option(flag, c.*member, help_text);
    }
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f{
      field("command", &RunConfig::command, "command to run"),
      field("model", &RunConfig::model, "scarf2, delta, sqwell or exp"),
      field("v1", &RunConfig::v1, "real-part strength V1 (eV)"),
      field("v2", &RunConfig::v2, "imaginary-part strength V2 (eV)"),
      field("a", &RunConfig::a, "length scale a (Angstrom); unused by scarf2"),
      field("potential_csv", &RunConfig::potential_csv, "sampled potential: CSV with columns x, reV, imV"),
      field("k1_min", &RunConfig::k1_min, "window: smallest Re k"),
      field("k1_max", &RunConfig::k1_max, "window: largest Re k"),
      field("k2_min", &RunConfig::k2_min, "window: smallest Im k"),
      field("k2_max", &RunConfig::k2_max, "window: largest Im k"),
      field("n1", &RunConfig::n1, "grid nodes along Re k (0: automatic)"),
      field("n2", &RunConfig::n2, "grid nodes along Im k (0: automatic)"),
      field("grid_spacing", &RunConfig::grid_spacing, "automatic grid spacing in k"),
      field("axis_tol", &RunConfig::axis_tol, "on-axis tolerance for classification"),
      field("dedup_tol", &RunConfig::dedup_tol, "distance below which zeros are merged"),
      field("residual_tol", &RunConfig::residual_tol, "accepted |kF| relative to the boundary median"),
      field("v2_min", &RunConfig::v2_min, "sweep: first V2"),
      field("v2_max", &RunConfig::v2_max, "sweep: last V2"),
      field("v2_step", &RunConfig::v2_step, "sweep: V2 step (0: automatic)"),
      field("m_max", &RunConfig::m_max, "ss-find: largest critical index"),
      field("v_star", &RunConfig::v_star, "split: critical strength near which to split"),
      field("epsilon", &RunConfig::epsilon, "split: offset in V2"),
      field("strict_linking", &RunConfig::strict_linking, "sweep: fail instead of warn on ambiguous links"),
      field("e_min", &RunConfig::e_min, "energy scan: lowest E"),
      field("e_max", &RunConfig::e_max, "energy scan: highest E"),
      field("samples", &RunConfig::samples, "energy scan: number of energies"),
      field("tol", &RunConfig::tol, "invisibility: reflectance tolerance"),
      field("table", &RunConfig::table, "reproduce-table: I, II, III, IV or all"),
      field("points", &RunConfig::points, "oracle-check: random points"),
      field("seed", &RunConfig::seed, "oracle-check: random seed"),
      field("output", &RunConfig::output, "result file (stdout when empty)"),
      field("format", &RunConfig::format, "json or csv"),
      field("jobs", &RunConfig::jobs, "worker threads (0: all cores; PTSPEC_JOBS overrides)"),
  };
  return f;
}

std::string flag_of(const std::string& name) {
  std::string s = "--" + name;
  for (char& c : s) {
    if (c == '_') c = '-';
  }
  return s;
}

// ------------------------------------------------------------ helpers

void require(bool ok, const std::string& field, const std::string& why) {
  if (!ok) throw ConfigError("config: '" + field + "' " + why);
}

bool finite(double v) { return std::isfinite(v); }

bool model_is_sampled(const RunConfig& c) { return !c.potential_csv.empty() || c.model == "sampled"; }

rootfind::RootOptions root_options(const RunConfig& c) {
  rootfind::RootOptions o;
  o.axis_tol = c.axis_tol;
  o.dedup_tol = c.dedup_tol;
  o.residual_tol = c.residual_tol;
  o.grid_spacing = c.grid_spacing;
  o.n1 = c.n1;
  o.n2 = c.n2;
  o.jobs = c.jobs;
  return o;
}

grid::Window window_for(const RunConfig& c, const PotentialModel& model) {
  grid::Window w = rootfind::default_window(model);
  if (c.k1_min) w.k1min = *c.k1_min;
  if (c.k1_max) w.k1max = *c.k1_max;
  if (c.k2_min) w.k2min = *c.k2_min;
  if (c.k2_max) w.k2max = *c.k2_max;
  require(w.k1max > w.k1min, "k1_max", "must exceed k1_min");
  require(w.k2max > w.k2min, "k2_max", "must exceed k2_min");
  return w;
}

bool has_window(const RunConfig& c) { return c.k1_min || c.k1_max || c.k2_min || c.k2_max; }

sweep::SweepOptions sweep_options(const RunConfig& c, const PotentialModel& base, double v2_hi) {
  sweep::SweepOptions o;
  o.roots = root_options(c);
  o.strict_linking = c.strict_linking;
  o.jobs = c.jobs;
  if (has_window(c)) o.window = window_for(c, base.with_v2(v2_hi));
  return o;
}

void need_analytic(const RunConfig& c) {
  if (model_is_sampled(c)) throw ConfigError("config: command '" + c.command + "' needs an analytic model, not a sampled potential");
}

Json header(const RunConfig& c, const PotentialModel& model) {
  Json j;
  j["command"] = c.command;
  j["model"] = io::to_json(model);
  if (!c.potential_csv.empty()) j["model"]["source"] = c.potential_csv;
  return j;
}

void merge(Json& dst, const Json& src, const std::string& skip = {}) {
  for (const auto& [k, v] : src.items()) {
    if (k != skip) dst[k] = v;
  }
}

struct Output {
  std::string text;
  int code = 0;
};

// ------------------------------------------------------------ commands

Output cmd_spectrum(const RunConfig& c, std::ostream& log) {
  const PotentialModel model = make_model(c);
  const grid::Window w = window_for(c, model);
  rootfind::RootResult r = rootfind::find_zeros(model, w, root_options(c));
  const std::vector<EigenRecord> recs = rootfind::classify(r.zeros, c.axis_tol, &r.warnings);
  for (const auto& msg : r.warnings) log << "warning: " << msg << '\n';
  log << "spectrum: " << recs.size() << " eigenvalues (" << count_kind(recs, EigenKind::RealBound) << " real, "
      << count_kind(recs, EigenKind::CCPE) << " CCPE, " << count_kind(recs, EigenKind::SS) << " SS); winding "
      << r.winding << ", located " << r.located << '\n';
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_roots_csv(os, recs);
    return {os.str()};
  }
  Json j = header(c, model);
  j["window"] = io::to_json(w);
  merge(j, io::to_json(r, recs));
  return {io::dump(j)};
}

Output cmd_contours(const RunConfig& c, std::ostream& log) {
  const PotentialModel model = make_model(c);
  const grid::Window w = window_for(c, model);
  auto [n1, n2] = rootfind::default_resolution(w, c.grid_spacing);
  if (c.n1 > 0) n1 = c.n1;
  if (c.n2 > 0) n2 = c.n2;
  const rootfind::ContourSet cs = rootfind::contour_grid(model, w, n1, n2, c.jobs);
  log << "contours: " << cs.re_zero.size() << " Re F = 0 and " << cs.im_zero.size() << " Im F = 0 polylines, "
      << cs.crossing_cells.size() << " crossing cells on a " << n1 << " x " << n2 << " grid\n";
  if (!cs.skipped_cells.empty()) log << "warning: " << cs.skipped_cells.size() << " cells skipped (evaluation failed)\n";
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_contours_csv(os, cs);
    return {os.str()};
  }
  Json j = header(c, model);
  merge(j, io::to_json(cs));
  return {io::dump(j)};
}

Output cmd_sweep(const RunConfig& c, std::ostream& log) {
  need_analytic(c);
  const PotentialModel base = make_model(c);
  const sweep::SweepResult r = sweep::run_sweep(base, c.v2_min, c.v2_max, c.v2_step, sweep_options(c, base, c.v2_max));
  for (const auto& msg : r.warnings) log << "warning: " << msg << '\n';
  log << "sweep: " << r.samples.size() << " samples, " << r.trajectories.size() << " trajectories, "
      << r.exceptional_points.size() << " exceptional points, " << r.criticals.size() << " criticals\n";
  for (const auto& e : r.exceptional_points) log << "  EP  V2 = " << io::sig6(e.v_ep) << "  E = " << io::sig6(e.e_coalesce.real()) << '\n';
  for (const auto& x : r.criticals) {
    log << "  SS  V* = " << io::sig6(x.v_star) << "  E* = " << io::sig6(x.e_star) << "  m = " << x.m << '\n';
  }
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_sweep_csv(os, r);
    return {os.str()};
  }
  Json j = header(c, base);
  merge(j, io::to_json(r), "model");
  return {io::dump(j)};
}

Output cmd_ss_find(const RunConfig& c, std::ostream& log) {
  need_analytic(c);
  const PotentialModel base = make_model(c);
  const std::vector<CriticalPoint> cps =
      sweep::find_critical_ss(base, c.v2_min, c.v2_max, c.m_max, c.v2_step, sweep_options(c, base, c.v2_max));
  log << "ss-find: " << cps.size() << " critical strengths in [" << io::sig6(c.v2_min) << ", " << io::sig6(c.v2_max)
      << "]\n";
  for (const auto& x : cps) {
    log << "  V* = " << io::sig6(x.v_star) << "  E* = " << io::sig6(x.e_star) << "  m = " << x.m << '\n';
  }
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_criticals_csv(os, cps);
    return {os.str()};
  }
  Json j = header(c, base);
  Json a = Json::array();
  for (const auto& x : cps) a.push_back(io::to_json(x));
  j["criticals"] = std::move(a);
  return {io::dump(j)};
}

Output cmd_split(const RunConfig& c, std::ostream& log) {
  need_analytic(c);
  const PotentialModel base = make_model(c);
  const sweep::SplitResult r =
      sweep::split_ss(base, c.v_star, c.epsilon, sweep_options(c, base, c.v_star + c.epsilon));
  log << "split: V* = " << io::sig6(r.v_star) << "  E* = " << io::sig6(r.e_star) << "  "
      << (r.passed ? "passed" : "FAILED") << '\n';
  for (const auto& f : r.failures) log << "  " << f << '\n';
  Output out;
  out.code = r.passed ? 0 : 2;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "stage,V2,ReE,ImE,kind\n";
    const auto stage = [&](const char* name, double v2, const std::vector<EigenRecord>& recs) {
      for (const auto& e : recs) {
        os << name << ',' << io::shortest(v2) << ',' << io::shortest(e.energy.real()) << ','
           << io::shortest(e.energy.imag()) << ',' << to_string(e.kind) << '\n';
      }
    };
    stage("before", r.v_star - r.epsilon, r.before);
    stage("at", r.v_star, r.at);
    stage("after", r.v_star + r.epsilon, r.after);
    out.text = os.str();
    return out;
  }
  Json j = header(c, base);
  merge(j, io::to_json(r));
  out.text = io::dump(j);
  return out;
}

Output cmd_dets(const RunConfig& c, std::ostream& log) {
  const PotentialModel model = make_model(c);
  diagnostics::ScanOptions so;
  so.invisibility_tol = c.tol;
  so.jobs = c.jobs;
  const auto reports = diagnostics::det_s_scan(model, c.e_min, c.e_max, c.samples, so);
  double worst = 0.0;
  int near = 0, failed = 0;
  for (const auto& r : reports) {
    if (!r.ok) {
      ++failed;
      continue;
    }
    if (r.flags.near_ss) {
      ++near;
      continue;
    }
    worst = std::max(worst, std::abs(std::abs(r.det_s) - 1.0));
  }
  log << "dets: " << reports.size() << " energies, max ||det S| - 1| = " << io::sig6(worst) << " away from "
      << near << " near-SS samples; " << failed << " evaluation failures\n";
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_dets_csv(os, reports);
    return {os.str()};
  }
  Json j = header(c, model);
  j["max_unimodularity_error"] = worst;
  Json a = Json::array();
  for (const auto& r : reports) a.push_back(io::to_json(r));
  j["reports"] = std::move(a);
  return {io::dump(j)};
}

Output cmd_invisibility(const RunConfig& c, std::ostream& log) {
  const PotentialModel model = make_model(c);
  const auto pts = diagnostics::invisibility_scan(model, c.e_min, c.e_max, c.samples, c.tol, c.jobs);
  log << "invisibility: " << pts.size() << " energies\n";
  for (const auto& p : pts) log << "  E = " << io::sig6(p.energy) << "  " << diagnostics::to_string(p.direction) << '\n';
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_invisibility_csv(os, pts);
    return {os.str()};
  }
  Json j = header(c, model);
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(io::to_json(p));
  j["invisibility"] = std::move(a);
  return {io::dump(j)};
}

Output cmd_oracle(const RunConfig& c, std::ostream& log) {
  need_analytic(c);
  const ModelKind kind = parse_model_kind(c.model);
  oracle::OracleOptions o;
  o.points = c.points;
  o.seed = c.seed;
  const auto pts = oracle::random_check(kind, o, c.jobs);
  double worst = 0.0, step = 0.0, domain = 0.0;
  bool ok = true;
  for (const auto& p : pts) {
    worst = std::max(worst, p.error);
    step = std::max(step, p.step_change);
    domain = std::max(domain, p.domain_change);
    ok = ok && p.amplitudes_ok() && p.hygiene_ok();
  }
  log << "oracle-check " << to_string(kind) << ": " << pts.size() << " points, max relative error "
      << io::sig6(worst) << " (tolerance " << io::sig6(oracle::tolerance_for(kind)) << "), step halving "
      << io::sig6(step) << ", domain doubling " << io::sig6(domain) << "  " << (ok ? "passed" : "FAILED") << '\n';
  Output out;
  out.code = ok ? 0 : 2;
  if (c.format == "csv") {
    std::ostringstream os;
    io::write_oracle_csv(os, pts);
    out.text = os.str();
    return out;
  }
  Json j;
  j["command"] = c.command;
  j["model"] = std::string(to_string(kind));
  j["seed"] = c.seed;
  j["passed"] = ok;
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(io::to_json(p));
  j["points"] = std::move(a);
  out.text = io::dump(j);
  return out;
}

Output cmd_reproduce(const RunConfig& c, std::ostream& log) {
  std::vector<std::string> ids;
  if (c.table == "all") {
    ids = {"I", "II", "III", "IV"};
  } else {
    ids = {tables::table(c.table).id};
  }
  sweep::SweepOptions so;
  so.roots = root_options(c);
  so.jobs = c.jobs;
  Output out;
  Json all = Json::array();
  std::ostringstream csv;
  for (const auto& id : ids) {
    const tables::TableReport r = tables::reproduce_table(id, so);
    log << "Table " << r.id << ": " << r.cells - r.failed_cells << "/" << r.cells << " cells within tolerance  "
        << (r.passed ? "passed" : "FAILED") << '\n';
    for (const auto& row : r.rows) {
      for (const auto& cell : row.cells) {
        if (cell.passed) continue;
        log << "  row " << row.number << "  " << cell.field << "  printed " << io::sig6(cell.expected) << "  computed "
            << io::sig6(cell.computed) << "  delta " << io::sig6(cell.delta()) << "  tol " << io::sig6(cell.tolerance)
            << '\n';
      }
    }
    if (!r.passed) out.code = 2;
    if (c.format == "csv") {
      if (ids.size() > 1) csv << "# table " << r.id << '\n';
      io::write_table_csv(csv, r);
    }
    all.push_back(io::to_json(r));
  }
  if (c.format == "csv") {
    out.text = csv.str();
    return out;
  }
  Json j;
  j["command"] = c.command;
  j["tables"] = std::move(all);
  out.text = io::dump(j);
  return out;
}

std::string manifest_path(const std::string& output) { return output + ".manifest.json"; }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config: 'output' cannot be opened for writing: " + path);
  f << text;
  if (!f) throw ConfigError("config: 'output' could not be written: " + path);
}

}  // namespace

void validate(const RunConfig& c) {
  bool known = false;
  for (const char* cmd : kCommands) known = known || c.command == cmd;
  require(known, "command", c.command.empty() ? "is required" : "'" + c.command + "' is not a known command");
  if (c.potential_csv.empty() && c.command != "reproduce-table") {
    require(c.model != "sampled", "model", "'sampled' needs potential_csv");
    try {
      parse_model_kind(c.model);
    } catch (const ConfigError&) {
      require(false, "model", "'" + c.model + "' is not one of scarf2, delta, sqwell, exp");
    }
  }
  const std::pair<const char*, double> numbers[] = {
      {"v1", c.v1},           {"v2", c.v2},         {"a", c.a},         {"grid_spacing", c.grid_spacing},
      {"axis_tol", c.axis_tol}, {"dedup_tol", c.dedup_tol}, {"residual_tol", c.residual_tol},
      {"v2_min", c.v2_min},   {"v2_max", c.v2_max}, {"v2_step", c.v2_step}, {"v_star", c.v_star},
      {"epsilon", c.epsilon}, {"e_min", c.e_min},   {"e_max", c.e_max}, {"tol", c.tol}};
  for (const auto& [name, v] : numbers) require(finite(v), name, "must be finite");
  for (const auto& [name, v] : {std::pair{"k1_min", c.k1_min}, std::pair{"k1_max", c.k1_max},
                                std::pair{"k2_min", c.k2_min}, std::pair{"k2_max", c.k2_max}}) {
    require(!v || finite(*v), name, "must be finite");
  }
  require(c.a > 0.0, "a", "must be > 0");
  require(c.grid_spacing > 0.0, "grid_spacing", "must be > 0");
  require(c.axis_tol > 0.0, "axis_tol", "must be > 0");
  require(c.dedup_tol > 0.0, "dedup_tol", "must be > 0");
  require(c.residual_tol > 0.0, "residual_tol", "must be > 0");
  require(c.n1 == 0 || c.n1 >= 16, "n1", "must be 0 or >= 16");
  require(c.n2 == 0 || c.n2 >= 16, "n2", "must be 0 or >= 16");
  require(c.jobs >= 0, "jobs", "must be >= 0");
  require(c.format == "json" || c.format == "csv", "format", "must be json or csv");
  if (c.command == "sweep" || c.command == "ss-find") {
    require(c.v2_max >= c.v2_min, "v2_max", "must be >= v2_min");
    require(c.v2_step >= 0.0, "v2_step", "must be >= 0");
    if (c.command == "ss-find") require(c.v2_max > c.v2_min, "v2_max", "must exceed v2_min");
    require(c.m_max >= 0, "m_max", "must be >= 0");
  }
  if (c.command == "split") {
    require(c.v_star > 0.0, "v_star", "must be > 0");
    require(c.epsilon > 0.0, "epsilon", "must be > 0");
  }
  if (c.command == "dets" || c.command == "invisibility") {
    require(c.e_min > 0.0, "e_min", "must be > 0");
    require(c.e_max >= c.e_min, "e_max", "must be >= e_min");
    require(c.samples >= (c.command == "dets" ? 1 : 3), "samples", "is too small");
    require(c.tol > 0.0, "tol", "must be > 0");
  }
  if (c.command == "oracle-check") require(c.points >= 1, "points", "must be >= 1");
  if (c.command == "reproduce-table") {
    require(c.table == "all" || c.table == "I" || c.table == "II" || c.table == "III" || c.table == "IV" ||
                c.table == "1" || c.table == "2" || c.table == "3" || c.table == "4",
            "table", "must be I, II, III, IV or all");
  }
}

Json to_json(const RunConfig& c) {
  Json j;
  for (const auto& f : fields()) j[f.name] = f.write(c);
  return j;
}

RunConfig config_from_json(const Json& in) {
  if (!in.is_object()) throw ConfigError("config: expected a JSON object");
  const Json* src = &in;
  if (in.contains("config") && in.contains("tool")) src = &in.at("config");
  if (!src->is_object()) throw ConfigError("config: manifest 'config' is not an object");
  RunConfig c;
  for (const auto& [key, value] : src->items()) {
    const Field* f = nullptr;
    for (const auto& cand : fields()) {
      if (cand.name == key) f = &cand;
    }
    if (!f) throw ConfigError("config: unknown key '" + key + "'");
    f->read(c, value);
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

PotentialModel make_model(const RunConfig& c) {
  if (!c.potential_csv.empty()) {
    auto pot = std::make_shared<numerov::SampledPotential>(numerov::load_csv(c.potential_csv));
    return PotentialModel::sampled(std::move(pot));
  }
  return PotentialModel::make(parse_model_kind(c.model), c.v1, c.v2, c.a);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  validate(config);
  if (config.jobs > 0) parallel::set_default_jobs(config.jobs);
  const auto t0 = std::chrono::steady_clock::now();
  const std::string& cmd = config.command;
  Output result;
  if (cmd == "spectrum") result = cmd_spectrum(config, log);
  else if (cmd == "contours") result = cmd_contours(config, log);
  else if (cmd == "sweep") result = cmd_sweep(config, log);
  else if (cmd == "ss-find") result = cmd_ss_find(config, log);
  else if (cmd == "split") result = cmd_split(config, log);
  else if (cmd == "dets") result = cmd_dets(config, log);
  else if (cmd == "invisibility") result = cmd_invisibility(config, log);
  else if (cmd == "oracle-check") result = cmd_oracle(config, log);
  else result = cmd_reproduce(config, log);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (config.output.empty()) {
    out << result.text;
    return result.code;
  }
  write_file(config.output, result.text);
  Json m;
  m["tool"] = "ptspec";
  m["version"] = kVersion;
  m["config"] = to_json(config);
  m["result"] = config.output;
  m["exit_code"] = result.code;
  m["versions"] = Json{{"ptspec", kVersion},
                       {"compiler", __VERSION__},
                       {"openmp", _OPENMP},
                       {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                             std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                             std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                       {"cli11", CLI11_VERSION}};
  m["timings"] = Json{{"total_seconds", seconds}, {"jobs", parallel::resolve_jobs(config.jobs)}};
  write_file(manifest_path(config.output), io::dump(m));
  log << "wrote " << config.output << " and " << manifest_path(config.output) << '\n';
  return result.code;
}

int main(int argc, char** argv) {
  CLI::App app{"Discrete spectra of PT-symmetric scattering potentials: bound states, complex-conjugate pairs and "
               "spectral singularities from the zeros of 1/t(k)."};
  app.set_version_flag("--version", kVersion);
  RunConfig flags;
  std::string config_path;
  app.add_option("--config", config_path, "RunConfig JSON or run manifest; explicit flags override it");
  std::vector<std::pair<const Field*, CLI::Option*>> bound;
  for (const auto& f : fields()) {
    if (f.name == "command") {
      bound.emplace_back(&f, app.add_option("command", flags.command,
                                            "spectrum | contours | sweep | ss-find | split | dets | invisibility | "
                                            "oracle-check | reproduce-table"));
      continue;
    }
    bound.emplace_back(&f, f.bind(app, flags, flag_of(f.name), f.name));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& [f, opt] : bound) {
      if (opt->count() > 0) f->copy(config, flags);
    }
    if (const char* env = std::getenv("PTSPEC_JOBS"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 0) throw ConfigError("PTSPEC_JOBS must be a non-negative integer");
      config.jobs = static_cast<int>(v);
    }
    return run(config, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ptspec::cli
