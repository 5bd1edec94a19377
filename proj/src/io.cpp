#include "ptspec/io.hpp"

#include <charconv>
#include <cstdio>

namespace ptspec::io {

std::string shortest(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const PotentialModel& model) {
  Json j;
  j["kind"] = std::string(to_string(model.kind()));
  if (model.kind() == ModelKind::Sampled) return j;
  j["v1"] = model.v1();
  j["v2"] = model.v2();
  if (model.kind() != ModelKind::Scarf2) j["a"] = model.a();
  return j;
}

Json to_json(const grid::Window& w) {
  return Json{{"k1_min", w.k1min}, {"k1_max", w.k1max}, {"k2_min", w.k2min}, {"k2_max", w.k2max}};
}

Json to_json(const EigenRecord& rec) {
  Json j;
  j["kind"] = std::string(to_string(rec.kind));
  j["E"] = to_json(rec.energy);
  j["k"] = to_json(rec.zero.k);
  if (rec.partner) j["partner_k"] = to_json(rec.partner->k);
  j["residual"] = rec.zero.residual;
  return j;
}

Json to_json(const std::vector<EigenRecord>& recs) {
  Json a = Json::array();
  for (const auto& r : recs) a.push_back(to_json(r));
  return a;
}

Json to_json(const rootfind::RootResult& r, const std::vector<EigenRecord>& recs) {
  Json j;
  j["winding"] = r.winding;
  j["located"] = r.located;
  j["complete"] = r.complete;
  j["nonconverged_seeds"] = r.nonconverged;
  j["counts"] = Json{{"real", count_kind(recs, EigenKind::RealBound)},
                     {"ccpe", count_kind(recs, EigenKind::CCPE)},
                     {"ss", count_kind(recs, EigenKind::SS)}};
  j["eigenvalues"] = to_json(recs);
  j["warnings"] = r.warnings;
  return j;
}

namespace {

Json polylines(const std::vector<rootfind::Polyline>& lines) {
  Json a = Json::array();
  for (const auto& l : lines) {
    Json pts = Json::array();
    for (const Complex& z : l.points) pts.push_back(to_json(z));
    a.push_back(std::move(pts));
  }
  return a;
}

}  // namespace

Json to_json(const rootfind::ContourSet& c) {
  Json j;
  j["window"] = to_json(c.spec.window);
  j["n1"] = c.spec.n1;
  j["n2"] = c.spec.n2;
  j["re_zero"] = polylines(c.re_zero);
  j["im_zero"] = polylines(c.im_zero);
  Json cells = Json::array();
  for (const auto& [i, k] : c.crossing_cells) cells.push_back(Json::array({i, k}));
  j["crossing_cells"] = std::move(cells);
  j["skipped_cells"] = c.skipped_cells.size();
  return j;
}

Json to_json(const CriticalPoint& c) { return Json{{"V_star", c.v_star}, {"E_star", c.e_star}, {"m", c.m}}; }

Json to_json(const sweep::SweepResult& r) {
  Json j;
  if (r.base) j["model"] = to_json(*r.base);
  if (r.options.window) j["window"] = to_json(*r.options.window);
  Json samples = Json::array();
  for (const auto& s : r.samples) samples.push_back(Json{{"V2", s.v2}, {"complete", s.complete}, {"eigenvalues", to_json(s.spectrum)}});
  j["samples"] = std::move(samples);
  Json trajs = Json::array();
  for (const auto& t : r.trajectories) {
    Json pts = Json::array();
    for (const auto& p : t.points) pts.push_back(Json{{"V2", p.v2}, {"E", to_json(p.energy)}, {"kind", std::string(to_string(p.kind))}});
    trajs.push_back(Json{{"id", t.id}, {"points", std::move(pts)}});
  }
  j["trajectories"] = std::move(trajs);
  Json eps = Json::array();
  for (const auto& e : r.exceptional_points) eps.push_back(Json{{"V_EP", e.v_ep}, {"E", to_json(e.e_coalesce)}});
  j["exceptional_points"] = std::move(eps);
  Json crit = Json::array();
  for (const auto& c : r.criticals) crit.push_back(to_json(c));
  j["criticals"] = std::move(crit);
  j["warnings"] = r.warnings;
  return j;
}

Json to_json(const sweep::SplitResult& r) {
  Json j;
  j["V_star"] = r.v_star;
  j["E_star"] = r.e_star;
  j["epsilon"] = r.epsilon;
  j["before"] = to_json(r.before);
  j["at"] = to_json(r.at);
  j["after"] = to_json(r.after);
  j["new_ccpe"] = r.new_ccpe ? to_json(*r.new_ccpe) : Json(nullptr);
  j["passed"] = r.passed;
  j["failures"] = r.failures;
  return j;
}

Json to_json(const diagnostics::ScatterReport& r) {
  Json j;
  j["E"] = r.energy;
  if (!r.ok) {
    j["error"] = r.error;
    return j;
  }
  j["t"] = to_json(r.amplitudes.t);
  j["r_left"] = to_json(r.amplitudes.r_left);
  j["r_right"] = to_json(r.amplitudes.r_right);
  j["T"] = r.amplitudes.transmission();
  j["R_L"] = r.amplitudes.reflection_left();
  j["R_R"] = r.amplitudes.reflection_right();
  j["det_S"] = to_json(r.det_s);
  j["abs_det_S"] = std::abs(r.det_s);
  j["flags"] = Json{{"near_ss", r.flags.near_ss},
                    {"invisible_left", r.flags.invisible_left},
                    {"invisible_right", r.flags.invisible_right},
                    {"invisible_both", r.flags.invisible_both}};
  return j;
}

Json to_json(const diagnostics::InvisibilityPoint& p) {
  return Json{{"E", p.energy},
              {"direction", std::string(diagnostics::to_string(p.direction))},
              {"T", p.transmission},
              {"R_L", p.r_left},
              {"R_R", p.r_right}};
}

Json to_json(const oracle::OraclePoint& p) {
  Json j;
  j["model"] = std::string(to_string(p.kind));
  j["v1"] = p.v1;
  j["v2"] = p.v2;
  j["a"] = p.a;
  j["k"] = p.k;
  j["error"] = p.error;
  j["tolerance"] = p.tolerance;
  j["step_change"] = p.step_change;
  j["domain_change"] = p.domain_change;
  j["passed"] = p.amplitudes_ok() && p.hygiene_ok();
  return j;
}

Json to_json(const tables::TableReport& r) {
  Json j;
  j["table"] = r.id;
  j["cells"] = r.cells;
  j["failed_cells"] = r.failed_cells;
  j["passed"] = r.passed;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json jr;
    jr["row"] = row.number;
    jr["kind"] = std::string(tables::to_string(row.kind));
    jr["V2"] = row.v2;
    if (row.critical) jr["critical"] = to_json(*row.critical);
    jr["winding"] = row.winding;
    jr["located"] = row.located;
    Json cells = Json::array();
    for (const auto& c : row.cells) {
      cells.push_back(Json{{"field", c.field},
                           {"expected", c.expected},
                           {"computed", c.computed},
                           {"delta", c.delta()},
                           {"tolerance", c.tolerance},
                           {"passed", c.passed}});
    }
    jr["cells"] = std::move(cells);
    jr["eigenvalues"] = to_json(row.spectrum);
    jr["notes"] = row.notes;
    jr["passed"] = row.passed;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_contours_csv(std::ostream& os, const rootfind::ContourSet& c) {
  os << "curve_type,segment_id,k1,k2\n";
  const auto emit = [&](const char* type, const std::vector<rootfind::Polyline>& lines) {
    for (std::size_t s = 0; s < lines.size(); ++s) {
      for (const Complex& z : lines[s].points) {
        os << type << ',' << s << ',' << shortest(z.real()) << ',' << shortest(z.imag()) << '\n';
      }
    }
  };
  emit("reF", c.re_zero);
  emit("imF", c.im_zero);
}

void write_roots_csv(std::ostream& os, const std::vector<EigenRecord>& recs) {
  os << "k1,k2,ReE,ImE,kind,residual\n";
  const auto line = [&](const KZero& z, EigenKind kind) {
    const Complex e = z.k * z.k;
    os << shortest(z.k.real()) << ',' << shortest(z.k.imag()) << ',' << shortest(e.real()) << ','
       << shortest(kind == EigenKind::CCPE ? e.imag() : 0.0) << ',' << to_string(kind) << ',' << shortest(z.residual)
       << '\n';
  };
  for (const auto& r : recs) {
    line(r.zero, r.kind);
    if (r.partner) line(*r.partner, r.kind);
  }
}

void write_sweep_csv(std::ostream& os, const sweep::SweepResult& r) {
  os << "V2,trajectory_id,ReE,ImE\n";
  for (const auto& t : r.trajectories) {
    for (const auto& p : t.points) {
      os << shortest(p.v2) << ',' << t.id << ',' << shortest(p.energy.real()) << ',' << shortest(p.energy.imag())
         << '\n';
    }
  }
}

void write_criticals_csv(std::ostream& os, const std::vector<CriticalPoint>& c) {
  os << "V_star,E_star,m\n";
  for (const auto& x : c) os << shortest(x.v_star) << ',' << shortest(x.e_star) << ',' << x.m << '\n';
}

void write_dets_csv(std::ostream& os, const std::vector<diagnostics::ScatterReport>& reports) {
  os << "E,T,RL,RR,absdetS,flags\n";
  for (const auto& r : reports) {
    os << shortest(r.energy) << ',';
    if (!r.ok) {
      os << ",,,,error\n";
      continue;
    }
    std::string flags;
    const auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags += ';';
      flags += name;
    };
    add(r.flags.near_ss, "near_ss");
    add(r.flags.invisible_left, "invisible_left");
    add(r.flags.invisible_right, "invisible_right");
    add(r.flags.invisible_both, "invisible_both");
    os << shortest(r.amplitudes.transmission()) << ',' << shortest(r.amplitudes.reflection_left()) << ','
       << shortest(r.amplitudes.reflection_right()) << ',' << shortest(std::abs(r.det_s)) << ',' << flags << '\n';
  }
}

void write_invisibility_csv(std::ostream& os, const std::vector<diagnostics::InvisibilityPoint>& points) {
  os << "E,direction,T,RL,RR\n";
  for (const auto& p : points) {
    os << shortest(p.energy) << ',' << diagnostics::to_string(p.direction) << ',' << shortest(p.transmission) << ','
       << shortest(p.r_left) << ',' << shortest(p.r_right) << '\n';
  }
}

void write_oracle_csv(std::ostream& os, const std::vector<oracle::OraclePoint>& points) {
  os << "model,V1,V2,a,k,error,tolerance,step_change,domain_change\n";
  for (const auto& p : points) {
    os << to_string(p.kind) << ',' << shortest(p.v1) << ',' << shortest(p.v2) << ',' << shortest(p.a) << ','
       << shortest(p.k) << ',' << shortest(p.error) << ',' << shortest(p.tolerance) << ',' << shortest(p.step_change)
       << ',' << shortest(p.domain_change) << '\n';
  }
}

void write_table_csv(std::ostream& os, const tables::TableReport& r) {
  os << "row,field,expected,computed,delta,tolerance,passed\n";
  for (const auto& row : r.rows) {
    for (const auto& c : row.cells) {
      os << row.number << ',' << c.field << ',' << shortest(c.expected) << ',' << shortest(c.computed) << ','
         << shortest(c.delta()) << ',' << shortest(c.tolerance) << ',' << (c.passed ? "true" : "false") << '\n';
    }
  }
}

}  // namespace ptspec::io
