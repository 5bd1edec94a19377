#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptspec/diagnostics.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/rootfind.hpp"
#include "ptspec/sweep.hpp"
#include "ptspec/tables.hpp"

namespace ptspec::io {

using Json = nlohmann::ordered_json;

/// Shortest decimal string that reads back to the same double.
std::string shortest(double v);
/// Six significant digits, for human-facing tables.
std::string sig6(double v);

Json to_json(Complex z);
Json to_json(const PotentialModel& model);
Json to_json(const grid::Window& w);
Json to_json(const EigenRecord& rec);
Json to_json(const std::vector<EigenRecord>& recs);
Json to_json(const rootfind::RootResult& r, const std::vector<EigenRecord>& recs);
Json to_json(const rootfind::ContourSet& c);
Json to_json(const CriticalPoint& c);
Json to_json(const sweep::SweepResult& r);
Json to_json(const sweep::SplitResult& r);
Json to_json(const diagnostics::ScatterReport& r);
Json to_json(const diagnostics::InvisibilityPoint& p);
Json to_json(const oracle::OraclePoint& p);
Json to_json(const tables::TableReport& r);

/// Serialises with two-space indentation and a trailing newline. Floats use
/// the shortest round-trip form.
std::string dump(const Json& j);

/// curve_type, segment_id, k1, k2
void write_contours_csv(std::ostream& os, const rootfind::ContourSet& c);
/// k1, k2, ReE, ImE, kind, residual: one line per zero (both mates of a CCPE).
void write_roots_csv(std::ostream& os, const std::vector<EigenRecord>& recs);
/// V2, trajectory_id, ReE, ImE
void write_sweep_csv(std::ostream& os, const sweep::SweepResult& r);
/// V_star, E_star, m
void write_criticals_csv(std::ostream& os, const std::vector<CriticalPoint>& c);
/// E, T, RL, RR, absdetS, flags
void write_dets_csv(std::ostream& os, const std::vector<diagnostics::ScatterReport>& r);
/// E, direction, T, RL, RR
void write_invisibility_csv(std::ostream& os, const std::vector<diagnostics::InvisibilityPoint>& p);
/// model, V1, V2, a, k, error, tolerance, step_change, domain_change
void write_oracle_csv(std::ostream& os, const std::vector<oracle::OraclePoint>& p);
/// row, field, expected, computed, delta, tolerance, passed
void write_table_csv(std::ostream& os, const tables::TableReport& r);

}  // namespace ptspec::io
