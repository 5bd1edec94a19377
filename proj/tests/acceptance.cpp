#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptspec/diagnostics.hpp"
#include "ptspec/oracle.hpp"
#include "ptspec/rootfind.hpp"
#include "ptspec/specfun.hpp"
#include "ptspec/sweep.hpp"
#include "ptspec/tables.hpp"

using namespace ptspec;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Table reports are shared by criteria 1 and 4.
const std::vector<tables::TableReport>& table_reports() {
  static const std::vector<tables::TableReport> reports = [] {
    std::vector<tables::TableReport> r;
    for (const char* id : {"I", "II", "III", "IV"}) r.push_back(tables::reproduce_table(id));
    return r;
  }();
  return reports;
}

// Oracle points are shared by criteria 3 and 10.
const std::vector<oracle::OraclePoint>& oracle_points() {
  static const std::vector<oracle::OraclePoint> points = [] {
    std::vector<oracle::OraclePoint> all;
    for (ModelKind kind : {ModelKind::Scarf2, ModelKind::DeltaPair, ModelKind::SquareWell, ModelKind::Exponential}) {
      const auto p = oracle::random_check(kind);
      all.insert(all.end(), p.begin(), p.end());
    }
    return all;
  }();
  return points;
}

Verdict tables_reproduced() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& reports = table_reports();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = seconds < 300.0;
  std::ostringstream d;
  for (const auto& r : reports) {
    ok = ok && r.passed;
    d << r.id << " " << r.cells - r.failed_cells << "/" << r.cells << "  ";
    for (const auto& row : r.rows) {
      for (const auto& c : row.cells) {
        if (!c.passed) d << "[r" << row.number << " " << c.field << " " << c.expected << " vs " << c.computed << "] ";
      }
    }
  }
  d << fmt("runtime %.1f s", seconds);
  return {ok, d.str()};
}

Verdict scarf_closed_form() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int bad = 0, unbroken = 0, broken = 0;
  double worst = 0.0;
  for (int i = 0; i < 30; ++i) {
    double v1, v2;
    if (i % 2 == 0) {
      v1 = -10.0 + 9.0 * u(rng);
      v2 = (-v1 + 0.25) * (0.05 + 0.9 * u(rng));
    } else {
      v1 = -10.0 + 20.0 * u(rng);
      const double ep = std::max(0.0, -v1 + 0.25);
      v2 = ep + 0.2 + (30.0 - ep) * u(rng);
    }
    auto want = models::scarf2_closed_spectrum(v1, v2);
    rootfind::RootResult detail;
    auto got = rootfind::spectrum(PotentialModel::scarf2(v1, v2), {}, &detail);
    sort_canonical(want);
    sort_canonical(got);
    (count_kind(want, EigenKind::CCPE) == 0 ? unbroken : broken)++;
    bool match = detail.complete && want.size() == got.size();
    for (std::size_t j = 0; match && j < want.size(); ++j) {
      const double d = std::max(std::abs(want[j].energy.real() - got[j].energy.real()),
                                std::abs(want[j].energy.imag() - got[j].energy.imag()));
      worst = std::max(worst, d);
      match = want[j].kind == got[j].kind && d < 1e-3;
    }
    if (!match) ++bad;
  }
  return {bad == 0 && unbroken > 0 && broken > 0,
          std::to_string(30 - bad) + "/30 sets (" + std::to_string(unbroken) + " unbroken, " + std::to_string(broken) +
              " broken), worst component " + fmt("%.2e", worst)};
}

Verdict oracle_equivalence() {
  int bad = 0;
  std::ostringstream d;
  for (ModelKind kind : {ModelKind::Scarf2, ModelKind::DeltaPair, ModelKind::SquareWell, ModelKind::Exponential}) {
    double worst = 0.0;
    int n = 0;
    for (const auto& p : oracle_points()) {
      if (p.kind != kind) continue;
      ++n;
      worst = std::max(worst, p.error);
      if (!p.amplitudes_ok()) ++bad;
    }
    d << to_string(kind) << " " << n << " pts max " << fmt("%.2e", worst) << "  ";
  }
  return {bad == 0 && oracle_points().size() == 80, d.str()};
}

Verdict completeness() {
  int rows = 0, bad = 0;
  std::ostringstream d;
  for (const auto& r : table_reports()) {
    for (const auto& row : r.rows) {
      ++rows;
      if (row.winding != row.located) {
        ++bad;
        d << "[" << r.id << " r" << row.number << " " << row.winding << " vs " << row.located << "] ";
      }
    }
  }
  d << rows - bad << "/" << rows << " configurations exact";
  return {bad == 0, d.str()};
}

Verdict conjectures() {
  struct Family {
    ModelKind kind;
    double a;
    double v2_max;
  };
  const Family families[] = {{ModelKind::Scarf2, 1.0, 30.0}, {ModelKind::DeltaPair, 1.0, 10.0},
                             {ModelKind::SquareWell, 2.0, 20.0}};
  int va = 0, vb = 0, vc = 0, vd = 0, points = 0, criticals = 0;
  std::ostringstream d;
  for (const auto& f : families) {
    for (double v1 : {-5.0, 0.0, 5.0}) {
      const PotentialModel base = PotentialModel::make(f.kind, v1, 0.0, f.a);
      const auto sw = sweep::run_sweep(base, 0.0, f.v2_max);
      std::vector<double> grid;
      for (int i = 1; i <= 40; ++i) grid.push_back(f.v2_max * i / 40.0);
      for (const auto& c : sw.criticals) grid.push_back(c.v_star);
      for (double v2 : grid) {
        const auto recs = rootfind::spectrum(base.with_v2(v2));
        ++points;
        const auto ss = count_kind(recs, EigenKind::SS);
        if (ss > 1) ++va;
        if (ss > 0 && count_kind(recs, EigenKind::RealBound) > 0) ++vb;
      }
      if (!sw.criticals.empty() && !sw.exceptional_points.empty()) {
        double min_star = 1e300, max_ep = -1e300;
        for (const auto& c : sw.criticals) min_star = std::min(min_star, c.v_star);
        for (const auto& e : sw.exceptional_points) max_ep = std::max(max_ep, e.v_ep);
        if (!(min_star > max_ep)) {
          ++vc;
          d << "[" << to_string(f.kind) << " V1=" << v1 << " V*=" << min_star << " <= EP " << max_ep << "] ";
        }
      }
      for (const auto& c : sw.criticals) {
        ++criticals;
        for (const auto& r : rootfind::spectrum(base.with_v2(c.v_star))) {
          if (r.kind == EigenKind::CCPE && r.energy.real() > 1.02 * c.e_star) {
            ++vd;
            d << "[" << to_string(f.kind) << " V1=" << v1 << " V*=" << c.v_star << " Re E=" << r.energy.real()
              << " > E*=" << c.e_star << "] ";
          }
        }
      }
    }
  }
  d << points << " points, " << criticals << " criticals; violations a=" << va << " b=" << vb << " c=" << vc
    << " d=" << vd;
  return {va + vb + vc + vd == 0, d.str()};
}

Verdict splitting() {
  int n = 0, bad = 0;
  std::ostringstream d;
  for (const char* id : {"I", "II", "III", "IV"}) {
    const auto& t = tables::table(id);
    for (int number : {5, 10, 17}) {
      const auto it = std::find_if(t.rows.begin(), t.rows.end(), [&](const auto& r) { return r.number == number; });
      const auto prev = std::find_if(t.rows.begin(), t.rows.end(), [&](const auto& r) { return r.number == number - 1; });
      if (it == t.rows.end() || prev == t.rows.end()) {
        ++bad;
        continue;
      }
      ++n;
      const auto s = sweep::split_ss(t.model_for(*it), prev->v2, it->v2 - prev->v2);
      if (!s.passed) {
        ++bad;
        d << "[" << id << " r" << number;
        for (const auto& f : s.failures) d << " " << f;
        d << "] ";
      }
    }
  }
  d << n - bad << "/" << n << " splits";
  return {bad == 0 && n == 12, d.str()};
}

Verdict cpa_laser() {
  struct Case {
    PotentialModel model;
    double e_star;
  };
  std::vector<Case> cases;
  const std::pair<const char*, int> rows[] = {{"I", 2}, {"II", 1}, {"III", 13}, {"IV", 2}};
  for (const auto& [id, number] : rows) {
    const auto& t = tables::table(id);
    const auto row = std::find_if(t.rows.begin(), t.rows.end(), [&](const auto& r) { return r.number == number; });
    const PotentialModel m = t.model_for(*row);
    const auto c = sweep::refine_critical(m, row->v2, std::sqrt(*row->e_star));
    cases.push_back({m.with_v2(c.v_star), c.e_star});
  }
  double worst = 0.0, worst_limit = 0.0;
  int samples = 0;
  for (const auto& c : cases) {
    for (const auto& r : diagnostics::det_s_scan(c.model, 0.05, 2.0 * c.e_star + 10.0, 200)) {
      if (!r.ok || r.flags.near_ss) continue;
      ++samples;
      worst = std::max(worst, std::abs(std::abs(r.det_s) - 1.0));
    }
    for (const auto& p : diagnostics::det_s_limit(c.model, c.e_star)) {
      worst_limit = std::max({worst_limit, std::abs(p.below - 1.0), std::abs(p.above - 1.0)});
    }
  }
  return {worst < 1e-6 && worst_limit < 1e-3 && samples >= 4 * 190,
          std::to_string(samples) + " energies max ||detS|-1| " + fmt("%.2e", worst) + ", limit max " +
              fmt("%.2e", worst_limit)};
}

Verdict ep_cascade() {
  const double printed[] = {12.82, 12.96, 13.17, 13.63, 14.78};
  const auto sw = sweep::run_sweep(PotentialModel::exponential(-60.0, 0.0, 2.0), 0.0, 16.0);
  std::vector<double> eps;
  for (const auto& e : sw.exceptional_points) eps.push_back(e.v_ep);
  std::ostringstream d;
  d << "found";
  for (double v : eps) d << " " << fmt("%.3f", v);
  bool ok = eps.size() == 5;
  for (std::size_t i = 0; i < 5; ++i) {
    if (i >= eps.size() || std::abs(eps[i] - printed[i]) > 0.02) ok = false;
  }
  return {ok, d.str()};
}

Verdict special_functions() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double wr = 0.0, rr = 0.0, gr = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex nu = std::polar(5.0 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const Complex z = std::polar(0.1 + 19.9 * u(rng), 2.0 * kPi * u(rng) - kPi);
    const auto p = specfun::bessel_j(nu, z);
    const auto m = specfun::bessel_j(-nu, z);
    const Complex s = 2.0 * std::sin(nu * kPi) / (kPi * z);
    const Complex w = p.j * m.jprime - m.j * p.jprime + s;
    wr = std::max(wr, std::abs(w) / (std::abs(p.j * m.jprime) + std::abs(m.j * p.jprime) + std::abs(s)));
    const Complex lo = specfun::bessel_j(nu - 1.0, z).j;
    const Complex hi = specfun::bessel_j(nu + 1.0, z).j;
    const Complex mid = 2.0 * nu / z * p.j;
    rr = std::max(rr, std::abs(lo + hi - mid) / (std::abs(lo) + std::abs(hi) + std::abs(mid)));

    const Complex g(-10.0 + 20.0 * u(rng), -10.0 + 20.0 * u(rng));
    const Complex refl = kPi / std::sin(kPi * g);
    gr = std::max(gr, std::abs(specfun::gamma(g) * specfun::gamma(1.0 - g) - refl) / std::abs(refl));
  }
  const Complex nu(0.0, 0.4), z(3.0, 1.0);
  const auto p = specfun::bessel_j(nu, z);
  const auto m = specfun::bessel_j(-nu, z);
  const double w0 = std::abs(p.j * m.jprime - m.j * p.jprime + 2.0 * std::sin(nu * kPi) / (kPi * z));
  return {wr < 1e-10 && rr < 1e-9 && gr < 1e-12 && w0 < 1e-10,
          "Wronskian " + fmt("%.2e", wr) + " (reference point " + fmt("%.2e", w0) + "), recurrence " +
              fmt("%.2e", rr) + ", reflection " + fmt("%.2e", gr)};
}

Verdict hygiene() {
  double step = 0.0, domain = 0.0;
  int bad = 0;
  for (const auto& p : oracle_points()) {
    step = std::max(step, p.step_change);
    domain = std::max(domain, p.domain_change);
    if (!p.hygiene_ok()) ++bad;
  }
  return {bad == 0, std::to_string(oracle_points().size() - bad) + "/" + std::to_string(oracle_points().size()) +
                        " points; step halving " + fmt("%.2e", step) + ", domain doubling " + fmt("%.2e", domain)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"table reproduction", tables_reproduced},
      {"closed form vs root finder", scarf_closed_form},
      {"oracle equivalence", oracle_equivalence},
      {"argument-principle completeness", completeness},
      {"conjecture properties", conjectures},
      {"spectral singularity splitting", splitting},
      {"CPA-laser det S", cpa_laser},
      {"EP cascade", ep_cascade},
      {"special-function identities", special_functions},
      {"numerics hygiene", hygiene},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i + 1);
    if (!only.empty() && !only.count(n)) continue;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.passed) ++failed;
    std::printf("criterion %2d %s  %s: %s\n", n, v.passed ? "PASS" : "FAIL", criteria[i].first, v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
