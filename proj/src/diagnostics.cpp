#include "ptspec/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ptspec/parallel.hpp"

namespace ptspec::diagnostics {

namespace {

void check_range(double e_min, double e_max, const char* who) {
  if (!std::isfinite(e_min) || !std::isfinite(e_max) || !(e_min > 0.0) || !(e_max >= e_min)) {
    throw DomainError(std::string(who) + ": energy range must lie in (0, inf) and be nonempty");
  }
}

double energy_at(double e_min, double e_max, int n, int i) {
  return n == 1 ? e_min : e_min + (e_max - e_min) * static_cast<double>(i) / static_cast<double>(n - 1);
}

ScatterAmplitudes amps_at(const PotentialModel& model, double energy) {
  return models::amplitudes(model, std::sqrt(energy));
}

double t_minus_one(const PotentialModel& model, double energy) {
  return amps_at(model, energy).transmission() - 1.0;
}

}  // namespace

ScatterReport scatter_report(const PotentialModel& model, double energy, const ScanOptions& opts) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw DomainError("scatter_report: E must be > 0");
  ScatterReport r;
  r.energy = energy;
  try {
    r.amplitudes = amps_at(model, energy);
    const ScatterAmplitudes& a = r.amplitudes;
    r.det_s = a.t * a.t - a.r_left * a.r_right;
    if (!is_finite(r.det_s)) throw EvalError("det S is not finite");
    r.flags.near_ss = std::abs(a.t) > opts.divergence_threshold;
    const bool transparent = std::abs(a.transmission() - 1.0) < opts.transparency_tol;
    r.flags.invisible_left = transparent && a.reflection_left() < opts.invisibility_tol;
    r.flags.invisible_right = transparent && a.reflection_right() < opts.invisibility_tol;
    r.flags.invisible_both = r.flags.invisible_left && r.flags.invisible_right;
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
  }
  return r;
}

std::vector<ScatterReport> det_s_scan(const PotentialModel& model, double e_min, double e_max, int n,
                                      const ScanOptions& opts) {
  check_range(e_min, e_max, "det_s_scan");
  if (n < 1) throw DomainError("det_s_scan: need at least one sample");
  std::vector<ScatterReport> out(static_cast<std::size_t>(n));
  parallel::for_each_index(
      out.size(),
      [&](std::size_t i) { out[i] = scatter_report(model, energy_at(e_min, e_max, n, static_cast<int>(i)), opts); },
      opts.jobs);
  return out;
}

std::vector<LimitPoint> det_s_limit(const PotentialModel& model, double e_star, const std::vector<double>& deltas) {
  std::vector<LimitPoint> out;
  for (double d : deltas) {
    if (!(d > 0.0) || !(e_star - d > 0.0)) throw DomainError("det_s_limit: need 0 < delta < E_star");
    const auto mod = [&](double e) {
      const ScatterAmplitudes a = amps_at(model, e);
      return std::abs(a.t * a.t - a.r_left * a.r_right);
    };
    out.push_back({d, mod(e_star - d), mod(e_star + d)});
  }
  return out;
}

double m_identity_check(const PotentialModel& model, double e_min, double e_max, int n) {
  check_range(e_min, e_max, "m_identity_check");
  if (n < 1) throw DomainError("m_identity_check: need at least one sample");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    try {
      const ScatterAmplitudes a = amps_at(model, energy_at(e_min, e_max, n, i));
      if (a.t == Complex(0.0)) continue;
      const Complex m22 = 1.0 / a.t;
      const Complex m11 = a.t - a.r_left * a.r_right / a.t;
      const double res = std::abs(std::conj(m11) - m22);
      if (std::isfinite(res)) worst = std::max(worst, res);
    } catch (const Error&) {
    }
  }
  return worst;
}

SelfDualCheck self_dual_check(const PotentialModel& model, double k_star, double delta) {
  if (!(k_star > delta) || !(delta > 0.0)) throw DomainError("self_dual_check: need 0 < delta < k_star");
  SelfDualCheck c;
  c.t_plus = models::amplitudes_continued(model, Complex(k_star - delta, 0.0)).transmission();
  c.t_minus = models::amplitudes_continued(model, Complex(-k_star + delta, 0.0)).transmission();
  return c;
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Left:
      return "left";
    case Direction::Right:
      return "right";
    case Direction::Both:
      return "both";
  }
  return "both";
}

std::vector<InvisibilityPoint> invisibility_scan(const PotentialModel& model, double e_min, double e_max, int n,
                                                 double tol, int jobs) {
  check_range(e_min, e_max, "invisibility_scan");
  if (model.is_free()) throw DomainError("invisibility_scan: the free model is transparent at every energy");
  if (n < 3) throw DomainError("invisibility_scan: need at least three samples");
  if (!(tol > 0.0)) throw DomainError("invisibility_scan: tol must be > 0");

  std::vector<double> e(static_cast<std::size_t>(n)), g(e.size());
  std::vector<unsigned char> ok(e.size(), 0);
  parallel::for_each_index(
      e.size(),
      [&](std::size_t i) {
        e[i] = energy_at(e_min, e_max, n, static_cast<int>(i));
        try {
          g[i] = t_minus_one(model, e[i]);
          ok[i] = std::isfinite(g[i]);
        } catch (const Error&) {
        }
      },
      jobs);

  const auto f = [&](double x) { return t_minus_one(model, x); };
  std::vector<double> candidates;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    if (!ok[i] || !ok[i + 1]) continue;
    if (g[i] == 0.0) {
      candidates.push_back(e[i]);
      continue;
    }
    if ((g[i] < 0.0) == (g[i + 1] < 0.0)) continue;
    double lo = e[i], hi = e[i + 1], glo = g[i];
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
      const double mid = 0.5 * (lo + hi);
      const double gm = f(mid);
      if ((gm < 0.0) == (glo < 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
    candidates.push_back(0.5 * (lo + hi));
  }
  // Touching zeros: T - 1 has a double zero when both reflectances vanish.
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    if (!ok[i - 1] || !ok[i] || !ok[i + 1]) continue;
    const double a = std::abs(g[i - 1]), b = std::abs(g[i]), c = std::abs(g[i + 1]);
    if (!(b <= a && b <= c)) continue;
    if ((g[i - 1] < 0.0) != (g[i + 1] < 0.0)) continue;
    double lo = e[i - 1], hi = e[i + 1];
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
    while (hi - lo > 1e-10 * std::max(1.0, hi)) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - phi * (hi - lo);
        f1 = std::abs(f(x1));
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + phi * (hi - lo);
        f2 = std::abs(f(x2));
      }
    }
    candidates.push_back(0.5 * (lo + hi));
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<InvisibilityPoint> out;
  for (double x : candidates) {
    if (!out.empty() && std::abs(out.back().energy - x) < 1e-7 * std::max(1.0, x)) continue;
    ScatterAmplitudes a;
    try {
      a = amps_at(model, x);
    } catch (const Error&) {
      continue;
    }
    // A genuine zero of R is a sharp dip; exponentially small but smooth
    // reflectance (high energies, smooth potentials) is not invisibility.
    const double h = 1e-4 * std::max(1.0, x);
    ScatterAmplitudes lo, hi;
    try {
      lo = amps_at(model, std::max(0.5 * x, x - h));
      hi = amps_at(model, x + h);
    } catch (const Error&) {
      continue;
    }
    const auto dip = [](double at, double l, double r) { return at < 1e-6 * std::max(l, r); };
    const bool left = a.reflection_left() < tol && dip(a.reflection_left(), lo.reflection_left(), hi.reflection_left());
    const bool right =
        a.reflection_right() < tol && dip(a.reflection_right(), lo.reflection_right(), hi.reflection_right());
    if (!left && !right) continue;
    if (std::abs(a.transmission() - 1.0) > std::sqrt(tol)) continue;
    InvisibilityPoint p;
    p.energy = x;
    p.direction = left && right ? Direction::Both : (left ? Direction::Left : Direction::Right);
    p.transmission = a.transmission();
    p.r_left = a.reflection_left();
    p.r_right = a.reflection_right();
    out.push_back(p);
  }
  return out;
}

}  // namespace ptspec::diagnostics
