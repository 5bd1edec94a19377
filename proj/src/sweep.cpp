#include "ptspec/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ptspec/parallel.hpp"

namespace ptspec::sweep {

namespace {

rootfind::Window sweep_window(const PotentialModel& base, double v2_min, double v2_max, const SweepOptions& opts) {
  if (opts.window) return *opts.window;
  const double v2 = std::abs(v2_max) > std::abs(v2_min) ? v2_max : v2_min;
  return rootfind::default_window(base.with_v2(v2));
}

rootfind::RootOptions inner_options(const SweepOptions& opts) {
  rootfind::RootOptions r = opts.roots;
  r.jobs = 1;
  return r;
}

std::vector<double> real_energies(const std::vector<EigenRecord>& recs) {
  std::vector<double> out;
  for (const auto& r : recs) {
    if (r.kind == EigenKind::RealBound) out.push_back(r.energy.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

int count_of(const std::vector<EigenRecord>& recs, EigenKind kind) {
  return static_cast<int>(count_kind(recs, kind));
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// ------------------------------------------------------------------ linking

struct Active {
  int id;
  double v2;
  Complex e;
  Complex velocity;
  bool has_velocity;
  EigenKind kind;
};

bool linkable(EigenKind a, EigenKind b) {
  if (a == b) return true;
  return (a == EigenKind::CCPE && b == EigenKind::SS) || (a == EigenKind::SS && b == EigenKind::CCPE);
}

struct LinkOutcome {
  int ended = 0;
  int started = 0;
};

// Greedy nearest-neighbour assignment of the records at `next` to the active
// trajectories. Returns how many trajectories ended and started.
LinkOutcome link_step(std::vector<Active>& active, std::vector<Trajectory>& done, const SweepSample& next,
                      double base_step, int& next_id, bool commit) {
  struct Cand {
    double cost;
    std::size_t a, r;
  };
  std::vector<Cand> cands;
  for (std::size_t a = 0; a < active.size(); ++a) {
    const Active& t = active[a];
    const double dv = next.v2 - t.v2;
    const Complex predicted = t.e + (t.has_velocity ? t.velocity * dv : Complex(0.0));
    const double moved = t.has_velocity ? std::abs(t.velocity) * std::abs(dv) : 0.0;
    const double scale = (1.0 + std::abs(t.e)) * std::abs(dv) / base_step;
    // Fresh trajectories (typically born at an exceptional point) move as the
    // square root of the distance in V2.
    const double gate = t.has_velocity ? std::max(5.0 * moved, 0.02 * scale)
                                       : 0.1 * (1.0 + std::abs(t.e)) * std::sqrt(std::abs(dv) / base_step);
    for (std::size_t r = 0; r < next.spectrum.size(); ++r) {
      if (!linkable(t.kind, next.spectrum[r].kind)) continue;
      const double cost = std::abs(next.spectrum[r].energy - predicted);
      if (cost <= gate) cands.push_back({cost, a, r});
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) { return x.cost < y.cost; });
  std::vector<long> match(active.size(), -1);
  std::vector<bool> taken(next.spectrum.size(), false);
  for (const Cand& c : cands) {
    if (match[c.a] >= 0 || taken[c.r]) continue;
    match[c.a] = static_cast<long>(c.r);
    taken[c.r] = true;
  }
  LinkOutcome out;
  for (std::size_t a = 0; a < active.size(); ++a) out.ended += (match[a] < 0);
  for (std::size_t r = 0; r < taken.size(); ++r) out.started += !taken[r];
  if (!commit) return out;

  std::vector<Active> survivors;
  for (std::size_t a = 0; a < active.size(); ++a) {
    Active t = active[a];
    Trajectory& traj = done[static_cast<std::size_t>(t.id)];
    if (match[a] < 0) continue;
    const EigenRecord& rec = next.spectrum[static_cast<std::size_t>(match[a])];
    const double dv = next.v2 - t.v2;
    if (dv != 0.0) {
      t.velocity = (rec.energy - t.e) / dv;
      t.has_velocity = true;
    }
    t.e = rec.energy;
    t.v2 = next.v2;
    t.kind = rec.kind;
    traj.points.push_back({next.v2, rec.energy, rec.kind});
    survivors.push_back(t);
  }
  for (std::size_t r = 0; r < taken.size(); ++r) {
    if (taken[r]) continue;
    const EigenRecord& rec = next.spectrum[r];
    Trajectory traj;
    traj.id = next_id++;
    traj.points.push_back({next.v2, rec.energy, rec.kind});
    done.push_back(traj);
    survivors.push_back({traj.id, next.v2, rec.energy, Complex(0.0), false, rec.kind});
  }
  active = std::move(survivors);
  return out;
}

SweepSample make_sample(const PotentialModel& base, double v2, const rootfind::Window& window,
                        const rootfind::RootOptions& ropts) {
  SweepSample s;
  s.v2 = v2;
  s.spectrum = spectrum_at(base, v2, window, ropts, &s.complete);
  return s;
}

}  // namespace

std::vector<EigenRecord> spectrum_at(const PotentialModel& base, double v2, const rootfind::Window& window,
                                     const rootfind::RootOptions& opts, bool* complete) {
  const PotentialModel model = base.with_v2(v2);
  rootfind::RootResult r = rootfind::find_zeros(model, window, opts);
  if (complete) *complete = r.complete;
  return rootfind::classify(r.zeros, opts.axis_tol);
}

SweepResult trace_eigenvalues(const PotentialModel& base, double v2_min, double v2_max, double v2_step,
                              const SweepOptions& opts) {
  if (base.kind() == ModelKind::Sampled) throw DomainError("sweep: sampled potentials have no V2 parameter");
  if (!std::isfinite(v2_min) || !std::isfinite(v2_max) || v2_max < v2_min) {
    throw DomainError("sweep: V2 range must be finite and nonempty");
  }
  SweepResult result;
  result.base = base;
  result.options = opts;
  const rootfind::Window window = sweep_window(base, v2_min, v2_max, opts);
  result.options.window = window;
  const rootfind::RootOptions ropts = inner_options(opts);

  const double range = v2_max - v2_min;
  const double step = range == 0.0 ? 0.0 : (v2_step > 0.0 ? v2_step : range / 400.0);
  const int n = range == 0.0 ? 1 : static_cast<int>(std::ceil(range / step - 1e-9)) + 1;
  std::vector<SweepSample> samples(static_cast<std::size_t>(n));
  parallel::for_each_index(
      samples.size(),
      [&](std::size_t i) {
        const double v2 = (static_cast<int>(i) == n - 1) ? v2_max : v2_min + step * static_cast<double>(i);
        samples[i] = make_sample(base, v2, window, ropts);
      },
      opts.jobs);

  // Link consecutive samples; where more than one EP-like event (two ends,
  // one start) happens in a step, insert a midpoint sample.
  std::vector<SweepSample> linked{samples.front()};
  std::vector<Active> active;
  int next_id = 0;
  for (const EigenRecord& rec : samples.front().spectrum) {
    Trajectory traj;
    traj.id = next_id++;
    traj.points.push_back({samples.front().v2, rec.energy, rec.kind});
    result.trajectories.push_back(traj);
    active.push_back({traj.id, samples.front().v2, rec.energy, Complex(0.0), false, rec.kind});
  }
  const double floor = step * opts.min_step_fraction;
  std::vector<SweepSample> pending(samples.begin() + 1, samples.end());
  std::reverse(pending.begin(), pending.end());
  while (!pending.empty()) {
    SweepSample next = pending.back();
    const double dv = next.v2 - linked.back().v2;
    std::vector<Active> probe = active;
    std::vector<Trajectory> scratch = result.trajectories;
    int probe_id = next_id;
    const LinkOutcome o = link_step(probe, scratch, next, step, probe_id, false);
    if (o.ended + o.started > 3) {
      if (dv > 2.0 * floor) {
        pending.push_back(make_sample(base, linked.back().v2 + 0.5 * dv, window, ropts));
        continue;
      }
      const std::string msg = "linking: unresolved jump between V2 = " + fmt(linked.back().v2) + " and " + fmt(next.v2);
      if (opts.strict_linking) throw LinkingError(msg);
      result.warnings.push_back(msg);
    }
    pending.pop_back();
    link_step(active, result.trajectories, next, step, next_id, true);
    linked.push_back(std::move(next));
  }
  result.samples = std::move(linked);
  for (const auto& s : result.samples) {
    if (!s.complete) result.warnings.push_back("completeness: root count short of the winding number at V2 = " + fmt(s.v2));
  }
  return result;
}

std::vector<ExceptionalPoint> find_exceptional_points(const SweepResult& result, double tol) {
  if (!result.base) throw DomainError("find_exceptional_points: sweep result carries no model");
  if (!(tol > 0.0)) throw DomainError("find_exceptional_points: tol must be > 0");
  const PotentialModel& base = *result.base;
  const rootfind::Window window = result.options.window ? *result.options.window
                                                        : rootfind::default_window(base);
  const rootfind::RootOptions ropts = inner_options(result.options);
  const auto reals_at = [&](double v2) { return real_energies(spectrum_at(base, v2, window, ropts)); };

  // Samples sitting on a degenerate zero (a level crossing or the EP itself)
  // under-count their levels, so brackets run between complete samples.
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < result.samples.size(); ++i) {
    if (result.samples[i].complete) usable.push_back(i);
  }

  std::vector<ExceptionalPoint> out;
  for (std::size_t u = 0; u + 1 < usable.size(); ++u) {
    const SweepSample& first = result.samples[usable[u]];
    const SweepSample& last = result.samples[usable[u + 1]];
    const int c_end = count_of(last.spectrum, EigenKind::RealBound);
    double lo = first.v2;
    const double end = last.v2;
    std::vector<double> lo_reals = real_energies(first.spectrum);
    while (static_cast<int>(lo_reals.size()) > c_end && lo < end) {
      double hi = end;
      std::vector<double> hi_reals = real_energies(last.spectrum);
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        std::vector<double> mid_reals = reals_at(mid);
        if (mid_reals.size() < lo_reals.size()) {
          hi = mid;
          hi_reals = std::move(mid_reals);
        } else {
          lo = mid;
          lo_reals = std::move(mid_reals);
        }
      }
      // The coalescing pair: the two closest neighbours among the levels at
      // `lo` that have no partner at `hi`.
      std::vector<bool> kept(lo_reals.size(), false);
      for (double e : hi_reals) {
        std::size_t best = 0;
        double best_d = 1e300;
        for (std::size_t j = 0; j < lo_reals.size(); ++j) {
          if (!kept[j] && std::abs(lo_reals[j] - e) < best_d) {
            best_d = std::abs(lo_reals[j] - e);
            best = j;
          }
        }
        if (best_d < 1e300) kept[best] = true;
      }
      std::vector<double> lost;
      for (std::size_t j = 0; j < lo_reals.size(); ++j) {
        if (!kept[j]) lost.push_back(lo_reals[j]);
      }
      double e_c = 0.0;
      if (lost.size() >= 2) {
        std::size_t pick = 0;
        double gap = 1e300;
        for (std::size_t j = 0; j + 1 < lost.size(); ++j) {
          if (lost[j + 1] - lost[j] < gap) {
            gap = lost[j + 1] - lost[j];
            pick = j;
          }
        }
        e_c = 0.5 * (lost[pick] + lost[pick + 1]);
      } else if (!lost.empty()) {
        e_c = lost.front();
      }
      out.push_back({0.5 * (lo + hi), Complex(e_c, 0.0)});
      lo = hi;
      lo_reals = std::move(hi_reals);
    }
  }
  return out;
}

CriticalPoint refine_critical(const PotentialModel& base, double v2_guess, double k1_guess, const SweepOptions& opts) {
  if (!(k1_guess > 0.0)) throw DomainError("refine_critical: k1 guess must be > 0");
  const auto F = [&](double k1, double v2) { return models::f_of_k(base.with_v2(v2), Complex(k1, 0.0)); };
  double k1 = k1_guess;
  double v2 = v2_guess;
  Complex f0 = F(k1, v2);
  bool converged = false;
  for (int it = 0; it < 80 && !converged; ++it) {
    if (f0 == Complex(0.0)) {
      converged = true;
      break;
    }
    const double hk = 1e-6 * std::max(1.0, k1);
    const double hv = 1e-6 * std::max(1.0, std::abs(v2));
    const Complex fk = (F(k1 + hk, v2) - F(k1 - hk, v2)) / (2.0 * hk);
    const Complex fv = (F(k1, v2 + hv) - F(k1, v2 - hv)) / (2.0 * hv);
    const double det = fk.real() * fv.imag() - fv.real() * fk.imag();
    if (det == 0.0 || !std::isfinite(det)) break;
    const double dk = -(f0.real() * fv.imag() - fv.real() * f0.imag()) / det;
    const double dv = -(fk.real() * f0.imag() - f0.real() * fk.imag()) / det;
    double lambda = 1.0;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const double kn = k1 + lambda * dk;
      const double vn = v2 + lambda * dv;
      if (kn > 0.0) {
        try {
          const Complex fn = F(kn, vn);
          if (std::abs(fn) < std::abs(f0)) {
            k1 = kn;
            v2 = vn;
            f0 = fn;
            improved = true;
            break;
          }
        } catch (const Error&) {
        }
      }
      lambda *= 0.5;
    }
    const double size = std::abs(lambda * dk) / (1.0 + k1) + std::abs(lambda * dv) / (1.0 + std::abs(v2));
    if (!improved) {
      converged = std::abs(dk) / (1.0 + k1) + std::abs(dv) / (1.0 + std::abs(v2)) < 1e-8;
      break;
    }
    if (size < 1e-13) converged = true;
  }
  if (!converged) throw ConvergenceError("refine_critical: no real zero found near V2 = " + fmt(v2_guess));

  CriticalPoint cp;
  cp.v_star = v2;
  cp.e_star = k1 * k1;
  const PotentialModel at = base.with_v2(v2);
  const rootfind::Window window = opts.window ? *opts.window : rootfind::default_window(at);
  cp.m = count_of(spectrum_at(base, v2, window, inner_options(opts)), EigenKind::CCPE);
  return cp;
}

std::vector<CriticalPoint> criticals_from(const SweepResult& result) {
  if (!result.base) throw DomainError("criticals_from: sweep result carries no model");
  const PotentialModel& base = *result.base;
  std::vector<CriticalPoint> out;
  const auto add = [&](double v2_guess, double k1, double lo, double hi) {
    try {
      CriticalPoint cp = refine_critical(base, v2_guess, k1, result.options);
      if (cp.v_star < lo || cp.v_star > hi) return;
      for (const auto& c : out) {
        if (std::abs(c.v_star - cp.v_star) < 1e-6 * std::max(1.0, cp.v_star) &&
            std::abs(c.e_star - cp.e_star) < 1e-6 * std::max(1.0, cp.e_star)) {
          return;
        }
      }
      out.push_back(cp);
    } catch (const Error&) {
    }
  };

  const auto& s = result.samples;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double dv_lo = i > 0 ? s[i].v2 - s[i - 1].v2 : 0.0;
    const double dv_hi = i + 1 < s.size() ? s[i + 1].v2 - s[i].v2 : 0.0;
    for (const auto& rec : s[i].spectrum) {
      if (rec.kind == EigenKind::SS) add(s[i].v2, rec.zero.k.real(), s[i].v2 - dv_lo, s[i].v2 + dv_hi);
    }
    if (i + 1 >= s.size()) continue;
    const int real_drop = count_of(s[i].spectrum, EigenKind::RealBound) - count_of(s[i + 1].spectrum, EigenKind::RealBound);
    const int from_eps = std::max(0, real_drop / 2);
    const int births = count_of(s[i + 1].spectrum, EigenKind::CCPE) - count_of(s[i].spectrum, EigenKind::CCPE) -
                       from_eps + count_of(s[i].spectrum, EigenKind::SS);
    if (births <= 0) continue;
    std::vector<const EigenRecord*> fresh;
    for (const auto& rec : s[i + 1].spectrum) {
      if (rec.kind == EigenKind::CCPE) fresh.push_back(&rec);
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const EigenRecord* x, const EigenRecord* y) { return x->zero.k.imag() < y->zero.k.imag(); });
    const double span = s[i + 1].v2 - s[i].v2;
    for (int b = 0; b < births && b < static_cast<int>(fresh.size()); ++b) {
      add(s[i + 1].v2, std::abs(fresh[static_cast<std::size_t>(b)]->zero.k.real()), s[i].v2 - span,
          s[i + 1].v2 + span);
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& x, const CriticalPoint& y) { return x.v_star < y.v_star; });
  return out;
}

std::vector<CriticalPoint> find_critical_ss(const PotentialModel& base, double v2_lo, double v2_hi, int m_max,
                                            double v2_step, const SweepOptions& opts) {
  if (!(v2_hi > v2_lo)) throw DomainError("find_critical_ss: empty V2 window");
  const double step = v2_step > 0.0 ? v2_step : (v2_hi - v2_lo) / 200.0;
  SweepOptions o = opts;
  SweepResult r = trace_eigenvalues(base, v2_lo, v2_hi, step, o);
  std::vector<CriticalPoint> out;
  for (const auto& c : criticals_from(r)) {
    if (c.v_star >= v2_lo && c.v_star <= v2_hi && c.m <= m_max) out.push_back(c);
  }
  return out;
}

SweepResult run_sweep(const PotentialModel& base, double v2_min, double v2_max, double v2_step,
                      const SweepOptions& opts) {
  SweepResult r = trace_eigenvalues(base, v2_min, v2_max, v2_step, opts);
  r.exceptional_points = find_exceptional_points(r);
  r.criticals = criticals_from(r);
  return r;
}

SplitResult split_ss(const PotentialModel& base, double v_star, double epsilon, const SweepOptions& opts) {
  if (!(epsilon > 0.0)) throw DomainError("split_ss: epsilon must be > 0");
  SplitResult out;
  out.epsilon = epsilon;
  const rootfind::Window window = sweep_window(base, v_star - epsilon, v_star + epsilon, opts);
  SweepOptions o = opts;
  o.window = window;
  const rootfind::RootOptions ropts = inner_options(opts);

  const auto newest = [](const std::vector<EigenRecord>& recs) -> std::optional<EigenRecord> {
    std::optional<EigenRecord> best;
    for (const auto& r : recs) {
      if (r.kind == EigenKind::CCPE && (!best || r.zero.k.imag() < best->zero.k.imag())) best = r;
    }
    return best;
  };

  const std::vector<EigenRecord> probe = spectrum_at(base, v_star + epsilon, window, ropts);
  const std::optional<EigenRecord> seed = newest(probe);
  if (!seed) {
    out.failures.push_back("no CCPE at V2 = V_star + epsilon");
    out.after = probe;
    return out;
  }
  const CriticalPoint cp = refine_critical(base, v_star, std::abs(seed->zero.k.real()), o);
  out.v_star = cp.v_star;
  out.e_star = cp.e_star;
  out.before = spectrum_at(base, cp.v_star - epsilon, window, ropts);
  out.at = spectrum_at(base, cp.v_star, window, ropts);
  out.after = spectrum_at(base, cp.v_star + epsilon, window, ropts);
  out.new_ccpe = newest(out.after);

  const int ss_before = count_of(out.before, EigenKind::SS);
  const int ss_at = count_of(out.at, EigenKind::SS);
  const int ss_after = count_of(out.after, EigenKind::SS);
  if (ss_before != 0) out.failures.push_back("SS present below V_star");
  if (ss_at != 1) out.failures.push_back("expected one SS at V_star, found " + std::to_string(ss_at));
  if (ss_after != 0) out.failures.push_back("SS present above V_star");
  const int gained = count_of(out.after, EigenKind::CCPE) - count_of(out.before, EigenKind::CCPE);
  if (gained != 1) out.failures.push_back("CCPE count changed by " + std::to_string(gained) + " across V_star");
  if (!out.new_ccpe) {
    out.failures.push_back("no CCPE above V_star");
  } else {
    const Complex e = out.new_ccpe->energy;
    if (std::abs(e.real() - cp.e_star) > 0.02 * cp.e_star) {
      out.failures.push_back("new CCPE Re E = " + fmt(e.real()) + " is not within 2% of E_star = " + fmt(cp.e_star));
    }
    if (std::abs(e.imag()) >= 0.2) out.failures.push_back("new CCPE |Im E| = " + fmt(std::abs(e.imag())) + " >= 0.2");
  }
  out.passed = out.failures.empty();
  return out;
}

}  // namespace ptspec::sweep
