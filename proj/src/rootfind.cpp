#include "ptspec/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ptspec/numerov.hpp"
#include "ptspec/parallel.hpp"

namespace ptspec::rootfind {

namespace {

using grid::ComplexFn;

Complex g_of(const ComplexFn& f, Complex k) { return k * f(k); }

// ---------------------------------------------------------------- winding

struct PhaseWalk {
  const ComplexFn& f;
  double total = 0.0;
  std::vector<double> magnitudes;

  Complex value(Complex k) {
    const Complex v = g_of(f, k);
    if (!is_finite(v) || v == Complex(0.0)) throw EvalError("winding: k F(k) vanishes or fails on the contour");
    return v;
  }

  void step(Complex za, Complex ga, Complex zb, Complex gb, int depth) {
    const double dphi = std::arg(gb / ga);
    if (std::abs(dphi) > kPi / 4.0 && depth < 40) {
      const Complex zm = 0.5 * (za + zb);
      const Complex gm = value(zm);
      step(za, ga, zm, gm, depth + 1);
      step(zm, gm, zb, gb, depth + 1);
      return;
    }
    total += dphi;
  }

  // Closed polygon through the given points.
  void loop(const std::vector<Complex>& pts, int jobs) {
    std::vector<Complex> vals;
    std::vector<unsigned char> ok;
    grid::evaluate_points([this](Complex k) { return g_of(f, k); }, pts, vals, ok, jobs);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (!ok[i] || vals[i] == Complex(0.0)) vals[i] = value(pts[i]);
      magnitudes.push_back(std::abs(vals[i]));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const std::size_t j = (i + 1) % pts.size();
      step(pts[i], vals[i], pts[j], vals[j], 0);
    }
  }

  int turns() const { return static_cast<int>(std::lround(total / (2.0 * kPi))); }
};

std::vector<Complex> rectangle_points(const Window& w, int samples) {
  const double width = w.k1max - w.k1min;
  const double height = w.k2max - w.k2min;
  const double perimeter = 2.0 * (width + height);
  const Complex corners[4] = {{w.k1min, w.k2min}, {w.k1max, w.k2min}, {w.k1max, w.k2max}, {w.k1min, w.k2max}};
  const double lengths[4] = {width, height, width, height};
  std::vector<Complex> pts;
  for (int e = 0; e < 4; ++e) {
    const int n = std::max(8, static_cast<int>(std::ceil(samples * lengths[e] / perimeter)));
    const Complex a = corners[e];
    const Complex b = corners[(e + 1) % 4];
    for (int i = 0; i < n; ++i) pts.push_back(a + (b - a) * (static_cast<double>(i) / n));
  }
  return pts;
}

struct BoundaryInfo {
  int winding = 0;
  double scale = 1.0;  // median |kF| on the rectangle
};

BoundaryInfo boundary_info(const ComplexFn& f, const Window& w, int samples, double rho, int jobs) {
  PhaseWalk rect{f, 0.0, {}};
  rect.loop(rectangle_points(w, samples), jobs);
  BoundaryInfo info;
  info.winding = rect.turns();
  std::vector<double> mags = rect.magnitudes;
  std::nth_element(mags.begin(), mags.begin() + mags.size() / 2, mags.end());
  info.scale = std::max(mags[mags.size() / 2], 1e-300);

  if (w.k1min < -rho && w.k1max > rho && w.k2min < -rho && w.k2max > rho) {
    std::vector<Complex> circle;
    constexpr int kCircle = 256;
    for (int i = 0; i < kCircle; ++i) circle.push_back(std::polar(rho, 2.0 * kPi * i / kCircle));
    PhaseWalk small{f, 0.0, {}};
    small.loop(circle, jobs);
    info.winding -= small.turns();
  }
  return info;
}

// ----------------------------------------------------------- marching squares

struct Segment {
  Complex a, b;
  long long edge_a, edge_b;
};

long long edge_key(int i, int j, int n1, bool vertical) {
  return 2LL * (static_cast<long long>(j) * n1 + i) + (vertical ? 1 : 0);
}

std::vector<Polyline> chain_segments(const std::vector<Segment>& segs) {
  std::multimap<long long, std::size_t> by_edge;
  for (std::size_t s = 0; s < segs.size(); ++s) {
    by_edge.emplace(segs[s].edge_a, s);
    by_edge.emplace(segs[s].edge_b, s);
  }
  std::vector<bool> used(segs.size(), false);
  const auto next_segment = [&](long long edge, std::size_t from) -> long long {
    auto range = by_edge.equal_range(edge);
    for (auto it = range.first; it != range.second; ++it) {
      if (it->second != from && !used[it->second]) return static_cast<long long>(it->second);
    }
    return -1;
  };

  std::vector<Polyline> out;
  for (std::size_t s0 = 0; s0 < segs.size(); ++s0) {
    if (used[s0]) continue;
    used[s0] = true;
    std::vector<Complex> forward{segs[s0].a, segs[s0].b};
    // Extend from the b end, then from the a end.
    long long edge = segs[s0].edge_b;
    std::size_t cur = s0;
    for (long long nxt; (nxt = next_segment(edge, cur)) >= 0;) {
      const Segment& sg = segs[static_cast<std::size_t>(nxt)];
      used[static_cast<std::size_t>(nxt)] = true;
      const bool a_first = (sg.edge_a == edge);
      forward.push_back(a_first ? sg.b : sg.a);
      edge = a_first ? sg.edge_b : sg.edge_a;
      cur = static_cast<std::size_t>(nxt);
    }
    std::vector<Complex> backward;
    edge = segs[s0].edge_a;
    cur = s0;
    for (long long nxt; (nxt = next_segment(edge, cur)) >= 0;) {
      const Segment& sg = segs[static_cast<std::size_t>(nxt)];
      used[static_cast<std::size_t>(nxt)] = true;
      const bool a_first = (sg.edge_a == edge);
      backward.push_back(a_first ? sg.b : sg.a);
      edge = a_first ? sg.edge_b : sg.edge_a;
      cur = static_cast<std::size_t>(nxt);
    }
    Polyline pl;
    pl.points.assign(backward.rbegin(), backward.rend());
    pl.points.insert(pl.points.end(), forward.begin(), forward.end());
    out.push_back(std::move(pl));
  }
  return out;
}

// Zero-level segments of one scalar field in one cell. Corners in the order
// (i,j), (i+1,j), (i+1,j+1), (i,j+1).
void cell_segments(const double v[4], const Complex pos[4], const long long edges[4], std::vector<Segment>& out) {
  int mask = 0;
  for (int c = 0; c < 4; ++c) mask |= (v[c] >= 0.0 ? 1 : 0) << c;
  if (mask == 0 || mask == 15) return;

  // Edge e joins corner e and corner e+1.
  const auto crossing = [&](int e) {
    const int c0 = e;
    const int c1 = (e + 1) % 4;
    const double t = v[c0] / (v[c0] - v[c1]);
    return pos[c0] + (pos[c1] - pos[c0]) * t;
  };
  std::vector<int> cut;
  for (int e = 0; e < 4; ++e) {
    const bool s0 = v[e] >= 0.0;
    const bool s1 = v[(e + 1) % 4] >= 0.0;
    if (s0 != s1) cut.push_back(e);
  }
  if (cut.size() == 2) {
    out.push_back({crossing(cut[0]), crossing(cut[1]), edges[cut[0]], edges[cut[1]]});
    return;
  }
  // Saddle: decide the pairing from the centre value.
  const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
  const bool c0_positive = v[0] >= 0.0;
  if ((centre >= 0.0) == c0_positive) {
    out.push_back({crossing(0), crossing(1), edges[0], edges[1]});
    out.push_back({crossing(2), crossing(3), edges[2], edges[3]});
  } else {
    out.push_back({crossing(3), crossing(0), edges[3], edges[0]});
    out.push_back({crossing(1), crossing(2), edges[1], edges[2]});
  }
}

bool mixed_signs(const double v[4]) {
  bool pos = false, neg = false;
  for (int c = 0; c < 4; ++c) (v[c] >= 0.0 ? pos : neg) = true;
  return pos && neg;
}

// ------------------------------------------------------------------ helpers

bool near_any(Complex k, const std::vector<Complex>& roots, double tol) {
  return std::any_of(roots.begin(), roots.end(), [&](Complex r) { return std::abs(r - k) < tol; });
}

std::vector<Complex> seeds_from(const grid::GridValues& vals, const ContourSet& contours) {
  const grid::GridSpec& s = vals.spec;
  std::vector<std::pair<double, Complex>> ranked;
  const auto gmag = [&](int i, int j) { return std::abs(s.node(i, j) * vals.at(i, j)); };
  for (const auto& [i, j] : contours.crossing_cells) {
    const Complex centre(s.k1(i) + 0.5 * s.dk1(), s.k2(j) + 0.5 * s.dk2());
    double m = gmag(i, j);
    m = std::min({m, gmag(i + 1, j), gmag(i, j + 1), gmag(i + 1, j + 1)});
    ranked.emplace_back(m, centre);
  }
  for (int j = 1; j + 1 < s.n2; ++j) {
    for (int i = 1; i + 1 < s.n1; ++i) {
      if (!vals.valid(i, j)) continue;
      const double here = gmag(i, j);
      bool minimum = true;
      for (int dj = -1; dj <= 1 && minimum; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if ((di || dj) && (!vals.valid(i + di, j + dj) || gmag(i + di, j + dj) < here)) {
            minimum = false;
            break;
          }
        }
      }
      if (minimum) ranked.emplace_back(here, s.node(i, j));
    }
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Complex> seeds;
  for (const auto& r : ranked) seeds.push_back(r.second);
  return seeds;
}

void sort_zeros(std::vector<KZero>& zeros) {
  std::sort(zeros.begin(), zeros.end(), [](const KZero& x, const KZero& y) {
    const Complex ex = x.k * x.k;
    const Complex ey = y.k * y.k;
    if (ex.real() != ey.real()) return ex.real() < ey.real();
    if (ex.imag() != ey.imag()) return ex.imag() < ey.imag();
    return x.k.real() < y.k.real();
  });
}

std::string describe(Complex k) {
  std::ostringstream os;
  os.precision(6);
  os << k.real() << (k.imag() < 0 ? " - " : " + ") << std::abs(k.imag()) << "i";
  return os.str();
}

int even_at_least(int n) { return (n % 2 == 0) ? n : n + 1; }

}  // namespace

// ---------------------------------------------------------------- public

Window default_window(const PotentialModel& model) {
  double scale = std::max({std::abs(model.v1()), std::abs(model.v2()), 1.0});
  if (model.kind() == ModelKind::Sampled) {
    for (const auto& piece : model.sampled_potential()->pieces) {
      for (const Complex& v : piece.v) scale = std::max(scale, std::abs(v.real()) + std::abs(v.imag()));
    }
  }
  const double k = std::sqrt(6.0 * scale) + 1.0;
  return {-k, k, -0.01, k};
}

std::pair<int, int> default_resolution(const Window& w, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("default_resolution: spacing must be > 0");
  const int n1 = std::clamp(even_at_least(static_cast<int>(std::ceil((w.k1max - w.k1min) / spacing))), 48, 200);
  const int n2 = std::clamp(static_cast<int>(std::ceil((w.k2max - w.k2min) / spacing)), 24, 100);
  return {n1, n2};
}

ContourSet contour_from_values(const grid::GridValues& vals) {
  const grid::GridSpec& s = vals.spec;
  ContourSet out;
  out.spec = s;
  std::vector<Segment> re_segs, im_segs;
  for (int j = 0; j + 1 < s.n2; ++j) {
    for (int i = 0; i + 1 < s.n1; ++i) {
      const int ci[4] = {i, i + 1, i + 1, i};
      const int cj[4] = {j, j, j + 1, j + 1};
      bool ok = true;
      double re[4], im[4];
      Complex pos[4];
      for (int c = 0; c < 4; ++c) {
        ok = ok && vals.valid(ci[c], cj[c]);
        const Complex v = vals.at(ci[c], cj[c]);
        re[c] = v.real();
        im[c] = v.imag();
        pos[c] = s.node(ci[c], cj[c]);
      }
      if (!ok) {
        out.skipped_cells.emplace_back(i, j);
        continue;
      }
      const long long edges[4] = {edge_key(i, j, s.n1, false), edge_key(i + 1, j, s.n1, true),
                                  edge_key(i, j + 1, s.n1, false), edge_key(i, j, s.n1, true)};
      cell_segments(re, pos, edges, re_segs);
      cell_segments(im, pos, edges, im_segs);
      if (mixed_signs(re) && mixed_signs(im)) out.crossing_cells.emplace_back(i, j);
    }
  }
  out.re_zero = chain_segments(re_segs);
  out.im_zero = chain_segments(im_segs);
  return out;
}

ContourSet contour_grid(const PotentialModel& model, const Window& window, int n1, int n2, int jobs) {
  if (n1 < 16 || n2 < 16) throw DomainError("contour_grid: resolution must be at least 16 x 16");
  const grid::GridSpec spec{window, n1, n2};
  return contour_from_values(
      grid::evaluate_grid([&model](Complex k) { return models::f_of_k(model, k); }, spec, jobs));
}

int winding_count(const ComplexFn& f, const Window& window, int samples, double origin_radius) {
  return boundary_info(f, window, samples, origin_radius, 0).winding;
}

bool refine_zero(const ComplexFn& f, Complex seed, const std::vector<Complex>& deflate, KZero& out, int max_iter) {
  const auto deflated = [&](Complex k) {
    Complex v = g_of(f, k);
    for (const Complex& r : deflate) v /= (k - r);
    return v;
  };
  const auto safe = [](auto&& fn, Complex k, Complex& v) {
    try {
      v = fn(k);
      return is_finite(v);
    } catch (const Error&) {
      return false;
    }
  };
  const auto newton = [&](auto&& fn, Complex& k, int iters, int& used) {
    Complex val;
    if (!safe(fn, k, val)) return false;
    for (int it = 0; it < iters; ++it) {
      ++used;
      if (val == Complex(0.0)) return true;
      const double h = 1e-6 * std::max(1.0, std::abs(k));
      Complex fp, fm;
      if (!safe(fn, k + h, fp) || !safe(fn, k - h, fm)) return false;
      const Complex deriv = (fp - fm) / (2.0 * h);
      if (deriv == Complex(0.0) || !is_finite(deriv)) return false;
      const Complex step = val / deriv;
      double lambda = 1.0;
      bool improved = false;
      Complex kn, vn;
      for (int ls = 0; ls < 30; ++ls) {
        kn = k - lambda * step;
        if (safe(fn, kn, vn) && std::abs(vn) < std::abs(val)) {
          improved = true;
          break;
        }
        lambda *= 0.5;
      }
      const double tiny = 1e-13 * std::max(1.0, std::abs(k));
      if (!improved) return std::abs(step) < 1e-7 * std::max(1.0, std::abs(k));
      k = kn;
      val = vn;
      if (std::abs(lambda * step) < tiny) return true;
    }
    return false;
  };

  Complex k = seed;
  int used = 0;
  if (!newton(deflated, k, max_iter, used)) return false;
  if (!deflate.empty()) {
    Complex polished = k;
    int extra = 0;
    if (newton([&](Complex z) { return g_of(f, z); }, polished, 10, extra) &&
        std::abs(polished - k) < 1e-4 * std::max(1.0, std::abs(k))) {
      k = polished;
    }
    used += extra;
  }
  out.k = k;
  out.iterations = used;
  try {
    out.residual = std::abs(f(k));
  } catch (const Error&) {
    return false;
  }
  return true;
}

namespace {

// Zeros just below the real axis or close to the origin fall between grid
// rows; these extra seeds cover that band when the count comes up short.
std::vector<Complex> near_axis_seeds(const grid::GridSpec& spec, double origin_radius) {
  std::vector<Complex> out;
  const Window& w = spec.window;
  for (double r : {2.0, 5.0, 20.0, 100.0}) {
    for (int j = 0; j < 8; ++j) {
      const Complex z = std::polar(r * origin_radius, kPi * (j + 0.5) / 4.0);
      if (w.contains(z)) out.push_back(z);
    }
  }
  const double y = w.k2min < 0.0 ? 0.5 * w.k2min : w.k2min + 0.5 * spec.dk2();
  for (int i = 0; i < spec.n1; ++i) {
    out.emplace_back(spec.k1(i) + 0.5 * spec.dk1(), y);
  }
  return out;
}

}  // namespace

RootResult find_zeros_fn(const ComplexFn& f, const Window& window, const RootOptions& opts) {
  RootResult result;
  const BoundaryInfo info = boundary_info(f, window, opts.winding_samples, opts.origin_radius, opts.jobs);
  result.winding = info.winding;

  auto [n1, n2] = default_resolution(window, opts.grid_spacing);
  if (opts.n1 > 0) n1 = even_at_least(opts.n1);
  if (opts.n2 > 0) n2 = opts.n2;

  std::vector<KZero> found;
  std::vector<Complex> roots;
  const auto accept = [&](const KZero& z) {
    if (!window.contains(z.k) || std::abs(z.k) < opts.origin_radius) return false;
    if (near_any(z.k, roots, opts.dedup_tol * std::max(1.0, std::abs(z.k)))) return false;
    if (std::abs(z.k * f(z.k)) > opts.residual_tol * info.scale) return false;
    found.push_back(z);
    roots.push_back(z.k);
    return true;
  };

  double cell = 0.0;
  for (int pass = 0; pass <= opts.max_refinements; ++pass) {
    const grid::GridSpec spec{window, n1, n2};
    cell = std::max(spec.dk1(), spec.dk2());
    const grid::GridValues vals = grid::evaluate_grid(f, spec, opts.jobs);
    const ContourSet contours = contour_from_values(vals);
    const std::vector<Complex> seeds = seeds_from(vals, contours);

    // Independent refinements first, in parallel.
    std::vector<KZero> trial(seeds.size());
    std::vector<unsigned char> ok(seeds.size(), 0);
    parallel::for_each_index(
        seeds.size(), [&](std::size_t s) { ok[s] = refine_zero(f, seeds[s], {}, trial[s], opts.max_newton); },
        opts.jobs);
    int failures = 0;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      if (ok[s]) accept(trial[s]);
      else ++failures;
    }
    // Short of the winding count: rerun every seed deflated by the roots known so far.
    if (static_cast<int>(found.size()) < result.winding) {
      std::vector<Complex> extra = seeds;
      for (const Complex& s : near_axis_seeds(spec, opts.origin_radius)) extra.push_back(s);
      for (const Complex& seed : extra) {
        if (static_cast<int>(found.size()) >= result.winding) break;
        KZero z;
        if (refine_zero(f, seed, roots, z, opts.max_newton)) accept(z);
      }
    }
    result.nonconverged = failures;
    if (static_cast<int>(found.size()) >= result.winding) break;
    if (pass < opts.max_refinements) {
      n1 = even_at_least(2 * n1);
      n2 = 2 * n2;
    }
  }

  result.located = static_cast<int>(found.size());
  result.complete = (result.located == result.winding);
  if (!result.complete) {
    std::ostringstream os;
    os << "completeness: winding number " << result.winding << " but " << result.located << " zeros located";
    result.warnings.push_back(os.str());
  }

  for (KZero z : found) {
    if (z.k.imag() < -opts.axis_tol) continue;
    if (std::abs(z.k.imag()) < opts.axis_tol) z.k = Complex(z.k.real(), 0.0);
    if (std::abs(z.k.real()) < opts.axis_tol) z.k = Complex(0.0, z.k.imag());
    const double margin = 2.0 * cell;
    if (z.k.real() - window.k1min < margin || window.k1max - z.k.real() < margin ||
        window.k2max - z.k.imag() < margin) {
      result.warnings.push_back("window boundary: zero at k = " + describe(z.k) + " lies within two grid cells of the edge");
    }
    result.zeros.push_back(z);
  }
  sort_zeros(result.zeros);
  return result;
}

RootResult find_zeros(const PotentialModel& model, const Window& window, const RootOptions& opts) {
  return find_zeros_fn([&model](Complex k) { return models::f_of_k(model, k); }, window, opts);
}

RootResult find_zeros(const PotentialModel& model, const RootOptions& opts) {
  return find_zeros(model, default_window(model), opts);
}

std::vector<EigenRecord> classify(const std::vector<KZero>& zeros, double axis_tol, std::vector<std::string>* warnings) {
  std::vector<EigenRecord> out;
  std::vector<bool> used(zeros.size(), false);
  const auto mate_of = [&](std::size_t i) -> long {
    const Complex target(-zeros[i].k.real(), zeros[i].k.imag());
    const double tol = 1e-5 * std::max(1.0, std::abs(target));
    long best = -1;
    double best_d = tol;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (j == i || used[j]) continue;
      const double d = std::abs(zeros[j].k - target);
      if (d < best_d) {
        best_d = d;
        best = static_cast<long>(j);
      }
    }
    return best;
  };

  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (used[i]) continue;
    const Complex k = zeros[i].k;
    used[i] = true;
    EigenRecord rec;
    const bool on_imag = std::abs(k.real()) < axis_tol;
    const bool on_real = std::abs(k.imag()) < axis_tol;
    if (on_imag && k.imag() > axis_tol) {
      rec.kind = EigenKind::RealBound;
      rec.zero = zeros[i];
      rec.energy = Complex(-k.imag() * k.imag(), 0.0);
      out.push_back(rec);
      continue;
    }
    if (on_imag) continue;  // |k| below axis_tol: not an eigenvalue
    const long mate = mate_of(i);
    if (mate >= 0) used[static_cast<std::size_t>(mate)] = true;
    const bool positive = k.real() > 0.0;
    const KZero& primary = (positive || mate < 0) ? zeros[i] : zeros[static_cast<std::size_t>(mate)];
    rec.zero = primary;
    if (mate >= 0) rec.partner = positive ? zeros[static_cast<std::size_t>(mate)] : zeros[i];
    if (on_real) {
      rec.kind = EigenKind::SS;
      const double k1 = std::abs(primary.k.real());
      rec.energy = Complex(k1 * k1, 0.0);
    } else {
      rec.kind = EigenKind::CCPE;
      const Complex e = primary.k * primary.k;
      rec.energy = Complex(e.real(), std::abs(e.imag()));
    }
    if (mate < 0 && warnings) {
      warnings->push_back(std::string("unpaired ") + std::string(to_string(rec.kind)) + " zero at k = " + describe(k));
    }
    out.push_back(rec);
  }
  sort_canonical(out);
  return out;
}

std::vector<EigenRecord> spectrum(const PotentialModel& model, const RootOptions& opts, RootResult* detail) {
  RootResult r = find_zeros(model, opts);
  std::vector<EigenRecord> recs = classify(r.zeros, opts.axis_tol, &r.warnings);
  if (detail) *detail = std::move(r);
  return recs;
}

}  // namespace ptspec::rootfind
