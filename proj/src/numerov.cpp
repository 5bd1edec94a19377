#include "ptspec/numerov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

namespace ptspec::numerov {

namespace {

constexpr Complex kI(0.0, 1.0);

struct Interval {
  double lo, hi, step;
};

// Evaluation point nudged into the open interval so one-sided limits are
// taken at jumps.
double nudge_inside(double x, double lo, double hi) {
  const double eps = 1e-12 * std::max(1.0, std::abs(x));
  if (x <= lo) return lo + eps;
  if (x >= hi) return hi - eps;
  return x;
}

Piece sample_piece(const PotentialModel& model, const Interval& iv) {
  const int steps = std::max(1, static_cast<int>(std::ceil((iv.hi - iv.lo) / iv.step - 1e-9)));
  const int nodes = 2 * steps + 1;
  Piece p;
  p.step = (iv.hi - iv.lo) / steps;
  p.x.resize(nodes);
  p.v.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double x = (i == nodes - 1) ? iv.hi : iv.lo + (iv.hi - iv.lo) * i / (nodes - 1);
    p.x[i] = x;
    p.v[i] = model.potential_at(nudge_inside(x, iv.lo, iv.hi));
  }
  return p;
}

struct NodeState {
  double x;
  Complex psi, dpsi, log_scale;
};

struct Coefficients {
  Complex a, b;
};

Coefficients plane_wave_fit(const NodeState& s, Complex k) {
  const Complex ik = kI * k;
  const Complex half_a = 0.5 * (s.psi + s.dpsi / ik);
  const Complex half_b = 0.5 * (s.psi - s.dpsi / ik);
  return {half_a * std::exp(s.log_scale - ik * s.x), half_b * std::exp(s.log_scale + ik * s.x)};
}

}  // namespace

Complex Piece::interpolate(double at) const {
  const std::size_t n = x.size();
  if (n == 1) return v[0];
  if (n < 4) {
    const std::size_t i = std::min<std::size_t>(
        n - 2, static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin()) - 1);
    const double w = (at - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - w) * v[i] + w * v[i + 1];
  }
  std::size_t i = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), at) - x.begin());
  i = (i == 0) ? 0 : i - 1;
  const std::size_t start = std::clamp<std::size_t>(i == 0 ? 0 : i - 1, 0, n - 4);
  Complex sum = 0.0;
  for (std::size_t j = start; j < start + 4; ++j) {
    if (at == x[j]) return v[j];
    double w = 1.0;
    for (std::size_t m = start; m < start + 4; ++m) {
      if (m != j) w *= (at - x[m]) / (x[j] - x[m]);
    }
    sum += w * v[j];
  }
  return sum;
}

double SampledPotential::half_width() const { return std::max(std::abs(x_min()), std::abs(x_max())); }

Complex SampledPotential::value_at(double at) const {
  if (pieces.empty() || at < x_min() || at > x_max()) return 0.0;
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    if (at >= it->x_begin() && at <= it->x_end()) return it->interpolate(at);
  }
  return 0.0;
}

SampledPotential SampledPotential::mirrored() const {
  SampledPotential out;
  out.pieces.reserve(pieces.size());
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    Piece p;
    p.step = it->step;
    p.x.assign(it->x.rbegin(), it->x.rend());
    for (double& x : p.x) x = -x;
    p.v.assign(it->v.rbegin(), it->v.rend());
    out.pieces.push_back(std::move(p));
  }
  return out;
}

SampledPotential SampledPotential::from_nodes(const std::vector<double>& x, const std::vector<Complex>& v,
                                              double step) {
  if (x.size() != v.size()) throw ConfigError("sampled potential: x and V lengths differ");
  if (x.size() < 2) throw ConfigError("sampled potential: need at least two nodes");
  if (!(step > 0.0)) throw ConfigError("sampled potential: step must be > 0");
  SampledPotential out;
  Piece current;
  current.step = step;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !is_finite(v[i])) throw ConfigError("sampled potential: non-finite entry");
    if (i > 0 && x[i] < x[i - 1]) throw ConfigError("sampled potential: x must be non-decreasing");
    if (i > 0 && x[i] == x[i - 1]) {
      if (current.x.size() < 2) throw ConfigError("sampled potential: jump with fewer than two nodes before it");
      out.pieces.push_back(std::move(current));
      current = Piece{};
      current.step = step;
    }
    current.x.push_back(x[i]);
    current.v.push_back(v[i]);
  }
  if (current.x.size() < 2) throw ConfigError("sampled potential: trailing piece has fewer than two nodes");
  out.pieces.push_back(std::move(current));
  return out;
}

double default_half_width(const PotentialModel& model) {
  switch (model.kind()) {
    case ModelKind::Scarf2: return 25.0;
    case ModelKind::Exponential: return std::max(25.0, 12.5 * model.a());
    case ModelKind::DeltaPair:
    case ModelKind::SquareWell: return model.a() + 10.0;
    case ModelKind::Sampled: return model.sampled_potential()->half_width();
  }
  return 25.0;
}

SampledPotential sample(const PotentialModel& model, const SampleOptions& opts) {
  if (model.kind() == ModelKind::Sampled) return *model.sampled_potential();
  if (!(opts.step > 0.0)) throw DomainError("sample: step must be > 0");
  const double half = opts.half_width > 0.0 ? opts.half_width : default_half_width(model);

  if (model.kind() == ModelKind::DeltaPair) {
    // Each spike gets its own finely stepped piece.
    const double sigma = opts.delta_width > 0.0 ? opts.delta_width : model.delta_width();
    const double reach = 12.0 * sigma;
    const double fine_step = std::min(opts.step, sigma / 20.0);
    const Interval fine[2] = {{-model.a() - reach, -model.a() + reach, fine_step},
                              {model.a() - reach, model.a() + reach, fine_step}};
    SampledPotential out;
    std::vector<double> cuts{-half};
    for (const auto& f : fine) {
      cuts.push_back(f.lo);
      cuts.push_back(f.hi);
    }
    cuts.push_back(half);
    const double v1 = model.v1();
    const double v2 = model.v2();
    const double a = model.a();
    const auto g = [sigma](double u) {
      return std::exp(-u * u / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const bool is_fine = (i % 2 == 1);
      const Interval iv{cuts[i], cuts[i + 1], is_fine ? fine_step : opts.step};
      const int steps = std::max(1, static_cast<int>(std::ceil((iv.hi - iv.lo) / iv.step - 1e-9)));
      Piece p;
      p.step = (iv.hi - iv.lo) / steps;
      for (int j = 0; j <= 2 * steps; ++j) {
        const double x = (j == 2 * steps) ? iv.hi : iv.lo + (iv.hi - iv.lo) * j / (2 * steps);
        p.x.push_back(x);
        p.v.push_back(Complex(v1, -v2) * g(x + a) + Complex(v1, v2) * g(x - a));
      }
      out.pieces.push_back(std::move(p));
    }
    return out;
  }

  std::vector<double> cuts{-half, half};
  for (double b : model.breakpoints()) {
    if (b > -half && b < half) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  SampledPotential out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    out.pieces.push_back(sample_piece(model, {cuts[i], cuts[i + 1], opts.step}));
  }
  return out;
}

SampledPotential load_csv(const std::string& path, double step) {
  std::ifstream in(path);
  if (!in) throw ConfigError("potential-csv: cannot open '" + path + "'");
  std::vector<double> xs;
  std::vector<Complex> vs;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double x = 0.0, re = 0.0, im = 0.0;
    if (!(row >> x >> re >> im)) {
      if (xs.empty()) continue;  // header
      throw ConfigError("potential-csv: malformed row at line " + std::to_string(line_no));
    }
    xs.push_back(x);
    vs.emplace_back(re, im);
  }
  return SampledPotential::from_nodes(xs, vs, step);
}

WaveSolution integrate_wave(const SampledPotential& potential, Complex k, const IntegrateOptions& opts) {
  if (k == Complex(0.0)) throw DomainError("numerov: k must be nonzero");
  if (potential.pieces.empty()) throw DomainError("numerov: empty potential");
  if (!(opts.step_scale > 0.0)) throw DomainError("numerov: step_scale must be > 0");
  const double edge = std::max(std::abs(potential.pieces.front().v.front()),
                               std::abs(potential.pieces.back().v.back()));
  if (edge > opts.decay_tol) throw DecayError("numerov: |V| at the truncation edge exceeds the decay tolerance");

  const Complex k2 = k * k;
  const double step_cap = 0.02 * 2.0 * kPi / std::abs(k);

  Complex psi = 1.0;
  Complex dpsi = kI * k;
  Complex log_scale = kI * k * potential.x_max();
  int since_renorm = 0;
  std::deque<NodeState> tail;
  const auto record = [&](double x) {
    tail.push_back({x, psi, dpsi, log_scale});
    if (tail.size() > 10) tail.pop_front();
  };
  record(potential.x_max());

  for (auto it = potential.pieces.rbegin(); it != potential.pieces.rend(); ++it) {
    const Piece& piece = *it;
    const double len = piece.x_end() - piece.x_begin();
    if (len <= 0.0) continue;
    const double target = std::min(piece.step * opts.step_scale, step_cap);
    const int n = std::max(1, static_cast<int>(std::ceil(len / target - 1e-9)));
    const double h = len / n;
    Complex v_hi = piece.interpolate(piece.x_end());
    for (int i = 0; i < n; ++i) {
      const double x_hi = piece.x_end() - h * i;
      const double x_lo = (i == n - 1) ? piece.x_begin() : piece.x_end() - h * (i + 1);
      const Complex v_mid = piece.interpolate(0.5 * (x_hi + x_lo));
      const Complex v_lo = piece.interpolate(x_lo);
      const double dx = x_lo - x_hi;
      // psi'' = (V - k^2) psi
      const Complex k1p = dpsi;
      const Complex k1d = (v_hi - k2) * psi;
      const Complex k2p = dpsi + 0.5 * dx * k1d;
      const Complex k2d = (v_mid - k2) * (psi + 0.5 * dx * k1p);
      const Complex k3p = dpsi + 0.5 * dx * k2d;
      const Complex k3d = (v_mid - k2) * (psi + 0.5 * dx * k2p);
      const Complex k4p = dpsi + dx * k3d;
      const Complex k4d = (v_lo - k2) * (psi + dx * k3p);
      psi += dx / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      dpsi += dx / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
      v_hi = v_lo;

      if (++since_renorm >= opts.renormalize_every) {
        const double s = std::abs(psi) + std::abs(dpsi) / std::abs(k);
        if (!(s > 0.0) || !std::isfinite(s)) throw OverflowError("numerov: solution lost during integration");
        psi /= s;
        dpsi /= s;
        log_scale += std::log(s);
        since_renorm = 0;
      }
      record(x_lo);
    }
  }
  if (!is_finite(psi) || !is_finite(dpsi)) throw OverflowError("numerov: solution overflowed");

  const Coefficients end = plane_wave_fit(tail.back(), k);
  if (!is_finite(end.a) || !is_finite(end.b)) throw OverflowError("numerov: asymptotic coefficients overflow");
  double spread = 0.0;
  for (const NodeState& s : tail) {
    const Coefficients c = plane_wave_fit(s, k);
    spread = std::max(spread, std::abs(c.a - end.a) + std::abs(c.b - end.b));
  }
  const double scale = std::abs(end.a) + std::abs(end.b);
  return {end.a, end.b, 1.0, scale > 0.0 ? spread / scale : 0.0};
}

NumericScatter integrate_scattering(const SampledPotential& potential, Complex k, const IntegrateOptions& opts) {
  NumericScatter out;
  out.left = integrate_wave(potential, k, opts);
  out.right = integrate_wave(potential.mirrored(), k, opts);
  if (out.left.a == Complex(0.0) || out.right.a == Complex(0.0)) {
    throw PoleError("numerov: t(k) diverges");
  }
  out.amplitudes.t = 1.0 / out.left.a;
  out.amplitudes.r_left = out.left.b / out.left.a;
  out.amplitudes.r_right = out.right.b / out.right.a;
  return out;
}

ScatterAmplitudes oracle_amplitudes(const PotentialModel& model, Complex k, const SampleOptions& sample_opts,
                                    const IntegrateOptions& opts) {
  if (model.kind() != ModelKind::DeltaPair) {
    return integrate_scattering(sample(model, sample_opts), k, opts).amplitudes;
  }
  SampleOptions wide = sample_opts;
  if (!(wide.delta_width > 0.0)) wide.delta_width = model.delta_width();
  SampleOptions narrow = wide;
  narrow.delta_width = 0.5 * wide.delta_width;
  const ScatterAmplitudes w = integrate_scattering(sample(model, wide), k, opts).amplitudes;
  const ScatterAmplitudes n = integrate_scattering(sample(model, narrow), k, opts).amplitudes;
  return {2.0 * n.r_left - w.r_left, 2.0 * n.r_right - w.r_right, 2.0 * n.t - w.t};
}

Complex f_of_k_numeric(const SampledPotential& potential, Complex k, const IntegrateOptions& opts) {
  return integrate_wave(potential, k, opts).a;
}

}  // namespace ptspec::numerov
