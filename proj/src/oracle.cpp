#include "ptspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ptspec/parallel.hpp"

namespace ptspec::oracle {

namespace {

double norm3(const ScatterAmplitudes& x) {
  return std::sqrt(std::norm(x.t) + std::norm(x.r_left) + std::norm(x.r_right));
}

double diff3(const ScatterAmplitudes& x, const ScatterAmplitudes& y) {
  return std::sqrt(std::norm(x.t - y.t) + std::norm(x.r_left - y.r_left) + std::norm(x.r_right - y.r_right));
}

struct Range {
  double v1_lo, v1_hi, v2_lo, v2_hi, a, k_lo, k_hi;
};

Range range_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::Scarf2:
      return {-5.0, 5.0, 0.0, 20.0, 1.0, 0.3, 3.0};
    case ModelKind::DeltaPair:
      return {-5.0, 5.0, 0.0, 8.0, 1.0, 0.3, 4.0};
    case ModelKind::SquareWell:
      return {-5.0, 5.0, 0.0, 12.0, 2.0, 0.3, 4.0};
    case ModelKind::Exponential:
      return {-10.0, 5.0, 0.0, 20.0, 2.0, 0.3, 3.0};
    case ModelKind::Sampled:
      break;
  }
  throw DomainError("oracle: sampled potentials have no analytic amplitudes");
}

}  // namespace

double tolerance_for(ModelKind kind) { return kind == ModelKind::DeltaPair ? 1e-2 : 1e-3; }

OraclePoint check_point(const PotentialModel& model, double k, const OracleOptions& opts) {
  if (model.kind() == ModelKind::Sampled) throw DomainError("oracle: sampled potentials have no analytic amplitudes");
  if (!(k > 0.0)) throw DomainError("oracle: k must be > 0");
  OraclePoint p;
  p.kind = model.kind();
  p.v1 = model.v1();
  p.v2 = model.v2();
  p.a = model.a();
  p.k = k;
  p.tolerance = tolerance_for(model.kind());
  p.step_tol = opts.step_tol;
  p.domain_tol = opts.domain_tol;
  p.analytic = models::amplitudes(model, k);
  p.numeric = numerov::oracle_amplitudes(model, k, opts.sample);
  p.error = diff3(p.analytic, p.numeric) / norm3(p.analytic);

  numerov::SampleOptions half = opts.sample;
  half.step = 0.5 * opts.sample.step;
  const Complex t_half = numerov::oracle_amplitudes(model, k, half).t;
  p.step_change = std::abs(t_half - p.numeric.t) / std::abs(p.numeric.t);

  numerov::SampleOptions wide = opts.sample;
  const double l = opts.sample.half_width > 0.0 ? opts.sample.half_width : numerov::default_half_width(model);
  wide.half_width = 2.0 * l;
  const Complex t_wide = numerov::oracle_amplitudes(model, k, wide).t;
  p.domain_change = std::abs(t_wide - p.numeric.t) / std::abs(p.numeric.t);
  return p;
}

std::vector<OraclePoint> random_check(ModelKind kind, const OracleOptions& opts, int jobs) {
  if (opts.points < 0) throw DomainError("oracle: points must be >= 0");
  const Range r = range_for(kind);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Draw {
    double v1, v2, k;
  };
  std::vector<Draw> draws;
  for (int i = 0; i < opts.points; ++i) {
    const double v1 = r.v1_lo + (r.v1_hi - r.v1_lo) * u(rng);
    const double v2 = r.v2_lo + (r.v2_hi - r.v2_lo) * u(rng);
    const double k = r.k_lo + (r.k_hi - r.k_lo) * u(rng);
    draws.push_back({v1, v2, k});
  }
  std::vector<OraclePoint> out(draws.size());
  parallel::for_each_index(
      draws.size(),
      [&](std::size_t i) { out[i] = check_point(PotentialModel::make(kind, draws[i].v1, draws[i].v2, r.a), draws[i].k, opts); },
      jobs);
  return out;
}

}  // namespace ptspec::oracle
