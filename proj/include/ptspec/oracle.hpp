#pragma once

#include <cstdint>
#include <vector>

#include "ptspec/models.hpp"
#include "ptspec/numerov.hpp"

namespace ptspec::oracle {

struct OracleOptions {
  int points = 20;
  std::uint64_t seed = 1;
  double step_tol = 1e-5;    ///< relative change of t when the step is halved
  double domain_tol = 1e-6;  ///< relative change of t when L is doubled
  numerov::SampleOptions sample;
};

struct OraclePoint {
  ModelKind kind = ModelKind::Scarf2;
  double v1 = 0.0;
  double v2 = 0.0;
  double a = 1.0;
  double k = 0.0;
  ScatterAmplitudes analytic;
  ScatterAmplitudes numeric;
  double error = 0.0;  ///< |analytic - numeric| / |analytic| over (t, r_L, r_R)
  double tolerance = 0.0;
  double step_change = 0.0;
  double domain_change = 0.0;
  double step_tol = 0.0;
  double domain_tol = 0.0;

  bool amplitudes_ok() const { return error < tolerance; }
  bool hygiene_ok() const { return step_change < step_tol && domain_change < domain_tol; }
};

/// 1e-3, or 1e-2 for the regularised delta pair.
double tolerance_for(ModelKind kind);

/// Analytic amplitudes against the integrator at one real k, plus the
/// step-halving and domain-doubling changes of the integrated t.
OraclePoint check_point(const PotentialModel& model, double k, const OracleOptions& opts = {});

/// `opts.points` random (V1, V2, k) draws over the table-covered range of
/// the family, seeded by `opts.seed`. Evaluated in parallel.
std::vector<OraclePoint> random_check(ModelKind kind, const OracleOptions& opts = {}, int jobs = 0);

}  // namespace ptspec::oracle
