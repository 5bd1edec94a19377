#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptspec/models.hpp"
#include "ptspec/rootfind.hpp"
#include "ptspec/spectrum.hpp"

namespace ptspec::sweep {

struct SweepOptions {
  rootfind::RootOptions roots;
  /// Window shared by every sample; unset uses the default window at the
  /// largest V2 of the sweep.
  std::optional<rootfind::Window> window;
  /// Minimum step as a fraction of the initial step when linking needs
  /// intermediate samples.
  double min_step_fraction = 1.0 / 64.0;
  bool strict_linking = false;  ///< throw LinkingError instead of warning
  int jobs = 0;
};

struct SweepSample {
  double v2 = 0.0;
  std::vector<EigenRecord> spectrum;
  bool complete = true;
};

struct TrajectoryPoint {
  double v2;
  Complex energy;
  EigenKind kind;
};

struct Trajectory {
  int id = 0;
  std::vector<TrajectoryPoint> points;
};

struct ExceptionalPoint {
  double v_ep = 0.0;
  Complex e_coalesce;
};

struct SweepResult {
  std::optional<PotentialModel> base;
  SweepOptions options;
  std::vector<SweepSample> samples;  ///< ascending V2
  std::vector<Trajectory> trajectories;
  std::vector<ExceptionalPoint> exceptional_points;
  std::vector<CriticalPoint> criticals;
  std::vector<std::string> warnings;
};

/// Spectrum of base.with_v2(v2) inside the given window.
std::vector<EigenRecord> spectrum_at(const PotentialModel& base, double v2, const rootfind::Window& window,
                                     const rootfind::RootOptions& opts, bool* complete = nullptr);

/// Spectra on V2 in [v2_min, v2_max] with step v2_step (0 selects range/400),
/// linked into trajectories by nearest neighbour in E with velocity
/// extrapolation. Intermediate samples are inserted where a link jumps.
SweepResult trace_eigenvalues(const PotentialModel& base, double v2_min, double v2_max, double v2_step = 0.0,
                              const SweepOptions& opts = {});

/// Points where the number of real eigenvalues drops by two, bisected on V2
/// to `tol`. Needs the base model stored in the result.
std::vector<ExceptionalPoint> find_exceptional_points(const SweepResult& result, double tol = 5e-3);

/// Solves F(k1; V2) = 0 for real k1 and V2 by two-dimensional Newton from
/// the guess. Throws ConvergenceError on failure. The returned m is the
/// number of CCPEs present at V_star.
CriticalPoint refine_critical(const PotentialModel& base, double v2_guess, double k1_guess,
                              const SweepOptions& opts = {});

/// Criticals from the samples of a sweep: a new CCPE that is not explained
/// by an exceptional point is followed back to the real axis.
std::vector<CriticalPoint> criticals_from(const SweepResult& result);

/// Criticals inside [v2_lo, v2_hi] with m <= m_max. `v2_step` = 0 selects
/// range/200.
std::vector<CriticalPoint> find_critical_ss(const PotentialModel& base, double v2_lo, double v2_hi, int m_max,
                                            double v2_step = 0.0, const SweepOptions& opts = {});

/// Trace, exceptional points and criticals in one pass.
SweepResult run_sweep(const PotentialModel& base, double v2_min, double v2_max, double v2_step = 0.0,
                      const SweepOptions& opts = {});

struct SplitResult {
  double v_star = 0.0;  ///< refined critical strength
  double e_star = 0.0;
  double epsilon = 0.1;
  std::vector<EigenRecord> before, at, after;
  std::optional<EigenRecord> new_ccpe;  ///< the CCPE born from the singularity
  bool passed = false;
  std::vector<std::string> failures;
};

/// Spectra at V_star - eps, V_star and V_star + eps, with V_star refined
/// near `v_star`. Checks that the SS exists only at V_star, that one CCPE is
/// gained across the crossing and that it sits within 2% of E_star with
/// |Im E| < 0.2.
SplitResult split_ss(const PotentialModel& base, double v_star, double epsilon = 0.1, const SweepOptions& opts = {});

}  // namespace ptspec::sweep
