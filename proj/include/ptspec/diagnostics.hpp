#pragma once

#include <string>
#include <vector>

#include "ptspec/models.hpp"

namespace ptspec::diagnostics {

struct ScatterFlags {
  bool near_ss = false;  ///< |t| above the divergence threshold
  bool invisible_left = false;
  bool invisible_right = false;
  bool invisible_both = false;
};

struct ScatterReport {
  double energy = 0.0;
  ScatterAmplitudes amplitudes;
  Complex det_s;  ///< t^2 - r_L r_R
  ScatterFlags flags;
  bool ok = true;     ///< false when evaluation failed; `error` says why
  std::string error;
};

struct ScanOptions {
  double divergence_threshold = 1e4;
  double invisibility_tol = 1e-6;  ///< on R_L and R_R
  double transparency_tol = 1e-6;  ///< on |T - 1| for the invisibility flags
  int jobs = 0;
};

/// Amplitudes and det S at one real energy E > 0.
ScatterReport scatter_report(const PotentialModel& model, double energy, const ScanOptions& opts = {});

/// Reports at n equally spaced energies in [e_min, e_max] (both ends
/// included). Failed evaluations are flagged and the scan continues.
std::vector<ScatterReport> det_s_scan(const PotentialModel& model, double e_min, double e_max, int n,
                                      const ScanOptions& opts = {});

struct LimitPoint {
  double delta = 0.0;
  double below = 0.0;  ///< |det S(E_star - delta)|
  double above = 0.0;  ///< |det S(E_star + delta)|
};

/// |det S| approaching E_star from both sides.
std::vector<LimitPoint> det_s_limit(const PotentialModel& model, double e_star,
                                    const std::vector<double>& deltas = {1e-3, 1e-4, 1e-5});

/// max |M11* - M22| over n energies in [e_min, e_max], with M22 = 1/t and
/// M11 = t - r_L r_R / t. Energies where t vanishes or evaluation fails are
/// skipped.
double m_identity_check(const PotentialModel& model, double e_min, double e_max, int n = 100);

/// T at k_star - delta and at -k_star + delta; both diverge at a self-dual
/// spectral singularity.
struct SelfDualCheck {
  double t_plus = 0.0;
  double t_minus = 0.0;
};
SelfDualCheck self_dual_check(const PotentialModel& model, double k_star, double delta = 1e-4);

enum class Direction { Left, Right, Both };
std::string_view to_string(Direction d);

struct InvisibilityPoint {
  double energy = 0.0;
  Direction direction = Direction::Both;
  double transmission = 0.0;
  double r_left = 0.0;  ///< R_L
  double r_right = 0.0; ///< R_R
};

/// Energies in [e_min, e_max] with T = 1 and a vanishing reflectance from at
/// least one side. Candidates come from sign changes of T - 1 (bisected to
/// 1e-10) and from local minima of |T - 1| (golden-section search). Throws
/// DomainError for the free model, which is transparent everywhere.
std::vector<InvisibilityPoint> invisibility_scan(const PotentialModel& model, double e_min, double e_max,
                                                 int n = 2000, double tol = 1e-6, int jobs = 0);

}  // namespace ptspec::diagnostics
