#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptspec/grid.hpp"
#include "ptspec/models.hpp"
#include "ptspec/spectrum.hpp"

namespace ptspec::rootfind {

using grid::Window;

/// k1 in [-K, K], k2 in [-0.01, K]. The bottom edge sits just below the real
/// axis so spectral singularities are enclosed rather than on the contour.
Window default_window(const PotentialModel& model);
/// Node counts for the window at the given spacing (inverse Angstrom), capped
/// at 200 x 100; n1 is even so the imaginary axis falls between nodes.
std::pair<int, int> default_resolution(const Window& window, double spacing = 0.1);

struct Polyline {
  std::vector<Complex> points;
};

struct ContourSet {
  grid::GridSpec spec;
  std::vector<Polyline> re_zero;
  std::vector<Polyline> im_zero;
  /// Cells where Re F and Im F both change sign (candidate intersections).
  std::vector<std::pair<int, int>> crossing_cells;
  /// Cells skipped because a corner failed to evaluate.
  std::vector<std::pair<int, int>> skipped_cells;
};

/// Marching-squares zero curves of Re F and Im F on an n1 x n2 grid.
ContourSet contour_grid(const PotentialModel& model, const Window& window, int n1, int n2, int jobs = 0);
ContourSet contour_from_values(const grid::GridValues& values);

struct RootOptions {
  double axis_tol = 1e-6;     ///< on-axis decision, inverse Angstrom
  double dedup_tol = 1e-6;    ///< roots closer than this are the same root
  double residual_tol = 1e-9; ///< relative to the median |kF| on the boundary
  double origin_radius = 1e-3;
  double grid_spacing = 0.1;  ///< seed grid spacing when n1/n2 are 0
  int n1 = 0;                 ///< 0 selects default_resolution
  int n2 = 0;
  int max_newton = 60;
  int winding_samples = 2400;
  int max_refinements = 2;    ///< grid doublings when the count is short
  int jobs = 0;
};

struct RootResult {
  std::vector<KZero> zeros;  ///< canonical order, Im k >= 0 after snapping
  int winding = 0;           ///< zeros of kF inside the window, origin excluded
  int located = 0;           ///< zeros found inside the window before filtering
  bool complete = false;     ///< located == winding
  int nonconverged = 0;
  std::vector<std::string> warnings;
};

/// Zeros of F in the window: seeds from contour crossings and |F| minima,
/// damped Newton with deflation, completeness checked against the winding
/// number.
RootResult find_zeros(const PotentialModel& model, const Window& window, const RootOptions& opts = {});
RootResult find_zeros(const PotentialModel& model, const RootOptions& opts = {});

/// Zeros of an arbitrary function with the same contract as F(k).
RootResult find_zeros_fn(const grid::ComplexFn& f, const Window& window, const RootOptions& opts = {});

/// Number of zeros of k F(k) enclosed by the window boundary, minus those
/// within `origin_radius` of k = 0. Phase steps are subdivided until each is
/// below pi/4.
int winding_count(const grid::ComplexFn& f, const Window& window, int samples = 2400, double origin_radius = 1e-3);

/// Damped Newton on k F(k) from `seed`, with optional deflation roots.
/// Returns false when it fails to converge.
bool refine_zero(const grid::ComplexFn& f, Complex seed, const std::vector<Complex>& deflate, KZero& out,
                 int max_iter = 60);

/// Groups zeros into eigenvalue records. Unpaired CCPE candidates are kept
/// and reported through `warnings` when given.
std::vector<EigenRecord> classify(const std::vector<KZero>& zeros, double axis_tol = 1e-6,
                                  std::vector<std::string>* warnings = nullptr);

/// find_zeros followed by classify.
std::vector<EigenRecord> spectrum(const PotentialModel& model, const RootOptions& opts = {},
                                  RootResult* detail = nullptr);

}  // namespace ptspec::rootfind
