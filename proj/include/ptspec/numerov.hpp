#pragma once

#include <string>
#include <vector>

#include "ptspec/models.hpp"
#include "ptspec/types.hpp"

namespace ptspec::numerov {

/// One smooth stretch of a sampled potential. Nodes are sorted; the potential
/// may jump only between pieces. `step` is the integration step used inside.
struct Piece {
  std::vector<double> x;
  std::vector<Complex> v;
  double step = 0.005;

  double x_begin() const { return x.front(); }
  double x_end() const { return x.back(); }
  /// Cubic (4-point Lagrange) interpolation restricted to this piece.
  Complex interpolate(double at) const;
};

/// A complex potential tabulated on [-L, L] as consecutive pieces.
struct SampledPotential {
  std::vector<Piece> pieces;

  double x_min() const { return pieces.front().x_begin(); }
  double x_max() const { return pieces.back().x_end(); }
  double half_width() const;
  /// V(x); zero outside the tabulated range. At a jump the right piece wins.
  Complex value_at(double x) const;
  /// The spatial mirror image V(-x).
  SampledPotential mirrored() const;

  /// Builds pieces from raw nodes. A repeated x value marks a jump.
  static SampledPotential from_nodes(const std::vector<double>& x, const std::vector<Complex>& v,
                                     double step = 0.005);
};

struct SampleOptions {
  double half_width = 0.0;   ///< 0 selects the model default
  double step = 0.005;       ///< integration step, Angstrom
  double delta_width = 0.0;  ///< Gaussian width for the delta pair; 0 selects a/200
};

/// Default truncation half-width: 25 for sech and exponential tails
/// (12.5 a for wide exponentials), a + 10 for compact models.
double default_half_width(const PotentialModel& model);

/// Tabulates an analytic model. Jumps fall on piece boundaries and the delta
/// spikes get their own finely stepped pieces.
SampledPotential sample(const PotentialModel& model, const SampleOptions& opts = {});

/// Reads x, reV, imV rows (header optional, '#' comments ignored).
SampledPotential load_csv(const std::string& path, double step = 0.005);

struct IntegrateOptions {
  double step_scale = 1.0;      ///< multiplies every piece step
  double decay_tol = 1e-6;      ///< max |V| allowed at both ends, eV
  int renormalize_every = 500;  ///< steps between rescalings of the solution
};

/// Asymptotic coefficients normalised to C = 1: psi ~ A e^{ikx} + B e^{-ikx}
/// on the left and psi ~ e^{ikx} on the right.
struct WaveSolution {
  Complex a;
  Complex b;
  Complex c = 1.0;
  /// Spread of the plane-wave fit over the last 10 nodes, relative to |A| + |B|.
  double residual = 0.0;
};

struct NumericScatter {
  ScatterAmplitudes amplitudes;
  WaveSolution left;
  WaveSolution right;
};

/// Left-incidence solution at complex k. Fourth-order Runge-Kutta from +L
/// leftward with outgoing seed e^{ikx}, renormalised on the way.
WaveSolution integrate_wave(const SampledPotential& potential, Complex k, const IntegrateOptions& opts = {});

/// r_L, r_R and t; r_R comes from the mirrored potential.
NumericScatter integrate_scattering(const SampledPotential& potential, Complex k,
                                    const IntegrateOptions& opts = {});

/// Amplitudes of an analytic model from sampling plus integration. The delta
/// pair is integrated at Gaussian widths sigma and sigma/2 and extrapolated
/// linearly to sigma -> 0.
ScatterAmplitudes oracle_amplitudes(const PotentialModel& model, Complex k, const SampleOptions& sample_opts = {},
                                    const IntegrateOptions& opts = {});

/// F(k) = A/C = 1/t(k).
Complex f_of_k_numeric(const SampledPotential& potential, Complex k, const IntegrateOptions& opts = {});

}  // namespace ptspec::numerov
