#pragma once

#include <memory>
#include <string_view>
#include <vector>

#include "ptspec/spectrum.hpp"
#include "ptspec/types.hpp"

namespace ptspec {

namespace numerov {
struct SampledPotential;
}

enum class ModelKind { Scarf2, DeltaPair, SquareWell, Exponential, Sampled };

std::string_view to_string(ModelKind kind);
/// Accepts the CLI spellings: scarf2, delta, sqwell, exp, sampled.
ModelKind parse_model_kind(std::string_view name);

/// A PT-symmetric potential V(x) = V1 f_even(x) + i V2 f_odd(x) from one of
/// the solvable families, or a sampled potential handled by the numerical
/// integrator. Units: eV and Angstrom with 2 mu / hbar^2 = 1, so E = k^2.
///
///   Scarf2       V1 sech^2 x + i V2 sech x tanh x            (width fixed at 1)
///   DeltaPair    (V1 - i V2) delta(x + a) + (V1 + i V2) delta(x - a)
///   SquareWell   V1 + i V2 sgn(x) for |x| < a, zero outside
///   Exponential  (V1 + i V2 sgn(x)) exp(-2|x|/a)
///
/// A negative V2 is the mirror image of |V2|: formulas run with |V2| and the
/// left/right reflection amplitudes are exchanged.
class PotentialModel {
 public:
  static PotentialModel scarf2(double v1, double v2);
  static PotentialModel delta_pair(double v1, double v2, double a);
  static PotentialModel square_well(double v1, double v2, double a);
  static PotentialModel exponential(double v1, double v2, double a);
  static PotentialModel sampled(std::shared_ptr<const numerov::SampledPotential> potential);
  /// Analytic family by kind; `a` is ignored for Scarf2.
  static PotentialModel make(ModelKind kind, double v1, double v2, double a);

  ModelKind kind() const { return kind_; }
  double v1() const { return v1_; }
  double v2() const { return v2_; }
  double abs_v2() const { return v2_ < 0.0 ? -v2_ : v2_; }
  double a() const { return a_; }
  bool mirrored() const { return v2_ < 0.0; }
  bool is_free() const { return kind_ != ModelKind::Sampled && v1_ == 0.0 && v2_ == 0.0; }
  const numerov::SampledPotential* sampled_potential() const { return sampled_.get(); }

  /// Pointwise V(x). The delta pair is returned in its regularised form: each
  /// delta becomes a normalised Gaussian of width delta_width().
  Complex potential_at(double x) const;
  /// x positions where V(x) jumps (square well, exponential).
  std::vector<double> breakpoints() const;
  double delta_width() const { return a_ / 200.0; }

  /// The same family with a different V2.
  PotentialModel with_v2(double v2) const;

 private:
  PotentialModel(ModelKind kind, double v1, double v2, double a);

  ModelKind kind_;
  double v1_;
  double v2_;
  double a_;
  std::shared_ptr<const numerov::SampledPotential> sampled_;
};

struct ScatterAmplitudes {
  Complex r_left;
  Complex r_right;
  Complex t;

  double transmission() const { return std::norm(t); }
  double reflection_left() const { return std::norm(r_left); }
  double reflection_right() const { return std::norm(r_right); }
};

namespace models {

/// F(k) = M22(k) = 1/t(k), analytically continued to complex k != 0.
/// Throws PoleError when t(k) = 0 and EvalError when evaluation fails.
Complex f_of_k(const PotentialModel& model, Complex k);

/// Scattering amplitudes for real k > 0.
ScatterAmplitudes amplitudes(const PotentialModel& model, double k);

/// Amplitudes continued to any complex k != 0 (real k < 0 included).
/// Analytic families only.
ScatterAmplitudes amplitudes_continued(const PotentialModel& model, Complex k);

/// Closed-form Scarf II spectrum: real levels in the unbroken phase and
/// complex-conjugate pairs in the broken phase, plus the spectral singularity
/// when the Scarf parameter p - 1/2 is an integer.
std::vector<EigenRecord> scarf2_closed_spectrum(double v1, double v2);

/// m-th critical strength of Scarf II: V_star = V1 + 4m^2 + 4m + 3/4 and
/// E_star = (V_star + V1 - 1/4) / 4. Throws DomainError unless both are > 0.
CriticalPoint scarf2_critical(double v1, int m);

/// m-th critical strength of the delta pair, from
///   2 V1 + u/a cot(u) = 0,  u = a sqrt(2 (V2^2 - V1^2)),  E_star = u^2 / (4 a^2).
/// Throws NoRootError if the m-th bracket cannot be formed.
CriticalPoint delta_ss(double v1, double a, int m);

/// Real negative eigenvalues of the exponential well, ascending.
std::vector<double> exp_bound_states(double v1, double v2, double a);

namespace detail {

/// Scarf II parameters A = p - 1/2 + i q, B = q + i p.
struct ScarfParams {
  Complex p, q, a, b;
};
ScarfParams scarf_params(double v1, double abs_v2);

/// Square-well amplitudes written with explicit p and q exactly as the
/// textbook matching produces them, used to check branch independence.
ScatterAmplitudes square_well_literal(double v1, double v2, double a, Complex k, Complex p, Complex q);

/// Exponential-model F(k) assembled from bessel_j and gamma exactly in the
/// Jost form (pq/4)^{is} Gamma(1-is)^2 D / (2is), an independent route to
/// the regularised evaluation used by f_of_k.
Complex exponential_f_literal(double v1, double v2, double a, Complex k);

/// The real function whose zeros in kappa are the exponential-model bound
/// states (2 kappa a F(i kappa) up to a positive factor).
double exp_bound_state_function(double v1, double v2, double a, double kappa);

}  // namespace detail
}  // namespace models
}  // namespace ptspec
