#include "ptspec/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ptspec/numerov.hpp"
#include "ptspec/specfun.hpp"

namespace ptspec {

namespace {

constexpr Complex kI(0.0, 1.0);

void require_finite_param(double v, const char* name) {
  if (!std::isfinite(v)) throw DomainError(std::string("model parameter ") + name + " is not finite");
}

// sin(z)/z, continued through z = 0.
Complex sinc(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

// ---------------------------------------------------------------- Scarf II

struct ScarfLogTerms {
  Complex log_f;
  bool f_is_zero = false;
};

// F(k) = Gamma(-ik) Gamma(1-ik) Gamma(1/2-ik)^2
//        / [Gamma(-A-ik) Gamma(1+A-ik) Gamma(1/2+iB-ik) Gamma(1/2-iB-ik)]
ScarfLogTerms scarf_log_f(const models::detail::ScarfParams& sp, Complex k) {
  const Complex ik = kI * k;
  ScarfLogTerms out;
  const Complex numerator_args[4] = {-sp.a - ik, 1.0 + sp.a - ik, 0.5 + kI * sp.b - ik, 0.5 - kI * sp.b - ik};
  Complex log_t_numerator = 0.0;
  for (const Complex& arg : numerator_args) {
    try {
      log_t_numerator += specfun::ln_gamma(arg);
    } catch (const PoleError&) {
      out.f_is_zero = true;
    }
  }
  const Complex log_t_denominator = specfun::ln_gamma(-ik) + specfun::ln_gamma(1.0 - ik) +
                                    2.0 * specfun::ln_gamma(0.5 - ik);
  out.log_f = log_t_denominator - log_t_numerator;
  return out;
}

Complex scarf_f(const PotentialModel& m, Complex k) {
  const auto sp = models::detail::scarf_params(m.v1(), m.abs_v2());
  const ScarfLogTerms terms = scarf_log_f(sp, k);
  if (terms.f_is_zero) return 0.0;
  return std::exp(terms.log_f);
}

// r/t for left incidence; the right-incidence ratio flips the sign of B.
// The two terms nearly cancel for large |B|, so they are formed in long
// double.
Complex scarf_reflection_ratio(const models::detail::ScarfParams& sp, Complex b, Complex k) {
  using LC = std::complex<long double>;
  const long double pi = 3.141592653589793238462643383279502884L;
  const LC la(sp.a.real(), sp.a.imag()), lb(b.real(), b.imag()), lk(k.real(), k.imag());
  const LC i(0.0L, 1.0L);
  const LC r = i * (std::sin(pi * la) * std::cosh(pi * lb) / std::sinh(pi * lk) -
                    i * std::cos(pi * la) * std::sinh(pi * lb) / std::cosh(pi * lk));
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

ScatterAmplitudes scarf_amplitudes(const PotentialModel& m, Complex k) {
  const auto sp = models::detail::scarf_params(m.v1(), m.abs_v2());
  const ScarfLogTerms terms = scarf_log_f(sp, k);
  if (terms.f_is_zero) throw PoleError("scarf2: t(k) diverges (F(k) = 0)");
  const Complex t = std::exp(-terms.log_f);
  return {t * scarf_reflection_ratio(sp, sp.b, k), t * scarf_reflection_ratio(sp, -sp.b, k), t};
}

// -------------------------------------------------------------- delta pair

Complex delta_denominator(double v1, double v2, double a, Complex k) {
  const Complex c = std::cos(2.0 * k * a);
  const Complex s = std::sin(2.0 * k * a);
  return 2.0 * k * k * c + 2.0 * k * v1 * s + kI * (2.0 * k * v1 * c + (v1 * v1 + v2 * v2 - 2.0 * k * k) * s);
}

Complex delta_f(const PotentialModel& m, Complex k) {
  const double a = m.a();
  return delta_denominator(m.v1(), m.abs_v2(), a, k) / (2.0 * k * k * std::exp(-2.0 * kI * k * a));
}

// Reflection amplitude with the imaginary strength entering as `w`. For the
// potential (V1 - iV2) delta(x+a) + (V1 + iV2) delta(x-a) left incidence is
// w = -V2 and right incidence is w = +V2.
Complex delta_reflection(double v1, double abs_v2, double w, double a, Complex k, Complex den) {
  const Complex c = std::cos(2.0 * k * a);
  const Complex s = std::sin(2.0 * k * a);
  const Complex num = (2.0 * k * w + v1 * v1 + abs_v2 * abs_v2) * s + 2.0 * k * v1 * c;
  return -kI * std::exp(-2.0 * kI * k * a) * num / den;
}

ScatterAmplitudes delta_amplitudes(const PotentialModel& m, Complex k) {
  const double v1 = m.v1();
  const double v2 = m.abs_v2();
  const double a = m.a();
  const Complex den = delta_denominator(v1, v2, a, k);
  if (den == Complex(0.0)) throw PoleError("delta pair: t(k) diverges");
  const Complex t = 2.0 * k * k * std::exp(-2.0 * kI * k * a) / den;
  return {delta_reflection(v1, v2, -v2, a, k, den), delta_reflection(v1, v2, v2, a, k, den), t};
}

// ------------------------------------------------------------- square well
//
// Both numerator and denominator of the matched amplitudes are odd in p and
// in q, so dividing through by pq leaves functions of p^2 and q^2 only:
// cos(pa) and sin(pa)/p.

struct WellTrig {
  Complex cp, cq, sp, sq;  // cos(pa), cos(qa), sin(pa)/p, sin(qa)/q
  Complex p2, q2;
};

WellTrig well_trig(Complex p2, Complex q2, double a) {
  const Complex p = std::sqrt(p2);
  const Complex q = std::sqrt(q2);
  return {std::cos(p * a), std::cos(q * a), a * sinc(p * a), a * sinc(q * a), p2, q2};
}

Complex well_denominator(const WellTrig& w, Complex k) {
  return 2.0 * kI * k * w.cp * w.cq + (k * k + w.q2) * w.cp * w.sq + (k * k + w.p2) * w.sp * w.cq -
         kI * k * (w.p2 + w.q2) * w.sp * w.sq;
}

Complex well_reflection_numerator(const WellTrig& w, Complex k) {
  return (k * k - w.p2) * w.sp * w.cq + (k * k - w.q2) * w.cp * w.sq + kI * k * (w.p2 - w.q2) * w.sp * w.sq;
}

WellTrig well_for(const PotentialModel& m, Complex k) {
  const Complex e = k * k;
  const double v2 = m.abs_v2();
  // p on the x < 0 side where V = V1 - i V2.
  return well_trig(e - m.v1() + kI * v2, e - m.v1() - kI * v2, m.a());
}

Complex well_f(const PotentialModel& m, Complex k) {
  const WellTrig w = well_for(m, k);
  return well_denominator(w, k) / (2.0 * kI * k * std::exp(-2.0 * kI * k * m.a()));
}

ScatterAmplitudes well_amplitudes(const PotentialModel& m, Complex k) {
  const WellTrig w = well_for(m, k);
  const Complex den = well_denominator(w, k);
  if (den == Complex(0.0)) throw PoleError("square well: t(k) diverges");
  const Complex phase = std::exp(-2.0 * kI * k * m.a());
  const WellTrig swapped{w.cq, w.cp, w.sq, w.sp, w.q2, w.p2};
  return {well_reflection_numerator(w, k) * phase / den, well_reflection_numerator(swapped, k) * phase / den,
          2.0 * kI * k * phase / den};
}

// ------------------------------------------------------------- exponential
//
// With H_nu(z) = Gamma(nu+1) (z/2)^-nu J_nu(z) and nu = -is, s = ka:
//   F(k)   = H(p) H(q) - [q H(p) H'(q) + p H(q) H'(p)] / (2is)
//   r_L(k) = [q H+(p) H'(q) + p H(q) H+'(p)] / (2is F(k)),   H+ = H_{+is}
// Every factor depends on p^2 and q^2 only, so no branch choice enters.

struct ExpArgs {
  Complex p, q, s;
};

ExpArgs exp_args(double v1, double abs_v2, double a, Complex k) {
  return {a * std::sqrt(Complex(-v1, abs_v2)), a * std::sqrt(Complex(-v1, -abs_v2)), k * a};
}

Complex exp_f_from(const ExpArgs& x) {
  const Complex nu = -kI * x.s;
  const auto hp = specfun::bessel_j_scaled(nu, x.p);
  const auto hq = specfun::bessel_j_scaled(nu, x.q);
  return hp.j * hq.j - (x.q * hp.j * hq.jprime + x.p * hq.j * hp.jprime) / (2.0 * kI * x.s);
}

Complex exp_f(const PotentialModel& m, Complex k) {
  return exp_f_from(exp_args(m.v1(), m.abs_v2(), m.a(), k));
}

ScatterAmplitudes exp_amplitudes(const PotentialModel& m, Complex k) {
  const ExpArgs x = exp_args(m.v1(), m.abs_v2(), m.a(), k);
  const Complex f = exp_f_from(x);
  if (f == Complex(0.0)) throw PoleError("exponential: t(k) diverges");
  const Complex nu = -kI * x.s;
  const auto hmp = specfun::bessel_j_scaled(nu, x.p);
  const auto hmq = specfun::bessel_j_scaled(nu, x.q);
  const auto hpp = specfun::bessel_j_scaled(-nu, x.p);
  const auto hpq = specfun::bessel_j_scaled(-nu, x.q);
  const Complex denom = 2.0 * kI * x.s * f;
  const Complex r_left = (x.q * hpp.j * hmq.jprime + x.p * hmq.j * hpp.jprime) / denom;
  const Complex r_right = (x.p * hpq.j * hmp.jprime + x.q * hmp.j * hpq.jprime) / denom;
  return {r_left, r_right, 1.0 / f};
}

ScatterAmplitudes analytic_amplitudes(const PotentialModel& m, Complex k) {
  ScatterAmplitudes amp{};
  switch (m.kind()) {
    case ModelKind::Scarf2: amp = scarf_amplitudes(m, k); break;
    case ModelKind::DeltaPair: amp = delta_amplitudes(m, k); break;
    case ModelKind::SquareWell: amp = well_amplitudes(m, k); break;
    case ModelKind::Exponential: amp = exp_amplitudes(m, k); break;
    case ModelKind::Sampled: throw EvalError("amplitudes_continued: sampled potentials have no continuation");
  }
  if (m.mirrored()) std::swap(amp.r_left, amp.r_right);
  require_finite(amp.r_left, "amplitudes");
  require_finite(amp.r_right, "amplitudes");
  require_finite(amp.t, "amplitudes");
  return amp;
}

// Bisection on a bracket with a sign change; returns the midpoint of the
// final interval.
template <typename Fn>
double bisect(Fn&& fn, double lo, double hi, double flo) {
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

// ---------------------------------------------------------------- model

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Scarf2: return "scarf2";
    case ModelKind::DeltaPair: return "delta";
    case ModelKind::SquareWell: return "sqwell";
    case ModelKind::Exponential: return "exp";
    case ModelKind::Sampled: return "sampled";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "scarf2" || name == "scarf") return ModelKind::Scarf2;
  if (name == "delta") return ModelKind::DeltaPair;
  if (name == "sqwell" || name == "square") return ModelKind::SquareWell;
  if (name == "exp" || name == "exponential") return ModelKind::Exponential;
  if (name == "sampled") return ModelKind::Sampled;
  throw ConfigError("unknown model kind '" + std::string(name) + "'");
}

PotentialModel::PotentialModel(ModelKind kind, double v1, double v2, double a)
    : kind_(kind), v1_(v1), v2_(v2), a_(a) {
  require_finite_param(v1, "V1");
  require_finite_param(v2, "V2");
  require_finite_param(a, "a");
  if (kind != ModelKind::Scarf2 && kind != ModelKind::Sampled && !(a > 0.0)) {
    throw DomainError("model parameter a must be > 0");
  }
}

PotentialModel PotentialModel::scarf2(double v1, double v2) { return {ModelKind::Scarf2, v1, v2, 1.0}; }
PotentialModel PotentialModel::delta_pair(double v1, double v2, double a) {
  return {ModelKind::DeltaPair, v1, v2, a};
}
PotentialModel PotentialModel::square_well(double v1, double v2, double a) {
  return {ModelKind::SquareWell, v1, v2, a};
}
PotentialModel PotentialModel::exponential(double v1, double v2, double a) {
  return {ModelKind::Exponential, v1, v2, a};
}

PotentialModel PotentialModel::sampled(std::shared_ptr<const numerov::SampledPotential> potential) {
  if (!potential) throw DomainError("sampled model needs a potential");
  PotentialModel m(ModelKind::Sampled, 0.0, 0.0, 1.0);
  m.sampled_ = std::move(potential);
  return m;
}

PotentialModel PotentialModel::make(ModelKind kind, double v1, double v2, double a) {
  if (kind == ModelKind::Sampled) throw DomainError("make: sampled models are built from a potential");
  if (kind == ModelKind::Scarf2) return scarf2(v1, v2);
  return {kind, v1, v2, a};
}

PotentialModel PotentialModel::with_v2(double v2) const {
  PotentialModel m = *this;
  require_finite_param(v2, "V2");
  m.v2_ = v2;
  return m;
}

Complex PotentialModel::potential_at(double x) const {
  const double sgn = (x > 0.0) ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  switch (kind_) {
    case ModelKind::Scarf2: {
      if (std::abs(x) > 700.0) return 0.0;
      const double sech = 1.0 / std::cosh(x);
      return {v1_ * sech * sech, v2_ * sech * std::tanh(x)};
    }
    case ModelKind::DeltaPair: {
      const double sigma = delta_width();
      const auto g = [sigma](double u) {
        return std::exp(-u * u / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * kPi));
      };
      return Complex(v1_, -v2_) * g(x + a_) + Complex(v1_, v2_) * g(x - a_);
    }
    case ModelKind::SquareWell:
      if (std::abs(x) < a_) return {v1_, v2_ * sgn};
      if (std::abs(x) == a_) return {0.5 * v1_, 0.5 * v2_ * sgn};
      return 0.0;
    case ModelKind::Exponential:
      return Complex(v1_, v2_ * sgn) * std::exp(-2.0 * std::abs(x) / a_);
    case ModelKind::Sampled:
      return sampled_->value_at(x);
  }
  return 0.0;
}

std::vector<double> PotentialModel::breakpoints() const {
  switch (kind_) {
    case ModelKind::SquareWell: return {-a_, 0.0, a_};
    case ModelKind::Exponential: return {0.0};
    default: return {};
  }
}

// -------------------------------------------------------------- operations

namespace models {

Complex f_of_k(const PotentialModel& model, Complex k) {
  if (k == Complex(0.0)) throw DomainError("f_of_k: k must be nonzero");
  Complex f;
  switch (model.kind()) {
    case ModelKind::Scarf2: f = scarf_f(model, k); break;
    case ModelKind::DeltaPair: f = delta_f(model, k); break;
    case ModelKind::SquareWell: f = well_f(model, k); break;
    case ModelKind::Exponential: f = exp_f(model, k); break;
    case ModelKind::Sampled: f = numerov::f_of_k_numeric(*model.sampled_potential(), k); break;
  }
  if (!is_finite(f)) {
    if (std::isinf(f.real()) || std::isinf(f.imag())) throw PoleError("f_of_k: F(k) diverges");
    throw EvalError("f_of_k: evaluation failed");
  }
  return f;
}

ScatterAmplitudes amplitudes(const PotentialModel& model, double k) {
  if (!(k > 0.0)) throw DomainError("amplitudes: k must be > 0");
  if (model.kind() == ModelKind::Sampled) {
    return numerov::integrate_scattering(*model.sampled_potential(), k).amplitudes;
  }
  return analytic_amplitudes(model, k);
}

ScatterAmplitudes amplitudes_continued(const PotentialModel& model, Complex k) {
  if (k == Complex(0.0)) throw DomainError("amplitudes: k must be nonzero");
  return analytic_amplitudes(model, k);
}

std::vector<EigenRecord> scarf2_closed_spectrum(double v1, double v2) {
  const double abs_v2 = std::abs(v2);
  std::vector<EigenRecord> out;
  const double p2 = abs_v2 - v1 + 0.25;
  if (!(p2 > 0.0)) return out;
  const double p = 0.5 * std::sqrt(p2);
  const double q2 = abs_v2 + v1 - 0.25;
  constexpr double kEps = 1e-12;

  if (q2 <= 0.0) {
    // Unbroken phase: two real branches with s = sqrt(-q2)/2.
    const double s = 0.5 * std::sqrt(-q2);
    for (const double branch : {p + s, p - s}) {
      const double c = branch - 0.5;
      for (int n = 0; c - n > kEps; ++n) {
        const double kappa = c - n;
        EigenRecord rec;
        rec.kind = EigenKind::RealBound;
        rec.zero.k = Complex(0.0, kappa);
        rec.energy = Complex(-kappa * kappa, 0.0);
        out.push_back(rec);
      }
    }
  } else {
    const double q = 0.5 * std::sqrt(q2);
    const double c = p - 0.5;
    for (int n = 0; c - n > kEps * std::max(1.0, c); ++n) {
      const double k2 = c - n;
      EigenRecord rec;
      rec.kind = EigenKind::CCPE;
      rec.zero.k = Complex(q, k2);
      rec.partner = KZero{Complex(-q, k2), 0.0, 0};
      rec.energy = rec.zero.k * rec.zero.k;
      out.push_back(rec);
    }
    const double nearest = std::round(c);
    if (nearest >= 0.0 && std::abs(c - nearest) <= kEps * std::max(1.0, c) && q > 0.0) {
      EigenRecord rec;
      rec.kind = EigenKind::SS;
      rec.zero.k = Complex(q, 0.0);
      rec.partner = KZero{Complex(-q, 0.0), 0.0, 0};
      rec.energy = Complex(q * q, 0.0);
      out.push_back(rec);
    }
  }
  sort_canonical(out);
  return out;
}

CriticalPoint scarf2_critical(double v1, int m) {
  if (m < 0) throw DomainError("scarf2_critical: m must be >= 0");
  const double md = m;
  const double v_star = v1 + 4.0 * md * md + 4.0 * md + 0.75;
  if (!(v_star > 0.0)) throw DomainError("scarf2_critical: V_star <= 0 for this V1 and m");
  const double e_star = 0.25 * (v_star + v1 - 0.25);
  if (!(e_star > 0.0)) throw DomainError("scarf2_critical: E_star <= 0 (critical value precedes the EP)");
  return {v_star, e_star, m};
}

CriticalPoint delta_ss(double v1, double a, int m) {
  if (m < 0) throw DomainError("delta_ss: m must be >= 0");
  if (!(a > 0.0)) throw DomainError("delta_ss: a must be > 0");
  const double c = 2.0 * v1 * a;
  const auto g = [c](double u) { return u * std::cos(u) + c * std::sin(u); };
  // u cot u + c decreases monotonically on each branch (j pi, (j+1) pi); the
  // first branch only hosts a root when c > -1.
  const int branch = (c > -1.0) ? m : m + 1;
  double lo = branch * kPi;
  const double hi = (branch + 1) * kPi;
  if (branch == 0) lo = 1e-9;
  const double glo = g(lo);
  const double ghi = g(hi);
  if (!(glo * ghi < 0.0)) throw NoRootError("delta_ss: no sign change on the cot branch");
  const double u = bisect(g, lo, hi, glo);
  const double v_star = std::sqrt(u * u / (2.0 * a * a) + v1 * v1);
  return {v_star, u * u / (4.0 * a * a), m};
}

std::vector<double> exp_bound_states(double v1, double v2, double a) {
  const double kappa_max = 1.05 * std::sqrt(std::abs(v1)) + 0.1;
  const int n = 4000 + static_cast<int>(400.0 * kappa_max * a);
  const auto fn = [&](double kappa) { return detail::exp_bound_state_function(v1, v2, a, kappa); };
  std::vector<double> energies;
  double x_prev = 1e-8;
  double f_prev = fn(x_prev);
  for (int i = 1; i <= n; ++i) {
    const double x = kappa_max * i / n;
    const double f = fn(x);
    if (f == 0.0) {
      energies.push_back(-x * x);
    } else if ((f < 0.0) != (f_prev < 0.0) && f_prev != 0.0) {
      const double root = bisect(fn, x_prev, x, f_prev);
      energies.push_back(-root * root);
    }
    x_prev = x;
    f_prev = f;
  }
  std::sort(energies.begin(), energies.end());
  return energies;
}

namespace detail {

ScarfParams scarf_params(double v1, double abs_v2) {
  const Complex p = 0.5 * std::sqrt(Complex(abs_v2 - v1 + 0.25, 0.0));
  const Complex q = 0.5 * std::sqrt(Complex(abs_v2 + v1 - 0.25, 0.0));
  return {p, q, p - 0.5 + kI * q, q + kI * p};
}

ScatterAmplitudes square_well_literal(double v1, double v2, double a, Complex k, Complex p, Complex q) {
  (void)v1;
  (void)v2;
  const Complex pa = p * a;
  const Complex qa = q * a;
  const Complex sP = std::sin(pa), cP = std::cos(pa), sQ = std::sin(qa), cQ = std::cos(qa);
  const Complex phase = std::exp(-2.0 * kI * k * a);
  const auto den = [&](Complex pp, Complex qq, Complex sp_, Complex cp_, Complex sq_, Complex cq_) {
    return 2.0 * kI * k * pp * qq * cp_ * cq_ + pp * (k * k + qq * qq) * cp_ * sq_ +
           qq * (pp * pp + k * k) * sp_ * cq_ - kI * k * (pp * pp + qq * qq) * sp_ * sq_;
  };
  const auto num = [&](Complex pp, Complex qq, Complex sp_, Complex cp_, Complex sq_, Complex cq_) {
    return qq * (k * k - pp * pp) * sp_ * cq_ + pp * (k * k - qq * qq) * cp_ * sq_ +
           kI * k * (pp * pp - qq * qq) * sp_ * sq_;
  };
  const Complex d = den(p, q, sP, cP, sQ, cQ);
  return {num(p, q, sP, cP, sQ, cQ) * phase / d, num(q, p, sQ, cQ, sP, cP) * phase / d,
          2.0 * kI * k * p * q * phase / d};
}

Complex exponential_f_literal(double v1, double v2, double a, Complex k) {
  const ExpArgs x = exp_args(v1, std::abs(v2), a, k);
  const Complex nu = -kI * x.s;
  const auto jp = specfun::bessel_j(nu, x.p);
  const auto jq = specfun::bessel_j(nu, x.q);
  const Complex d = x.q * jp.j * jq.jprime + x.p * jq.j * jp.jprime;
  const Complex power = std::exp(kI * x.s * (std::log(x.p / 2.0) + std::log(x.q / 2.0)));
  const Complex g = specfun::gamma(1.0 - kI * x.s);
  // Overall sign: t -> 1 for a vanishing potential.
  return -power * g * g * d / (2.0 * kI * x.s);
}

double exp_bound_state_function(double v1, double v2, double a, double kappa) {
  const ExpArgs x = exp_args(v1, std::abs(v2), a, Complex(0.0, kappa));
  const double nu = kappa * a;
  const auto hp = specfun::bessel_j_scaled(nu, x.p);
  const auto hq = specfun::bessel_j_scaled(nu, x.q);
  const Complex phi = 2.0 * nu * hp.j * hq.j + x.p * hq.j * hp.jprime + x.q * hp.j * hq.jprime;
  return phi.real();
}

}  // namespace detail
}  // namespace models

std::string_view to_string(EigenKind kind) {
  switch (kind) {
    case EigenKind::RealBound: return "RealBound";
    case EigenKind::CCPE: return "CCPE";
    case EigenKind::SS: return "SS";
  }
  return "unknown";
}

void sort_canonical(std::vector<EigenRecord>& records) {
  std::sort(records.begin(), records.end(), [](const EigenRecord& x, const EigenRecord& y) {
    if (x.energy.real() != y.energy.real()) return x.energy.real() < y.energy.real();
    return x.energy.imag() < y.energy.imag();
  });
}

std::size_t count_kind(const std::vector<EigenRecord>& records, EigenKind kind) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [kind](const EigenRecord& r) { return r.kind == kind; }));
}

}  // namespace ptspec
