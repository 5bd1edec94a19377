#include "ptspec/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace ptspec::specfun {

namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

const double kLogPi = std::log(kPi);
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// sin(pi z) with the argument reduced so that exact integers give exact zeros.
Complex sin_pi(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double n = std::round(x);
  const double r = x - n;
  const double sign = (std::fmod(n, 2.0) == 0.0) ? 1.0 : -1.0;
  const Complex w(r * kPi, y * kPi);
  return sign * std::sin(w);
}

Complex ln_gamma_lanczos(Complex z) {
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return kHalfLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

using LComplex = std::complex<long double>;

struct SeriesSums {
  LComplex h;      // sum a_m
  LComplex dsum;   // sum (nu + 2m) a_m
  LComplex msum;   // sum 2m a_m
};

// a_0 = 1, a_{m+1} = a_m (-z^2/4) / ((m+1)(nu+m+1)).
SeriesSums ascending_series(Complex nu, Complex z, const BesselOptions& opts) {
  if (std::abs(z) > opts.max_abs_z) {
    throw ConvergenceError("bessel_j: |z| exceeds the configured truncation radius");
  }
  const LComplex lnu(nu.real(), nu.imag());
  const LComplex lz(z.real(), z.imag());
  const LComplex w = -(lz * lz) / 4.0L;
  const long double abs_nu = std::abs(lnu);
  constexpr long double kTailTol = 1e-18L;

  LComplex a = 1.0L;
  SeriesSums s{a, lnu, 0.0L};
  for (int m = 0; m < opts.max_terms; ++m) {
    const LComplex denom = static_cast<long double>(m + 1) * (lnu + static_cast<long double>(m + 1));
    if (denom == LComplex(0.0L)) throw PoleError("bessel series: nu + 1 is a non-positive integer");
    a = a * w / denom;
    const long double two_m = 2.0L * static_cast<long double>(m + 1);
    s.h += a;
    s.dsum += (lnu + two_m) * a;
    s.msum += two_m * a;

    const long double ratio =
        std::abs(w) / (static_cast<long double>(m + 2) * std::abs(lnu + static_cast<long double>(m + 2)));
    if (static_cast<long double>(m) > abs_nu && ratio < 0.5L) {
      const long double tail = std::abs(a) * ratio / (1.0L - ratio);
      const long double weight = std::abs(lnu) + two_m + 2.0L;
      const long double floor = std::numeric_limits<long double>::min();
      if (tail <= kTailTol * std::max(std::abs(s.h), floor) &&
          tail * weight <= kTailTol * std::max(std::abs(s.dsum), floor)) {
        return s;
      }
    }
  }
  throw ConvergenceError("bessel series: tail bound not met within max_terms");
}

Complex to_double(LComplex z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

}  // namespace

Complex ln_gamma(Complex z) {
  if (is_nonpositive_integer(z)) throw PoleError("ln_gamma: pole at non-positive integer");
  if (z.real() < 0.5) {
    if (z.imag() < 0.0) return std::conj(ln_gamma(std::conj(z)));
    // Gamma(z) Gamma(1-z) = pi / sin(pi z), with
    // log sin(pi z) = -i pi z + log(1 - e^{2 pi i z}) - log 2 + i pi / 2,
    // which is continuous for Im z >= 0 and keeps the principal branch.
    const Complex w = std::exp(Complex(0.0, 2.0 * kPi) * z);
    const Complex log_sin = Complex(0.0, -kPi) * z + std::log(1.0 - w) + Complex(-std::log(2.0), 0.5 * kPi);
    return kLogPi - log_sin - ln_gamma_lanczos(1.0 - z);
  }
  return ln_gamma_lanczos(z);
}

Complex gamma(Complex z) { return require_finite(std::exp(ln_gamma(z)), "gamma"); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.real() < 0.5) {
    return require_finite(sin_pi(z) * std::exp(ln_gamma_lanczos(1.0 - z)) / kPi, "rgamma");
  }
  return require_finite(std::exp(-ln_gamma_lanczos(z)), "rgamma");
}

BesselValue bessel_j(Complex nu, Complex z, const BesselOptions& opts) {
  // Negative integer orders: J_{-n} = (-1)^n J_n.
  if (is_nonpositive_integer(nu) && nu.real() != 0.0) {
    const double n = -nu.real();
    const double sign = (std::fmod(n, 2.0) == 0.0) ? 1.0 : -1.0;
    const BesselValue b = bessel_j(Complex(n, 0.0), z, opts);
    return {sign * b.j, sign * b.jprime};
  }

  if (z == Complex(0.0)) {
    if (nu == Complex(0.0)) return {1.0, 0.0};
    if (nu.real() > 0.0) {
      if (nu == Complex(1.0)) return {0.0, 0.5};
      if (nu.real() > 1.0) return {0.0, 0.0};
      throw BranchError("bessel_j: derivative singular at z = 0 for 0 < Re nu < 1");
    }
    throw BranchError("bessel_j: z = 0 with Re nu <= 0");
  }

  const SeriesSums s = ascending_series(nu, z, opts);
  const Complex prefactor = std::exp(nu * std::log(z / 2.0)) * rgamma(nu + 1.0);
  const Complex j = prefactor * to_double(s.h);
  const Complex jprime = prefactor * to_double(s.dsum) / z;
  return {require_finite(j, "bessel_j"), require_finite(jprime, "bessel_j")};
}

BesselValue bessel_j_scaled(Complex nu, Complex z, const BesselOptions& opts) {
  if (is_nonpositive_integer(nu + 1.0)) throw PoleError("bessel_j_scaled: nu + 1 is a non-positive integer");
  if (z == Complex(0.0)) return {1.0, 0.0};
  const SeriesSums s = ascending_series(nu, z, opts);
  return {require_finite(to_double(s.h), "bessel_j_scaled"),
          require_finite(to_double(s.msum) / z, "bessel_j_scaled")};
}

}  // namespace ptspec::specfun
