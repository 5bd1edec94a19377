#pragma once

#include "ptspec/types.hpp"

namespace ptspec::specfun {

/// Principal branch of log Gamma(z): analytic continuation of the real
/// log-gamma off the positive axis, with branch cuts along the negative axis.
/// Lanczos approximation (g = 7, nine coefficients) for Re z >= 1/2 and the
/// reflection formula below that. Throws PoleError at z = 0, -1, -2, ...
Complex ln_gamma(Complex z);

Complex gamma(Complex z);

/// 1/Gamma(z). Entire, so the poles of Gamma map to exact zeros.
Complex rgamma(Complex z);

struct BesselValue {
  Complex j;       ///< J_nu(z)
  Complex jprime;  ///< dJ_nu/dz
};

struct BesselOptions {
  double max_abs_z = 1e3;
  int max_terms = 600;
};

/// Bessel function of the first kind for complex order and argument, from the
/// ascending series summed in extended precision until the tail bound drops
/// below machine epsilon. The derivative is differentiated term by term.
/// Principal branch of z^nu.
///
/// Throws ConvergenceError when the tail bound is not met within
/// `max_terms` (or |z| exceeds `max_abs_z`), BranchError for z = 0 with
/// Re nu < 0.
BesselValue bessel_j(Complex nu, Complex z, const BesselOptions& opts = {});

/// Regularised series H_nu(z) = Gamma(nu+1) (z/2)^(-nu) J_nu(z)
///                           = sum_m (-z^2/4)^m / (m! (nu+1)_m),
/// together with dH/dz. Entire in z and free of the z^nu branch, which is
/// what the analytic continuation of the exponential model needs. Throws
/// PoleError when nu + 1 is a non-positive integer.
BesselValue bessel_j_scaled(Complex nu, Complex z, const BesselOptions& opts = {});

}  // namespace ptspec::specfun
