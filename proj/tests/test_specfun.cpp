#include <doctest.h>

#include <random>

#include "ptspec/specfun.hpp"

using namespace ptspec;
using specfun::bessel_j;
using specfun::bessel_j_scaled;
using specfun::ln_gamma;

namespace {

void check_close(Complex got, Complex want, double rel) {
  CHECK(std::abs(got - want) <= rel * std::max(1.0, std::abs(want)));
}

}  // namespace

TEST_CASE("ln_gamma at known points") {
  check_close(ln_gamma(1.0), 0.0, 1e-15);
  check_close(ln_gamma(0.5), 0.57236494292470009, 1e-14);
  check_close(ln_gamma(2.0), 0.0, 1e-15);
  check_close(ln_gamma(Complex(0.3, 0.7)), {-0.093170312498134181, -1.2239573657136887}, 1e-13);
  check_close(ln_gamma(Complex(-2.5, 1.2)), {-2.9014206196172975, -8.0711463366155452}, 1e-13);
  check_close(ln_gamma(Complex(10, 20)), {-1.7029804439565111, 52.660660425584719}, 1e-13);
  check_close(ln_gamma(Complex(-0.7, -3.1)), {-5.3323366949039995, 1.6926706278059789}, 1e-13);
  check_close(ln_gamma(Complex(-5.5, 0.5)), {-5.41702572833, -17.952526683}, 1e-11);
  check_close(ln_gamma(Complex(-0.5, 1e-3)), {1.26550765609, -3.14155616348}, 1e-11);
  check_close(ln_gamma(Complex(-0.3, 0.2)), {1.22593603014, -2.78937973085}, 1e-11);
}

TEST_CASE("gamma reflection") {
  const Complex z(0.3, 0.7);
  const Complex lhs = specfun::gamma(z) * specfun::gamma(1.0 - z);
  const Complex rhs = kPi / std::sin(kPi * z);
  CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
}

TEST_CASE("gamma poles and reciprocal") {
  CHECK_THROWS_AS(ln_gamma(0.0), PoleError);
  CHECK_THROWS_AS(ln_gamma(-3.0), PoleError);
  CHECK(specfun::rgamma(-2.0) == Complex(0.0));
  check_close(specfun::rgamma(Complex(0.492156, -2.48416)), {19.4150841029274, -4.32385319638123}, 1e-12);
  check_close(specfun::rgamma(Complex(-3.12429, 1.36011)), {-61.639221403209, -10.9390017223073}, 1e-12);
  check_close(specfun::gamma(5.0), 24.0, 1e-14);
}

TEST_CASE("bessel_j at known points") {
  const auto j00 = bessel_j(0.0, 0.0);
  CHECK(j00.j == Complex(1.0));
  CHECK(j00.jprime == Complex(0.0));

  const auto half = bessel_j(0.5, 2.0);
  check_close(half.j, 0.51301613656182775, 1e-14);
  check_close(half.j, std::sqrt(1.0 / kPi) * std::sin(2.0), 1e-14);

  const auto a = bessel_j(Complex(0, 0.4), Complex(3, 1));
  check_close(a.j, {-0.28433649502335301, -0.10572690567854429}, 1e-12);
  check_close(a.jprime, {-0.3376314658286461, 0.16785343828404921}, 1e-12);

  const auto b = bessel_j(2.5, Complex(1.5, -0.5));
  check_close(b.j, {0.11135122134751473, -0.092593982590117643}, 1e-12);
  check_close(b.jprime, {0.19625362947931728, -0.054063434661931457}, 1e-12);

  const auto c = bessel_j(Complex(1, 2), 5.0);
  check_close(c.j, {-1.9325742007832429, 1.911587022040742}, 1e-12);
  check_close(c.jprime, {-1.9950852063947987, -2.0427005722000203}, 1e-12);

  const auto d = bessel_j(Complex(-0.3, 0.8), Complex(-2, 4));
  check_close(d.j, {0.89174626190783475, 3.1714297730826307}, 1e-12);
  check_close(d.jprime, {2.8352963425312048, -0.57177758210506201}, 1e-12);
}

TEST_CASE("bessel_j negative integer order") {
  const auto p = bessel_j(3.0, Complex(1.7, 0.4));
  const auto m = bessel_j(-3.0, Complex(1.7, 0.4));
  check_close(m.j, -p.j, 1e-15);
  check_close(m.jprime, -p.jprime, 1e-15);
}

TEST_CASE("bessel_j error states") {
  CHECK_THROWS_AS(bessel_j(Complex(-0.5, 0.1), 0.0), BranchError);
  CHECK_THROWS_AS(bessel_j(1.0, 2000.0), ConvergenceError);
  specfun::BesselOptions tight;
  tight.max_terms = 3;
  CHECK_THROWS_AS(bessel_j(0.0, 10.0, tight), ConvergenceError);
}

TEST_CASE("bessel_j_scaled matches the hypergeometric series") {
  check_close(bessel_j_scaled(Complex(-0.5, 3), Complex(2, 1)).j, {0.68949679487972685, 0.14679497179607797}, 1e-12);
  check_close(bessel_j_scaled(Complex(1.2, -0.7), Complex(0.3, 6)).j, {15.468740055298269, 4.8779071325955354},
              1e-12);
  CHECK(bessel_j_scaled(Complex(0.7, 0.2), 0.0).j == Complex(1.0));
  CHECK_THROWS_AS(bessel_j_scaled(-2.0, 1.0), PoleError);

  const Complex nu(0.6, -1.1), z(1.3, 0.8);
  const Complex h = bessel_j_scaled(nu, z).j;
  const Complex j = bessel_j(nu, z).j;
  check_close(h, specfun::gamma(nu + 1.0) * std::pow(z / 2.0, -nu) * j, 1e-12);
}

TEST_CASE("Wronskian at the reference point") {
  const Complex nu(0.0, 0.4), z(3.0, 1.0);
  const auto p = bessel_j(nu, z);
  const auto m = bessel_j(-nu, z);
  const Complex w = p.j * m.jprime - m.j * p.jprime + 2.0 * std::sin(nu * kPi) / (kPi * z);
  CHECK(std::abs(w) < 1e-10);
}

TEST_CASE("identities on random arguments") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Complex nu = std::polar(5.0 * std::sqrt(u(rng)), 2.0 * kPi * u(rng));
    const Complex z = std::polar(0.1 + 19.9 * u(rng), 2.0 * kPi * u(rng) - kPi);
    const auto p = bessel_j(nu, z);
    const auto m = bessel_j(-nu, z);
    const Complex s = 2.0 * std::sin(nu * kPi) / (kPi * z);
    const Complex w = p.j * m.jprime - m.j * p.jprime + s;
    CHECK(std::abs(w) < 1e-10 * (std::abs(p.j * m.jprime) + std::abs(m.j * p.jprime) + std::abs(s)));

    const Complex lo = bessel_j(nu - 1.0, z).j;
    const Complex hi = bessel_j(nu + 1.0, z).j;
    const Complex mid = 2.0 * nu / z * p.j;
    CHECK(std::abs(lo + hi - mid) < 1e-9 * (std::abs(lo) + std::abs(hi) + std::abs(mid)));
  }
}
