#include <doctest.h>

#include <algorithm>
#include <random>

#include "ptspec/models.hpp"

using namespace ptspec;

namespace {

std::vector<EigenRecord> of_kind(const std::vector<EigenRecord>& recs, EigenKind kind) {
  std::vector<EigenRecord> out;
  for (const auto& r : recs) {
    if (r.kind == kind) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("model kinds parse") {
  CHECK(parse_model_kind("scarf2") == ModelKind::Scarf2);
  CHECK(parse_model_kind("delta") == ModelKind::DeltaPair);
  CHECK(parse_model_kind("sqwell") == ModelKind::SquareWell);
  CHECK(parse_model_kind("exp") == ModelKind::Exponential);
  CHECK_THROWS_AS(parse_model_kind("harmonic"), ConfigError);
}

TEST_CASE("delta pair spectral singularity") {
  const auto model = PotentialModel::delta_pair(0.0, kPi / (2.0 * std::sqrt(2.0)), 1.0);
  CHECK(std::abs(models::f_of_k(model, kPi / 4.0)) < 1e-10);

  const auto near = PotentialModel::delta_pair(0.0, 1.1107, 1.0);
  const auto amp = models::amplitudes(near.with_v2(kPi / (2.0 * std::sqrt(2.0))), kPi / 4.0 + 5e-5);
  CHECK(amp.transmission() > 1e6);
  CHECK(amp.reflection_left() > 1e6);
  CHECK(amp.reflection_right() > 1e6);
}

TEST_CASE("free potential transmits fully") {
  for (ModelKind kind : {ModelKind::DeltaPair, ModelKind::SquareWell, ModelKind::Exponential, ModelKind::Scarf2}) {
    const auto model = PotentialModel::make(kind, 0.0, 0.0, 1.5);
    CHECK(std::abs(std::abs(models::f_of_k(model, 1.3)) - 1.0) < 1e-12);
    const auto amp = models::amplitudes(model, 0.9);
    CHECK(std::abs(amp.transmission() - 1.0) < 1e-12);
    CHECK(amp.reflection_left() < 1e-24);
  }
}

TEST_CASE("square well critical point") {
  const auto model = PotentialModel::square_well(-5.0, 10.382656107855057, 2.0);
  CHECK(std::abs(models::f_of_k(model, std::sqrt(22.577997934187426))) < 1e-6);
  const auto printed = PotentialModel::square_well(-5.0, 10.383, 2.0);
  CHECK(std::abs(models::f_of_k(printed, std::sqrt(22.578))) < 1e-3);
}

TEST_CASE("scarf2 closed-form spectra") {
  SUBCASE("V1 = 0, V2 = 8.75") {
    const auto recs = models::scarf2_closed_spectrum(0.0, 8.75);
    const auto ccpe = of_kind(recs, EigenKind::CCPE);
    const auto ss = of_kind(recs, EigenKind::SS);
    REQUIRE(ccpe.size() == 1);
    REQUIRE(ss.size() == 1);
    CHECK(ccpe[0].energy.real() == doctest::Approx(1.125).epsilon(1e-9));
    CHECK(ccpe[0].energy.imag() == doctest::Approx(2.915476).epsilon(1e-6));
    CHECK(ss[0].energy.real() == doctest::Approx(2.125).epsilon(1e-12));
    CHECK(count_kind(recs, EigenKind::RealBound) == 0);
  }
  SUBCASE("V1 = -5, V2 = 5.24") {
    const auto recs = models::scarf2_closed_spectrum(-5.0, 5.24);
    const auto real = of_kind(recs, EigenKind::RealBound);
    REQUIRE(real.size() == 4);
    const double printed[] = {-1.367, -1.143, -0.028, -0.004};
    std::vector<double> e;
    for (const auto& r : real) e.push_back(r.energy.real());
    std::sort(e.begin(), e.end());
    for (int i = 0; i < 4; ++i) CHECK(std::abs(e[i] - printed[i]) < 5e-3);
  }
  SUBCASE("V1 = -5, V2 = 19.75") {
    const auto recs = models::scarf2_closed_spectrum(-5.0, 19.75);
    const auto ccpe = of_kind(recs, EigenKind::CCPE);
    const auto ss = of_kind(recs, EigenKind::SS);
    REQUIRE(ccpe.size() == 2);
    REQUIRE(ss.size() == 1);
    CHECK(ss[0].energy.real() == doctest::Approx(3.625));
    bool lo = false, hi = false;
    for (const auto& r : ccpe) {
      if (std::abs(r.energy - Complex(-0.375, 7.615773)) < 1e-5) lo = true;
      if (std::abs(r.energy - Complex(2.625, 3.807887)) < 1e-5) hi = true;
    }
    CHECK(lo);
    CHECK(hi);
  }
}

TEST_CASE("scarf2 critical strengths") {
  auto c = models::scarf2_critical(0.0, 1);
  CHECK(c.v_star == doctest::Approx(8.75));
  CHECK(c.e_star == doctest::Approx(2.125));
  c = models::scarf2_critical(5.0, 0);
  CHECK(c.v_star == doctest::Approx(5.75));
  CHECK(c.e_star == doctest::Approx(2.625));
  c = models::scarf2_critical(0.0, 2);
  CHECK(c.v_star == doctest::Approx(24.75));
  CHECK(c.e_star == doctest::Approx(6.125));
  CHECK(std::abs(models::f_of_k(PotentialModel::scarf2(0.0, 24.75), std::sqrt(6.125))) < 1e-10);
  CHECK_THROWS_AS(models::scarf2_critical(-10.0, 0), DomainError);
}

TEST_CASE("delta pair critical strengths") {
  auto c = models::delta_ss(0.0, 1.0, 0);
  CHECK(c.v_star == doctest::Approx(kPi / (2.0 * std::sqrt(2.0))).epsilon(1e-12));
  CHECK(c.e_star == doctest::Approx(kPi * kPi / 16.0).epsilon(1e-12));
  c = models::delta_ss(5.0, 1.0, 0);
  CHECK(std::abs(c.v_star - 5.394) < 5e-3);
  CHECK(std::abs(c.e_star - 2.048) < 5e-3);
  c = models::delta_ss(-5.0, 1.0, 0);
  CHECK(std::abs(c.v_star - 5.571) < 5e-3);
  CHECK(std::abs(c.e_star - 3.020) < 5e-3);
  for (double v1 : {-5.0, 0.0, 5.0}) {
    for (int m = 0; m < 3; ++m) {
      const auto x = models::delta_ss(v1, 1.0, m);
      CHECK(std::abs(models::f_of_k(PotentialModel::delta_pair(v1, x.v_star, 1.0), std::sqrt(x.e_star))) < 1e-9);
    }
  }
}

TEST_CASE("exponential bound states") {
  const auto e = models::exp_bound_states(-5.0, 3.0, 2.0);
  REQUIRE(e.size() == 2);
  CHECK(std::abs(e[0] - (-1.587962)) < 1e-5);
  CHECK(std::abs(e[1] - (-1.2334)) < 5e-4);
  for (double v : e) {
    CHECK(std::abs(models::f_of_k(PotentialModel::exponential(-5.0, 3.0, 2.0), Complex(0.0, std::sqrt(-v)))) < 1e-8);
  }

  const auto deep = models::exp_bound_states(-60.0, 10.0, 2.0);
  const double printed[] = {-43.25, -30.82, -20.25, -14.95, -9.19, -6.29, -3.16, -1.75, -0.44, -0.065};
  REQUIRE(deep.size() == 10);
  int mismatches = 0;
  for (int i = 0; i < 10; ++i) {
    if (std::abs(deep[i] - printed[i]) > 1e-2) ++mismatches;
  }
  CHECK(std::abs(deep[2] - (-20.38505)) < 1e-4);
  CHECK(mismatches == 1);
}

TEST_CASE("square well is independent of the root branch") {
  const double v1 = -3.0, v2 = 2.5, a = 1.5;
  for (Complex k : {Complex(1.2, 0.0), Complex(0.7, 0.4), Complex(-2.1, 0.3)}) {
    const Complex p = std::sqrt(k * k - v1 - Complex(0, v2));
    const Complex q = std::sqrt(k * k - v1 + Complex(0, v2));
    const auto base = models::detail::square_well_literal(v1, v2, a, k, p, q);
    for (const auto& [pp, qq] : {std::pair{-p, q}, std::pair{p, -q}, std::pair{-p, -q}}) {
      const auto flipped = models::detail::square_well_literal(v1, v2, a, k, pp, qq);
      CHECK(std::abs(flipped.t - base.t) < 1e-12 * std::abs(base.t));
      CHECK(std::abs(flipped.r_left - base.r_left) < 1e-12 * std::max(1.0, std::abs(base.r_left)));
    }
  }
}

TEST_CASE("exponential F agrees with the literal Jost form") {
  for (Complex k : {Complex(1.1, 0.0), Complex(0.6, 0.9), Complex(2.3, 0.2)}) {
    const Complex f = models::f_of_k(PotentialModel::exponential(-5.0, 3.0, 2.0), k);
    const Complex g = models::detail::exponential_f_literal(-5.0, 3.0, 2.0, k);
    CHECK(std::abs(f - g) < 1e-10 * std::max(1.0, std::abs(f)));
  }
}

TEST_CASE("reciprocity and mirror symmetry") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (ModelKind kind : {ModelKind::Scarf2, ModelKind::DeltaPair, ModelKind::SquareWell, ModelKind::Exponential}) {
    for (int i = 0; i < 5; ++i) {
      const double v1 = -5.0 + 10.0 * u(rng), v2 = 8.0 * u(rng), k = 0.3 + 2.5 * u(rng);
      const auto plus = models::amplitudes(PotentialModel::make(kind, v1, v2, 1.5), k);
      const auto minus = models::amplitudes(PotentialModel::make(kind, v1, -v2, 1.5), k);
      CHECK(std::abs(plus.t - minus.t) < 1e-10 * std::abs(plus.t));
      CHECK(std::abs(plus.r_left - minus.r_right) < 1e-10 * std::max(1.0, std::abs(plus.r_left)));
    }
  }
}

TEST_CASE("F is 1/t on the real axis") {
  const auto model = PotentialModel::exponential(-2.0, 1.5, 1.0);
  const auto amp = models::amplitudes(model, 1.7);
  CHECK(std::abs(models::f_of_k(model, 1.7) * amp.t - 1.0) < 1e-12);
  const auto cont = models::amplitudes_continued(model, 1.7);
  CHECK(std::abs(cont.t - amp.t) < 1e-12);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(PotentialModel::delta_pair(0.0, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(PotentialModel::square_well(0.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(models::amplitudes(PotentialModel::scarf2(0.0, 1.0), -1.0), DomainError);
}
