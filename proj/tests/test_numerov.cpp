#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "ptspec/numerov.hpp"
#include "ptspec/sweep.hpp"

using namespace ptspec;

namespace {

double rel_change(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("free propagation") {
  const auto free = numerov::SampledPotential::from_nodes({-10.0, 10.0}, {0.0, 0.0});
  const auto s = numerov::integrate_scattering(free, 1.0);
  CHECK(std::abs(s.amplitudes.r_left) < 1e-12);
  CHECK(std::abs(std::abs(s.amplitudes.t) - 1.0) < 1e-12);

  const Complex f = numerov::f_of_k_numeric(free, Complex(0.8, 0.6));
  CHECK(std::isfinite(std::abs(f)));
  CHECK(std::abs(f) > 0.0);
}

TEST_CASE("square well near its spectral singularity") {
  const auto c = sweep::refine_critical(PotentialModel::square_well(5.0, 3.685, 2.0), 3.685, std::sqrt(10.534));
  CHECK(c.v_star == doctest::Approx(3.69169).epsilon(2e-6));
  CHECK(c.e_star == doctest::Approx(10.80517).epsilon(2e-6));
  numerov::SampleOptions so;
  so.half_width = 10.0;
  const auto pot = numerov::sample(PotentialModel::square_well(5.0, c.v_star, 2.0), so);
  const auto s = numerov::integrate_scattering(pot, std::sqrt(c.e_star));
  CHECK(s.amplitudes.transmission() > 1e4);
}

TEST_CASE("exponential bound state is a zero of F") {
  const auto pot = numerov::sample(PotentialModel::exponential(-5.0, 3.0, 2.0));
  CHECK(std::abs(numerov::f_of_k_numeric(pot, Complex(0.0, std::sqrt(1.2334)))) < 1e-3);
  CHECK(std::abs(numerov::f_of_k_numeric(pot, Complex(0.0, 1.5))) > 1e-3);
}

TEST_CASE("agreement with analytic amplitudes") {
  const auto model = PotentialModel::square_well(-3.0, 1.7, 1.5);
  const auto num = numerov::oracle_amplitudes(model, 1.3);
  const auto ana = models::amplitudes(model, 1.3);
  CHECK(std::abs(num.t - ana.t) < 1e-6 * std::abs(ana.t));
  CHECK(std::abs(num.r_left - ana.r_left) < 1e-6 * std::max(1.0, std::abs(ana.r_left)));
  CHECK(std::abs(num.r_right - ana.r_right) < 1e-6 * std::max(1.0, std::abs(ana.r_right)));
}

TEST_CASE("step halving and domain doubling") {
  const auto model = PotentialModel::scarf2(-2.0, 3.0);
  const auto base = numerov::sample(model);
  const Complex t0 = numerov::integrate_scattering(base, 1.1).amplitudes.t;

  numerov::IntegrateOptions half;
  half.step_scale = 0.5;
  CHECK(rel_change(numerov::integrate_scattering(base, 1.1, half).amplitudes.t, t0) < 1e-5);

  numerov::SampleOptions wide;
  wide.half_width = 2.0 * numerov::default_half_width(model);
  const auto big = numerov::sample(model, wide);
  CHECK(rel_change(numerov::integrate_scattering(big, 1.1).amplitudes.t, t0) < 1e-6);
}

TEST_CASE("sampling keeps jumps on piece boundaries") {
  const auto pot = numerov::sample(PotentialModel::square_well(-4.0, 2.0, 1.0));
  CHECK(pot.pieces.size() == 4);
  CHECK(pot.value_at(0.5) == Complex(-4.0, 2.0));
  CHECK(pot.value_at(-0.5) == Complex(-4.0, -2.0));
  CHECK(pot.value_at(1.5) == Complex(0.0));
  const auto mirror = pot.mirrored();
  CHECK(mirror.value_at(0.5) == Complex(-4.0, -2.0));
}

TEST_CASE("truncation that cuts the tail is rejected") {
  numerov::SampleOptions narrow;
  narrow.half_width = 3.0;
  const auto pot = numerov::sample(PotentialModel::scarf2(-5.0, 2.0), narrow);
  CHECK_THROWS_AS(numerov::integrate_wave(pot, 1.0), DecayError);
  CHECK_THROWS_AS(numerov::integrate_wave(pot, 0.0), DomainError);
}

TEST_CASE("potential CSV round trip") {
  const auto path = std::filesystem::temp_directory_path() / "ptspec_numerov_test.csv";
  {
    std::ofstream f(path);
    f << "x,reV,imV\n# comment\n";
    for (int i = 0; i <= 400; ++i) {
      const double x = -10.0 + 0.05 * i;
      f << x << ',' << -2.0 * std::exp(-x * x) << ',' << x * std::exp(-x * x) << '\n';
    }
  }
  const auto pot = numerov::load_csv(path.string());
  CHECK(pot.x_min() == doctest::Approx(-10.0));
  CHECK(pot.x_max() == doctest::Approx(10.0));
  CHECK(std::abs(pot.value_at(0.3) - Complex(-2.0 * std::exp(-0.09), 0.3 * std::exp(-0.09))) < 1e-5);
  const auto s = numerov::integrate_scattering(pot, 1.0);
  CHECK(std::abs(s.amplitudes.t) > 0.0);

  std::ofstream(path) << "x,reV,imV\n0,1\n";
  CHECK_THROWS_AS(numerov::load_csv(path.string()), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(numerov::load_csv(path.string()), ConfigError);
}
