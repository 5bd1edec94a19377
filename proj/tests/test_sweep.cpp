#include <doctest.h>

#include "ptspec/numerov.hpp"
#include "ptspec/sweep.hpp"

using namespace ptspec;

TEST_CASE("Scarf II with V1 = 0 has no real levels") {
  const auto r = sweep::run_sweep(PotentialModel::scarf2(0.0, 0.0), 0.1, 9.0, 0.05);
  for (const auto& t : r.trajectories) {
    for (const auto& p : t.points) CHECK(p.kind != EigenKind::RealBound);
  }
  CHECK(r.exceptional_points.empty());
  bool before = false, after = false;
  for (const auto& s : r.samples) {
    const auto n = count_kind(s.spectrum, EigenKind::CCPE);
    if (s.v2 < 0.75 && n > 0) before = true;
    if (s.v2 > 0.8 && n > 0) after = true;
  }
  CHECK(!before);
  CHECK(after);
  REQUIRE(r.criticals.size() == 2);
  CHECK(r.criticals[0].v_star == doctest::Approx(0.75).epsilon(1e-9));
  CHECK(r.criticals[0].e_star == doctest::Approx(0.125).epsilon(1e-9));
  CHECK(r.criticals[0].m == 0);
  CHECK(r.criticals[1].v_star == doctest::Approx(8.75).epsilon(1e-9));
  CHECK(r.criticals[1].e_star == doctest::Approx(2.125).epsilon(1e-9));
  CHECK(r.criticals[1].m == 1);
}

TEST_CASE("zero-length range") {
  const auto r = sweep::run_sweep(PotentialModel::scarf2(-5.0, 0.0), 3.0, 3.0);
  CHECK(r.samples.size() == 1);
  CHECK(r.exceptional_points.empty());
  CHECK(r.criticals.empty());
}

TEST_CASE("Scarf II with V1 = -5 breaks at V2 = 5.25") {
  const auto r = sweep::run_sweep(PotentialModel::scarf2(-5.0, 0.0), 0.0, 8.0, 0.05);
  REQUIRE(r.exceptional_points.size() == 1);
  CHECK(std::abs(r.exceptional_points[0].v_ep - 5.25) < 5e-3);
  for (const auto& s : r.samples) {
    if (s.v2 > 5.3) CHECK(count_kind(s.spectrum, EigenKind::RealBound) == 0);
  }
}

TEST_CASE("Scarf II with V1 = 5 never has real levels") {
  const auto r = sweep::run_sweep(PotentialModel::scarf2(5.0, 0.0), 0.0, 10.0, 0.1);
  CHECK(r.exceptional_points.empty());
  REQUIRE(r.criticals.size() == 1);
  CHECK(r.criticals[0].v_star == doctest::Approx(5.75).epsilon(1e-9));
  CHECK(r.criticals[0].e_star == doctest::Approx(2.625).epsilon(1e-9));
}

TEST_CASE("delta pair criticals") {
  const auto cps = sweep::find_critical_ss(PotentialModel::delta_pair(0.0, 0.0, 1.0), 0.0, 6.0, 3, 0.05);
  REQUIRE(cps.size() == 3);
  for (int m = 0; m < 3; ++m) {
    const auto ref = models::delta_ss(0.0, 1.0, m);
    CHECK(cps[m].v_star == doctest::Approx(ref.v_star).epsilon(1e-9));
    CHECK(cps[m].e_star == doctest::Approx(ref.e_star).epsilon(1e-9));
  }
}

TEST_CASE("refine_critical") {
  const auto c = sweep::refine_critical(PotentialModel::scarf2(0.0, 8.7), 8.7, 1.45);
  CHECK(c.v_star == doctest::Approx(8.75).epsilon(1e-10));
  CHECK(c.e_star == doctest::Approx(2.125).epsilon(1e-10));
  CHECK(c.m == 1);
  CHECK_THROWS_AS(sweep::refine_critical(PotentialModel::scarf2(0.0, 1.0), 1.0, -1.0), DomainError);
}

TEST_CASE("splitting of a spectral singularity") {
  const auto s = sweep::split_ss(PotentialModel::scarf2(0.0, 0.0), 8.75, 0.1);
  CHECK(s.passed);
  CHECK(s.failures.empty());
  CHECK(count_kind(s.before, EigenKind::SS) == 0);
  CHECK(count_kind(s.at, EigenKind::SS) == 1);
  CHECK(count_kind(s.after, EigenKind::SS) == 0);
  REQUIRE(s.new_ccpe);
  CHECK(std::abs(s.new_ccpe->energy.real() - 2.125) < 0.02 * 2.125);
  CHECK(std::abs(s.new_ccpe->energy.imag()) < 0.2);
}

TEST_CASE("sampled models cannot be swept") {
  auto pot = std::make_shared<numerov::SampledPotential>(
      numerov::SampledPotential::from_nodes({-10.0, 10.0}, {0.0, 0.0}));
  CHECK_THROWS_AS(sweep::trace_eigenvalues(PotentialModel::sampled(pot), 0.0, 1.0), DomainError);
}

TEST_CASE("parallel and serial sweeps agree") {
  sweep::SweepOptions one;
  one.jobs = 1;
  sweep::SweepOptions many;
  many.jobs = 4;
  const auto a = sweep::trace_eigenvalues(PotentialModel::delta_pair(-2.0, 0.0, 1.0), 0.0, 3.0, 0.1, one);
  const auto b = sweep::trace_eigenvalues(PotentialModel::delta_pair(-2.0, 0.0, 1.0), 0.0, 3.0, 0.1, many);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    REQUIRE(a.samples[i].spectrum.size() == b.samples[i].spectrum.size());
    for (std::size_t j = 0; j < a.samples[i].spectrum.size(); ++j) {
      CHECK(a.samples[i].spectrum[j].energy == b.samples[i].spectrum[j].energy);
    }
  }
  CHECK(a.trajectories.size() == b.trajectories.size());
}
