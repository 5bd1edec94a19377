#include <doctest.h>

#include <algorithm>

#include "ptspec/grid.hpp"
#include "ptspec/rootfind.hpp"

using namespace ptspec;

namespace {

bool has_energy(const std::vector<EigenRecord>& recs, EigenKind kind, Complex e, double tol) {
  return std::any_of(recs.begin(), recs.end(),
                     [&](const EigenRecord& r) { return r.kind == kind && std::abs(r.energy - e) < tol; });
}

// Groups crossing cells that touch (including diagonally).
std::vector<std::pair<double, double>> clusters(const rootfind::ContourSet& c, double k1_floor) {
  std::vector<std::vector<std::pair<int, int>>> groups;
  for (const auto& cell : c.crossing_cells) {
    if (c.spec.k1(cell.first) < k1_floor) continue;
    bool placed = false;
    for (auto& g : groups) {
      for (const auto& other : g) {
        if (std::abs(other.first - cell.first) <= 1 && std::abs(other.second - cell.second) <= 1) {
          g.push_back(cell);
          placed = true;
          break;
        }
      }
      if (placed) break;
    }
    if (!placed) groups.push_back({cell});
  }
  std::vector<std::pair<double, double>> centres;
  for (const auto& g : groups) {
    double k1 = 0.0, k2 = 1e300;
    for (const auto& [i, j] : g) {
      k1 += c.spec.k1(i) / static_cast<double>(g.size());
      k2 = std::min(k2, c.spec.k2(j));
    }
    centres.emplace_back(k1, k2);
  }
  return centres;
}

}  // namespace

TEST_CASE("delta pair with three conjugate pairs") {
  rootfind::RootResult detail;
  const auto recs = rootfind::spectrum(PotentialModel::delta_pair(0.0, 5.653, 1.0), {}, &detail);
  CHECK(detail.complete);
  CHECK(detail.winding == 6);
  REQUIRE(recs.size() == 3);
  CHECK(has_energy(recs, EigenKind::CCPE, {15.456, 0.133}, 5e-3));
  CHECK(has_energy(recs, EigenKind::CCPE, {7.663, 1.949}, 5e-3));
  CHECK(has_energy(recs, EigenKind::CCPE, {2.420, 0.280}, 5e-3));
  for (const auto& r : recs) {
    REQUIRE(r.partner);
    CHECK(std::abs(r.partner->k + std::conj(r.zero.k)) < 1e-8);
  }
}

TEST_CASE("square well with bound states and a pair") {
  const auto recs = rootfind::spectrum(PotentialModel::square_well(-5.0, 2.0, 2.0));
  REQUIRE(recs.size() == 3);
  CHECK(has_energy(recs, EigenKind::RealBound, -0.083, 5e-3));
  CHECK(has_energy(recs, EigenKind::RealBound, -0.918, 5e-3));
  CHECK(has_energy(recs, EigenKind::CCPE, {-3.823, 1.601}, 5e-3));
}

TEST_CASE("window without roots") {
  const auto r = rootfind::find_zeros(PotentialModel::delta_pair(0.0, 5.653, 1.0), grid::Window{5.0, 6.0, 0.5, 1.0});
  CHECK(r.zeros.empty());
  CHECK(r.winding == 0);
  CHECK(r.complete);
}

TEST_CASE("free model has no eigenvalues") {
  rootfind::RootResult detail;
  CHECK(rootfind::spectrum(PotentialModel::delta_pair(0.0, 0.0, 1.0), {}, &detail).empty());
  CHECK(detail.winding == 0);
}

TEST_CASE("classification") {
  SUBCASE("bound state") {
    const auto recs = rootfind::classify({KZero{{0.0, 1.2}}});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].kind == EigenKind::RealBound);
    CHECK(recs[0].energy.real() == doctest::Approx(-1.44));
    CHECK(recs[0].energy.imag() == 0.0);
  }
  SUBCASE("spectral singularity") {
    const double k = std::sqrt(2.125);
    const auto recs = rootfind::classify({KZero{{k, 0.0}}, KZero{{-k, 0.0}}});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].kind == EigenKind::SS);
    CHECK(recs[0].energy.real() == doctest::Approx(2.125));
  }
  SUBCASE("conjugate pair") {
    const Complex k(1.4576618209402615, 0.99988898595137995);
    const auto recs = rootfind::classify({KZero{k}, KZero{-std::conj(k)}});
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].kind == EigenKind::CCPE);
    CHECK(recs[0].energy.real() == doctest::Approx(1.125).epsilon(1e-9));
    CHECK(recs[0].energy.imag() == doctest::Approx(2.915).epsilon(1e-9));
    REQUIRE(recs[0].partner);
  }
  SUBCASE("unpaired off-axis zero is reported") {
    std::vector<std::string> warnings;
    rootfind::classify({KZero{{1.0, 0.5}}}, 1e-6, &warnings);
    CHECK(!warnings.empty());
  }
}

TEST_CASE("spectrum is symmetric under k1 -> -k1") {
  const auto model = PotentialModel::scarf2(-5.0, 19.75);
  const auto a = rootfind::find_zeros(model, grid::Window{-4.0, 6.0, -0.01, 6.0});
  const auto b = rootfind::find_zeros(model, grid::Window{-6.0, 4.0, -0.01, 6.0});
  const auto ra = rootfind::classify(a.zeros);
  const auto rb = rootfind::classify(b.zeros);
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].kind == rb[i].kind);
    CHECK(std::abs(ra[i].energy - rb[i].energy) < 1e-9);
  }
}

TEST_CASE("contours of Re F and Im F") {
  const grid::Window w{-6.0, 6.0, 0.0, 4.0};
  const auto none = rootfind::contour_grid(PotentialModel::scarf2(5.0, 5.0), w, 121, 41);
  CHECK(none.crossing_cells.empty());
  CHECK(!none.re_zero.empty());

  const auto three = rootfind::contour_grid(PotentialModel::scarf2(-5.0, 19.75), w, 121, 41);
  const auto c = clusters(three, 0.5);
  CHECK(c.size() == 3);
  CHECK(std::count_if(c.begin(), c.end(), [](const auto& p) { return p.second == 0.0; }) == 1);
}

TEST_CASE("winding number of a polynomial") {
  const grid::ComplexFn f = [](Complex k) { return (k - Complex(1.0, 1.0)) * (k + Complex(2.0, -0.5)); };
  CHECK(rootfind::winding_count(f, grid::Window{-3.0, 3.0, -1.0, 2.0}) == 2);
  CHECK(rootfind::winding_count(f, grid::Window{0.5, 3.0, -1.0, 2.0}) == 1);
  const auto r = rootfind::find_zeros_fn(f, grid::Window{-3.0, 3.0, -1.0, 2.0});
  REQUIRE(r.zeros.size() == 2);
  CHECK(r.complete);
}

TEST_CASE("parallel grid matches the serial reference") {
  const auto model = PotentialModel::exponential(-5.0, 3.0, 2.0);
  const grid::ComplexFn f = [&](Complex k) { return models::f_of_k(model, k); };
  const grid::GridSpec spec{grid::Window{-3.0, 3.0, -0.01, 3.0}, 40, 21};
  const auto serial = grid::evaluate_grid_serial(f, spec);
  for (int jobs : {1, 2, 4}) {
    const auto par = grid::evaluate_grid(f, spec, jobs);
    CHECK(par.f == serial.f);
    CHECK(par.ok == serial.ok);
  }
}
