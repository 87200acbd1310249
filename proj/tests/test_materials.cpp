#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "radbkg/materials.hpp"
#include "radbkg/rng.hpp"

using namespace radbkg;

TEST_CASE("all shipped materials load and satisfy their invariants", "[materials]") {
  for (const auto& name : known_materials()) {
    const MaterialDef& m = material(name);
    CHECK_NOTHROW(m.validate());
    CHECK(m.density > 0.0);
    double sum = 0.0;
    for (const auto& [el, w] : m.composition) sum += w;
    CHECK_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-6));
    CHECK_THAT(m.relative_density,
               Catch::Matchers::WithinAbs(m.density / 2.329, 1e-6));
  }
  CHECK(material("gan").contains_gallium);
  CHECK(material("gaas").contains_gallium);
  CHECK_FALSE(material("si").contains_gallium);
}

TEST_CASE("attenuation at a grid node is the tabulated value times density",
          "[materials]") {
  const MaterialDef& si = material("si");
  const auto& grid = si.attenuation.grid();
  std::size_t i = grid.size() / 2;
  double expected = 0.0;
  for (std::size_t c = 0; c < 3; ++c)
    expected += si.attenuation.column(c).values()[i];
  expected *= si.density;
  CHECK_THAT(attenuation_coefficient(si, grid[i], Process::total),
             Catch::Matchers::WithinRel(expected, 1e-12));
}

TEST_CASE("silicon at 1 MeV matches published attenuation tables within 2%",
          "[materials]") {
  // total mass attenuation (coherent excluded) for Si at 1 MeV: 0.0636 cm^2/g
  const MaterialDef& si = material("si");
  double mu = attenuation_coefficient(si, 1000.0, Process::total);
  CHECK_THAT(mu / si.density, Catch::Matchers::WithinRel(0.0636, 0.02));
}

TEST_CASE("total attenuation equals the sum over processes", "[materials]") {
  RandomStream rng(3);
  for (const auto& name : known_materials()) {
    const MaterialDef& m = material(name);
    for (int k = 0; k < 50; ++k) {
      double e = std::exp(rng.uniform(std::log(1.0), std::log(1e4)));
      double total = attenuation_coefficient(m, e, Process::total);
      double sum = attenuation_coefficient(m, e, Process::photoelectric) +
                   attenuation_coefficient(m, e, Process::compton) +
                   attenuation_coefficient(m, e, Process::pair);
      CHECK_THAT(total, Catch::Matchers::WithinRel(sum, 1e-9));
    }
  }
}

TEST_CASE("concrete stops the decay-chain gammas within a short attenuation length",
          "[materials]") {
  // The 50 cm source slab is effectively infinite because every chain gamma
  // is attenuated within ~11-12 cm. Exact tabulations give 1/mu = 11.1 cm at
  // the 2614.5 keV chain maximum and 11.9 cm at 3 MeV for 2.3 g/cm^3
  // concrete, so the often-quoted 11 cm holds below ~2.4 MeV and a 12.5 cm
  // bound covers the full range to 3 MeV.
  const MaterialDef& c = material("concrete");
  for (double e = 50.0; e <= 2400.0; e += 50.0) {
    double mu = attenuation_coefficient(c, e, Process::total);
    CHECK(1.0 / mu <= 11.0);
  }
  for (double e = 2400.0; e <= 3000.0; e += 50.0) {
    double mu = attenuation_coefficient(c, e, Process::total);
    CHECK(1.0 / mu <= 12.5);
  }
}

TEST_CASE("muon stopping power in silicon near the ionization minimum",
          "[materials]") {
  // ~1.66 MeV cm^2/g x 2.329 g/cm^3 at 300 MeV kinetic energy
  const MaterialDef& si = material("si");
  double dedx = stopping_power(si, Species::mu_minus, 300.0);
  CHECK_THAT(dedx, Catch::Matchers::WithinRel(1.66 * 2.329, 0.05));
}

TEST_CASE("stopping power at a grid node is the node value times density",
          "[materials]") {
  const MaterialDef& m = material("al2o3");
  const auto& grid = m.stopping.grid();
  std::size_t i = grid.size() / 3;
  for (Species s : {Species::electron, Species::positron, Species::mu_minus,
                    Species::mu_plus, Species::proton}) {
    double expected =
        m.stopping.column(MaterialDef::stopping_index(s)).values()[i] * m.density;
    CHECK_THAT(stopping_power(m, s, grid[i]), Catch::Matchers::WithinRel(expected, 1e-12));
  }
}

TEST_CASE("linear stopping scales with density at fixed mass stopping power",
          "[materials]") {
  const MaterialDef& si = material("si");
  const MaterialDef& sio2 = material("sio2");
  for (double t : {0.5, 5.0, 50.0, 500.0}) {
    double mass_si = stopping_power(si, Species::proton, t) / si.density;
    double mass_sio2 = stopping_power(sio2, Species::proton, t) / sio2.density;
    // by construction: linear dE/dx ratio at equal mass stopping = density ratio
    CHECK_THAT(stopping_power(si, Species::proton, t) / mass_si,
               Catch::Matchers::WithinRel(si.density, 1e-12));
    CHECK_THAT(stopping_power(sio2, Species::proton, t) / mass_sio2,
               Catch::Matchers::WithinRel(sio2.density, 1e-12));
  }
}

TEST_CASE("out-of-range queries and unknown species are refused", "[materials]") {
  const MaterialDef& si = material("si");
  CHECK_THROWS_AS(attenuation_coefficient(si, 0.5, Process::total), std::domain_error);
  CHECK_THROWS_AS(attenuation_coefficient(si, 2e4, Process::total), std::domain_error);
  CHECK_THROWS_AS(stopping_power(si, Species::proton, 2e4), std::domain_error);
  CHECK_THROWS_AS(stopping_power(si, Species::neutron, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(stopping_power(si, Species::gamma, 100.0), std::invalid_argument);
}

TEST_CASE("unknown materials are named along with the known set", "[materials]") {
  try {
    material("unobtainium");
    FAIL("expected a throw");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("unobtainium") != std::string::npos);
    CHECK(msg.find("si") != std::string::npos);
    CHECK(msg.find("concrete") != std::string::npos);
  }
}

TEST_CASE("CSDA ranges are consistent with slowing down", "[materials]") {
  const MaterialDef& si = material("si");
  for (Species s : {Species::electron, Species::mu_minus, Species::proton}) {
    for (double t : {1.0, 10.0, 100.0, 1000.0}) {
      double r = csda_range(si, s, t);
      CHECK(r > 0.0);
      // partial path, then the remaining range should complete the total
      double d = 0.4 * r;
      double t_after = slow_down(si, s, t, d);
      CHECK(t_after < t);
      CHECK_THAT(d + csda_range(si, s, t_after), Catch::Matchers::WithinRel(r, 1e-6));
      // walking the full range stops the particle
      CHECK(slow_down(si, s, t, r * 1.0001) == 0.0);
    }
  }
}
