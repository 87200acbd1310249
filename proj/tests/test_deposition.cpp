#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "radbkg/deposition.hpp"

using namespace radbkg;

namespace {

SubstrateSpec nominal_si() {
  SubstrateSpec s;
  s.material = &material("si");
  return s;
}

PhaseSpaceSet single(PhaseSpaceRecord r, double time_s = 1.0) {
  PhaseSpaceSet set;
  set.effective_time_s = time_s;
  set.generation_area_cm2 = 1.0;
  set.records.push_back(r);
  return set;
}

PhaseSpaceRecord vertical(Species sp, double e_kev) {
  PhaseSpaceRecord r;
  r.species = sp;
  r.energy_kev = e_kev;
  r.position_cm = {0.0, 0.0, 1.0};
  r.direction = {0.0, 0.0, -1.0};
  return r;
}

}  // namespace

TEST_CASE("substrate derived quantities", "[deposition]") {
  SubstrateSpec s = nominal_si();
  CHECK(s.tau() == 1.0);
  CHECK(s.area_mm2() == 100.0);
  CHECK_THAT(s.shape_ratio(), Catch::Matchers::WithinRel(0.2, 1e-12));
  s.thickness_um = 1500.0;
  CHECK(s.tau() == 3.0);
  CHECK_THAT(s.shape_ratio(), Catch::Matchers::WithinRel(0.2, 1e-12));
  s.thickness_um = 500.0;
  s.length_mm = 1.0;
  CHECK_THAT(s.shape_ratio(), Catch::Matchers::WithinRel(1.1, 1e-12));
  s.thickness_um = -1.0;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("a vertical MIP with straggling off deposits dE/dx times thickness",
          "[deposition]") {
  auto sub = nominal_si();
  RandomStream rng(3);
  DepositOptions opts;
  opts.straggling = false;
  opts.record_events = true;
  auto res = deposit(single(vertical(Species::mu_minus, 4.0e6)), sub, rng,
                     Binning::log(1.0, 1e5, 200), opts);
  REQUIRE(res.event_deposits_kev.size() == 1);
  double expected =
      stopping_power(*sub.material, Species::mu_minus, 4000.0) * 0.05 * 1e3;
  CHECK_THAT(res.event_deposits_kev[0], Catch::Matchers::WithinRel(expected, 2e-3));
}

TEST_CASE("straggled deposits never exceed the entering kinetic energy",
          "[deposition]") {
  auto sub = nominal_si();
  RandomStream rng(5);
  DepositOptions opts;
  opts.record_events = true;
  PhaseSpaceSet set;
  set.effective_time_s = 1.0;
  for (int i = 0; i < 3000; ++i) {
    PhaseSpaceRecord r;
    r.species = (i % 3 == 0)   ? Species::electron
                : (i % 3 == 1) ? Species::mu_minus
                               : Species::gamma;
    r.energy_kev = rng.uniform(30.0, 2000.0);
    auto d = rng.isotropic_direction();
    d[2] = -std::abs(d[2]) - 0.05;
    double nn = norm(d);
    for (auto& c : d) c /= nn;
    r.direction = d;
    r.position_cm = {rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4), 0.3};
    r.history = i;
    set.records.push_back(r);
  }
  auto res = deposit(set, sub, rng, Binning::log(1.0, 1e5, 200), opts);
  // single-record histories: each event deposit is bounded by one record energy
  for (double e : res.event_deposits_kev) CHECK(e <= 2000.0 * (1.0 + 1e-6));
  CHECK(res.histories == 3000);
}

TEST_CASE("zero-deposit histories are not events", "[deposition]") {
  auto sub = nominal_si();
  RandomStream rng(6);
  auto res = deposit(single(vertical(Species::neutron, 1e5)), sub, rng,
                     Binning::log(1.0, 1e5, 100));
  CHECK(res.spectrum.total_events() == 0.0);
  CHECK(res.histories == 1);

  // a miss deposits nothing either
  auto r = vertical(Species::mu_minus, 1e6);
  r.position_cm = {5.0, 5.0, 1.0};
  auto res2 = deposit(single(r), sub, rng, Binning::log(1.0, 1e5, 100));
  CHECK(res2.spectrum.total_events() == 0.0);
}

TEST_CASE("merge semantics", "[deposition]") {
  Binning b = Binning::log(1.0, 1e4, 50);
  DepositSpectrum s(b, 10.0);
  s.add_event(100.0);
  s.add_event(2500.0);

  SECTION("merging an empty spectrum only adds live time") {
    DepositSpectrum empty(b, 5.0);
    auto m = merge_spectra({s, empty});
    CHECK(m.live_time_s == 15.0);
    CHECK(m.total_events() == 2.0);
  }

  SECTION("merge is commutative") {
    DepositSpectrum t(b, 3.0);
    t.add_event(40.0);
    auto ab = merge_spectra({s, t});
    auto ba = merge_spectra({t, s});
    CHECK(ab.live_time_s == ba.live_time_s);
    CHECK(ab.counts == ba.counts);
    CHECK(ab.overflow == ba.overflow);
  }

  SECTION("merging k copies leaves rates unchanged") {
    auto m = merge_spectra({s, s, s, s});
    CHECK(m.live_time_s == 40.0);
    CHECK(m.total_events() == 8.0);
    CHECK(m.total_events() / m.live_time_s == s.total_events() / s.live_time_s);
  }

  SECTION("mismatched binning is refused") {
    DepositSpectrum other(Binning::log(1.0, 1e4, 60), 1.0);
    CHECK_THROWS_AS(merge_spectra({s, other}), std::invalid_argument);
  }

  SECTION("independent sources must share the exposure") {
    DepositSpectrum t(b, 10.0);
    t.add_event(700.0);
    auto m = merge_spectra({s, t}, MergeMode::independent_sources);
    CHECK(m.live_time_s == 10.0);
    CHECK(m.total_events() == 3.0);
    DepositSpectrum wrong(b, 4.0);
    CHECK_THROWS_AS(merge_spectra({s, wrong}, MergeMode::independent_sources),
                    std::invalid_argument);
  }
}

TEST_CASE("narrow wafers have more partial-chord events", "[deposition]") {
  // same muon sky over a 10x10 and a 10x1 mm^2 wafer: the narrow one sees a
  // larger fraction of low-deposit edge clippers
  RandomStream rng(9);
  auto make_set = [&](int n) {
    PhaseSpaceSet set;
    set.effective_time_s = 1.0;
    for (int i = 0; i < n; ++i) {
      PhaseSpaceRecord r;
      r.species = Species::mu_minus;
      r.energy_kev = 2e6;
      double mu = std::pow(rng.uniform(), 1.0 / 4.0);
      double phi = 2.0 * constants::pi * rng.uniform();
      double s = std::sqrt(1.0 - mu * mu);
      r.direction = {s * std::cos(phi), s * std::sin(phi), -mu};
      r.position_cm = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 1.0};
      r.history = i;
      set.records.push_back(r);
    }
    return set;
  };
  auto count_partial = [&](SubstrateSpec sub, const PhaseSpaceSet& set) {
    DepositOptions opts;
    opts.straggling = false;
    opts.record_events = true;
    RandomStream r2(10);
    auto res = deposit(set, sub, r2, Binning::log(1.0, 1e5, 200), opts);
    double full = stopping_power(*sub.material, Species::mu_minus, 2000.0) * 0.05 * 1e3;
    int partial = 0;
    for (double e : res.event_deposits_kev) partial += e < 0.5 * full;
    return std::make_pair(partial, static_cast<int>(res.event_deposits_kev.size()));
  };
  auto set = make_set(60000);
  SubstrateSpec wide = nominal_si();
  SubstrateSpec narrow = nominal_si();
  narrow.length_mm = 1.0;
  auto [pw, nw] = count_partial(wide, set);
  auto [pn, nn] = count_partial(narrow, set);
  REQUIRE(nw > 500);
  REQUIRE(nn > 100);
  CHECK(static_cast<double>(pn) / nn > static_cast<double>(pw) / nw);
}

TEST_CASE("gallium substrates absorb ~100 keV photons far more often",
          "[deposition]") {
  RandomStream rng(11);
  auto make_set = [&](int n) {
    PhaseSpaceSet set;
    set.effective_time_s = 1.0;
    for (int i = 0; i < n; ++i) {
      auto r = vertical(Species::gamma, 120.0);
      r.position_cm = {rng.uniform(-0.45, 0.45), rng.uniform(-0.45, 0.45), 1.0};
      r.history = i;
      set.records.push_back(r);
    }
    return set;
  };
  auto full_absorb_fraction = [&](const std::string& mat) {
    SubstrateSpec sub = nominal_si();
    sub.material = &material(mat);
    DepositOptions opts;
    opts.record_events = true;
    RandomStream r2(12);
    auto res = deposit(make_set(40000), sub, r2, Binning::log(1.0, 1e5, 200), opts);
    int full = 0;
    for (double e : res.event_deposits_kev) full += e > 0.9 * 120.0;
    return static_cast<double>(full) / 40000.0;
  };
  double si = full_absorb_fraction("si");
  double gaas = full_absorb_fraction("gaas");
  CHECK(gaas > 5.0 * si);
}

TEST_CASE("the re-aim sphere must enclose the substrate", "[deposition]") {
  auto sub = nominal_si();
  RandomStream rng(1);
  DepositOptions opts;
  opts.reaim_radius_cm = 0.5 * sub.box().half_diagonal();
  CHECK_THROWS_AS(
      deposit(single(vertical(Species::gamma, 500.0)), sub, rng,
              Binning::log(1.0, 1e5, 100), opts),
      std::invalid_argument);
}

TEST_CASE("spectrum files round-trip", "[deposition]") {
  DepositSpectrum s(Binning::log(1.0, 1e4, 64), 123.5);
  s.add_event(10.0);
  s.add_event(500.0);
  s.add_event(5e5);  // overflow
  std::string path = "spec_roundtrip_test.csv";
  s.write_csv(path);
  auto back = DepositSpectrum::read_csv(path);
  std::remove(path.c_str());
  CHECK(back.live_time_s == s.live_time_s);
  CHECK(back.counts == s.counts);
  CHECK(back.overflow == s.overflow);
  CHECK(back.binning == s.binning);
}
