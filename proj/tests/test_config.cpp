#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "radbkg/config.hpp"

using namespace radbkg;

TEST_CASE("defaults are complete and valid", "[config]") {
  Config c = Config::defaults();
  CHECK_NOTHROW(c.validate_domain());
  auto sub = c.substrate();
  CHECK(sub.thickness_um == 500.0);
  CHECK(sub.area_mm2() == 100.0);
  auto env = c.environment();
  CHECK(env.ceiling_concrete_cm == 20.0);
  CHECK(env.activity(ChainId::k40) == 400.0);
  CHECK(c.cosmic_models().size() == 7);
}

TEST_CASE("dump and reparse give the identical configuration", "[config]") {
  Config c = Config::defaults();
  std::string text = c.dump_string();
  Config back = Config::parse(text);
  CHECK(back == c);
  CHECK(back.dump_string() == text);
}

TEST_CASE("units are mandatory and normalized", "[config]") {
  Config a = Config::parse("[substrate]\nthickness = 0.5 mm\n");
  Config b = Config::parse("[substrate]\nthickness = 500 um\n");
  CHECK(a.number("substrate.thickness") == b.number("substrate.thickness"));
  CHECK(a.substrate().thickness_um == 500.0);

  CHECK_THROWS_AS(Config::parse("[substrate]\nthickness = 500\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[substrate]\nthickness = 500 parsec\n"), ConfigError);
  try {
    Config::parse("[substrate]\nthickness = 500 parsec\n");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("substrate.thickness") != std::string::npos);
    CHECK(msg.find("um") != std::string::npos);
  }
}

TEST_CASE("unknown keys are hard errors that name the key", "[config]") {
  try {
    Config::parse("[substrate]\nthicknes = 500 um\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("substrate.thicknes") != std::string::npos);
  }
  CHECK_THROWS_AS(Config::parse("stray = 1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[nosuch]\nkey = 1\n"), ConfigError);
}

TEST_CASE("malformed lines and values are refused", "[config]") {
  CHECK_THROWS_AS(Config::parse("[substrate\nthickness = 1 um\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[substrate]\nthickness 500 um\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[mc]\nstraggling = yes\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[mc]\nhistories = -5\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[mc]\nhistories = 1.5\n"), ConfigError);
}

TEST_CASE("comments and blank lines are ignored", "[config]") {
  Config c = Config::parse(
      "# a comment\n\n[substrate]\nmaterial = sio2  # inline comment\n");
  CHECK(c.str("substrate.material") == "sio2");
}

TEST_CASE("an unknown material is a config error listing the known set", "[config]") {
  Config c = Config::parse("[substrate]\nmaterial = diamond\n");
  try {
    c.substrate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    CHECK(msg.find("diamond") != std::string::npos);
    CHECK(msg.find("gaas") != std::string::npos);
  }
}

TEST_CASE("cosmic species can be restricted", "[config]") {
  Config c = Config::parse("[cosmic]\nspecies = mu-\n");
  auto models = c.cosmic_models();
  REQUIRE(models.size() == 1);
  CHECK(models[0].species == Species::mu_minus);
  CHECK(models[0].scale_height_m == 5000.0);
}

TEST_CASE("rate-model parameters are overridable", "[config]") {
  Config c = Config::parse("[sources]\ng_k40 = 0.01 /s\nalpha_k40 = 4.5\n");
  auto p = c.source_params();
  CHECK(p.terms[SourceId::k40].g_per_s == 0.01);
  CHECK(p.terms[SourceId::k40].alpha == 4.5);
  // untouched defaults stay at the table values
  CHECK(p.terms[SourceId::u238b].g_per_s == 11.7e-3);
}

TEST_CASE("spectrum lists parse with a shared unit suffix", "[config]") {
  Config c = Config::parse(
      "[cosmic]\nspectrum_edges_mu- = 0.2 2 10 GeV\nspectrum_indices_mu- = -0.5 -2.1\n");
  auto models = c.cosmic_models();
  for (const auto& m : models)
    if (m.species == Species::mu_minus) {
      CHECK(m.spectrum.min_mev() == 200.0);
      CHECK(m.spectrum.max_mev() == 10000.0);
    }
}
