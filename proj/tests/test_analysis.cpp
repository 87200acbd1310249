#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "radbkg/analysis.hpp"

using namespace radbkg;

TEST_CASE("an empty spectrum gives zero rates", "[analysis]") {
  DepositSpectrum s(Binning::log(1.0, 1e5, 100), 42.0);
  auto out = spectrum_to_rates(s);
  CHECK(out.rates.r_per_s == 0.0);
  CHECK(out.rates.m_per_s == 0.0);
  CHECK(out.rates.p_kev_per_s == 0.0);
}

TEST_CASE("a single 2 MeV event in 10 seconds", "[analysis]") {
  DepositSpectrum s(Binning::log(1.0, 1e5, 200), 10.0);
  s.add_event(2000.0);
  auto out = spectrum_to_rates(s);
  CHECK(out.rates.r_per_s == 0.1);
  CHECK(out.rates.m_per_s == 0.1);
  CHECK_THAT(out.rates.p_kev_per_s, Catch::Matchers::WithinAbs(200.0, 6.0));
  CHECK(std::abs(out.rates.p_kev_per_s - 200.0) <= out.p_quantization_kev_per_s);
}

TEST_CASE("sub-MeV spectra have zero M but positive R", "[analysis]") {
  DepositSpectrum s(Binning::log(1.0, 1e5, 200), 5.0);
  for (double e : {12.0, 170.0, 900.0}) s.add_event(e);
  auto out = spectrum_to_rates(s);
  CHECK(out.rates.m_per_s == 0.0);
  CHECK(out.rates.r_per_s == 3.0 / 5.0);
}

TEST_CASE("the M threshold uses the lower bin edge", "[analysis]") {
  Binning b = Binning::linear(0.0, 2000.0, 2);  // edges 0, 1000, 2000
  DepositSpectrum s(b, 1.0);
  s.add_event(1000.0);  // lands in [1000, 2000): counts toward M
  s.add_event(999.9);   // in [0, 1000): does not
  auto out = spectrum_to_rates(s, 1000.0);
  CHECK(out.rates.m_per_s == 1.0);
  CHECK(out.rates.r_per_s == 2.0);
}

TEST_CASE("rates are invariant under merging partitions of one run", "[analysis]") {
  Binning b = Binning::log(1.0, 1e5, 150);
  RandomStream rng(3);
  DepositSpectrum whole(b, 20.0);
  DepositSpectrum part1(b, 12.0), part2(b, 8.0);
  for (int i = 0; i < 1000; ++i) {
    double e = std::exp(rng.uniform(std::log(2.0), std::log(5e4)));
    whole.add_event(e);
    (i % 2 ? part1 : part2).add_event(e);
  }
  auto merged = merge_spectra({part1, part2});
  auto a = spectrum_to_rates(whole);
  auto m = spectrum_to_rates(merged);
  CHECK(a.rates.r_per_s == m.rates.r_per_s);
  CHECK(a.rates.m_per_s == m.rates.m_per_s);
  CHECK(a.rates.p_kev_per_s == m.rates.p_kev_per_s);
  CHECK(a.rates.r_per_s >= a.rates.m_per_s);
}

TEST_CASE("bin-center power stays within the documented quantization bound",
          "[analysis]") {
  Binning b = Binning::log(1.0, 1e5, 120);
  RandomStream rng(4);
  DepositSpectrum s(b, 7.0);
  double exact = 0.0;
  for (int i = 0; i < 5000; ++i) {
    double e = std::exp(rng.uniform(0.0, std::log(9e4)));
    s.add_event(e);
    exact += e;
  }
  auto out = spectrum_to_rates(s);
  CHECK(std::abs(out.rates.p_kev_per_s - exact / 7.0) <= out.p_quantization_kev_per_s);
}

TEST_CASE("zero live time is refused", "[analysis]") {
  DepositSpectrum s(Binning::log(1.0, 1e5, 10), 0.0);
  CHECK_THROWS_AS(spectrum_to_rates(s), std::invalid_argument);
}

TEST_CASE("power-law fit recovers an exact model", "[analysis]") {
  std::vector<std::pair<double, double>> pts;
  for (double x : {0.5, 1.0, 2.0, 5.0, 30.0}) pts.emplace_back(x, 3.0 * x * x);
  auto f = fit_power_law(pts);
  CHECK_THAT(f.amplitude, Catch::Matchers::WithinRel(3.0, 1e-12));
  CHECK_THAT(f.exponent, Catch::Matchers::WithinAbs(2.0, 1e-12));
  CHECK(f.residual_rms < 1e-12);
  CHECK(f.n_points == 5);
}

TEST_CASE("degenerate or nonpositive fit inputs are refused", "[analysis]") {
  CHECK_THROWS_AS(fit_power_law({{1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law({{1.0, 2.0}, {2.0, 3.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_power_law({{1.0, 2.0}, {2.0, -3.0}, {3.0, 1.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      fit_power_law({{1.0, 2.0}, {1.0, 3.0}, {1.0, 1.0}}),  // identical abscissae
      std::invalid_argument);
  CHECK_THROWS_AS(fit_exponential({{0.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_exponential({{0.0, 1.0}, {1.0, 0.0}, {2.0, 2.0}}),
                  std::invalid_argument);
}

TEST_CASE("exponential fit recovers the scale height exactly", "[analysis]") {
  std::vector<std::pair<double, double>> pts;
  for (double h : {0.0, 500.0, 1000.0, 2000.0, 3000.0})
    pts.emplace_back(h, 2.0 * std::exp(h / 5000.0));
  auto f = fit_exponential(pts);
  CHECK_FALSE(f.diverged);
  CHECK_THAT(f.rate_at_zero, Catch::Matchers::WithinRel(2.0, 1e-9));
  CHECK_THAT(f.scale_height, Catch::Matchers::WithinRel(5000.0, 1e-9));
  CHECK(f.residual_rms < 1e-12);
}

TEST_CASE("a constant series is reported as divergent, not a number", "[analysis]") {
  std::vector<std::pair<double, double>> pts = {
      {0.0, 3.0}, {1000.0, 3.0}, {2000.0, 3.0}, {3000.0, 3.0}};
  auto f = fit_exponential(pts);
  CHECK(f.diverged);
  CHECK(std::isinf(f.scale_height));
}

TEST_CASE("Poisson weights shift the fit toward high-count points", "[analysis]") {
  std::vector<std::pair<double, double>> pts = {
      {1.0, 1.0}, {10.0, 9.0}, {100.0, 110.0}};
  auto unweighted = fit_power_law(pts);
  auto weighted = fit_power_law(pts, {1.0, 9.0, 110.0});
  CHECK(unweighted.exponent != weighted.exponent);
  CHECK_THAT(weighted.exponent, Catch::Matchers::WithinAbs(1.0, 0.1));
}
