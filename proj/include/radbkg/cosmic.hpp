#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/environment.hpp"
#include "radbkg/phase_space.hpp"
#include "radbkg/rng.hpp"
#include "radbkg/species.hpp"

namespace radbkg {

// Continuous piecewise power law dJ/dE ~ E^p_i on [edges_i, edges_i+1],
// sampled exactly by segment choice + inverse CDF.
class PiecewisePowerLaw {
 public:
  PiecewisePowerLaw() = default;

  PiecewisePowerLaw(std::vector<double> edges_mev, std::vector<double> indices)
      : edges_(std::move(edges_mev)), indices_(std::move(indices)) {
    if (edges_.size() < 2 || indices_.size() != edges_.size() - 1)
      throw std::invalid_argument("power law: need n edges and n-1 indices");
    for (std::size_t i = 1; i < edges_.size(); ++i)
      if (!(edges_[i] > edges_[i - 1]) || !(edges_[i - 1] > 0.0))
        throw std::invalid_argument("power law: edges must be positive ascending");
    // continuity: amplitude of each segment relative to the first
    amps_.assign(indices_.size(), 1.0);
    for (std::size_t i = 1; i < indices_.size(); ++i)
      amps_[i] = amps_[i - 1] * std::pow(edges_[i], indices_[i - 1] - indices_[i]);
    weights_.resize(indices_.size());
    total_ = 0.0;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      weights_[i] = amps_[i] * segment_integral(edges_[i], edges_[i + 1], indices_[i]);
      total_ += weights_[i];
    }
  }

  double min_mev() const { return edges_.front(); }
  double max_mev() const { return edges_.back(); }

  double sample(RandomStream& rng) const {
    double pick = rng.uniform() * total_;
    std::size_t seg = weights_.size() - 1;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      acc += weights_[i];
      if (pick < acc) {
        seg = i;
        break;
      }
    }
    double u = rng.uniform();
    double a = edges_[seg], b = edges_[seg + 1], p = indices_[seg];
    if (std::abs(p + 1.0) < 1e-12) return a * std::pow(b / a, u);
    double q = p + 1.0;
    return std::pow(std::pow(a, q) + u * (std::pow(b, q) - std::pow(a, q)), 1.0 / q);
  }

  // CDF of the normalized law, for the sampling tests
  double cdf(double e_mev) const {
    if (e_mev <= edges_.front()) return 0.0;
    if (e_mev >= edges_.back()) return 1.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (e_mev >= edges_[i + 1]) {
        acc += weights_[i];
        continue;
      }
      acc += amps_[i] * segment_integral(edges_[i], e_mev, indices_[i]);
      break;
    }
    return acc / total_;
  }

 private:
  static double segment_integral(double a, double b, double p) {
    if (std::abs(p + 1.0) < 1e-12) return std::log(b / a);
    double q = p + 1.0;
    return (std::pow(b, q) - std::pow(a, q)) / q;
  }

  std::vector<double> edges_, indices_, amps_, weights_;
  double total_ = 0.0;
};

// Ground-level model of one cosmic-ray species: integral flux through a
// horizontal plane at sea level, spectral shape, zenith law I ~ cos^n(theta),
// and the exponential elevation scale height.
struct CosmicSpeciesModel {
  Species species = Species::mu_minus;
  double sea_level_flux_cm2_s = 0.0;  // downward crossings per cm^2 per s
  PiecewisePowerLaw spectrum;
  double zenith_exponent = 2.0;
  double scale_height_m = 5000.0;

  double rate_at(double elevation_m) const {
    return sea_level_flux_cm2_s * std::exp(elevation_m / scale_height_m);
  }
};

// Flux-weighted species rates at elevation H: a pure bookkeeping function,
// exact by construction (no Monte Carlo noise).
inline double total_cosmic_rate(const std::vector<CosmicSpeciesModel>& models,
                                double elevation_m) {
  double sum = 0.0;
  for (const auto& m : models) sum += m.rate_at(elevation_m);
  return sum;
}

// One downgoing primary on the generation plane (z = plane_z_cm), species
// chosen proportional to the elevation-scaled integral fluxes.
inline PhaseSpaceRecord sample_cosmic_primary(
    const std::vector<CosmicSpeciesModel>& models, const EnvironmentSpec& env,
    RandomStream& rng, double generation_area_cm2, double plane_z_cm) {
  if (models.empty()) throw std::invalid_argument("no cosmic species enabled");
  double total = total_cosmic_rate(models, env.elevation_m);
  if (!(total > 0.0)) throw std::invalid_argument("total cosmic flux is zero");
  double pick = rng.uniform() * total;
  const CosmicSpeciesModel* model = &models.back();
  double acc = 0.0;
  for (const auto& m : models) {
    acc += m.rate_at(env.elevation_m);
    if (pick < acc) {
      model = &m;
      break;
    }
  }
  PhaseSpaceRecord rec;
  rec.species = model->species;
  rec.energy_kev = model->spectrum.sample(rng) * 1e3;
  // zenith law: intensity ~ cos^n, so plane crossings ~ cos^(n+1);
  // cos(theta) = u^(1/(n+2))
  double mu = std::pow(rng.uniform(), 1.0 / (model->zenith_exponent + 2.0));
  double phi = 2.0 * constants::pi * rng.uniform();
  double s = std::sqrt(std::max(0.0, 1.0 - mu * mu));
  rec.direction = {s * std::cos(phi), s * std::sin(phi), -mu};
  double side = std::sqrt(generation_area_cm2);
  rec.position_cm = {rng.uniform(-0.5, 0.5) * side, rng.uniform(-0.5, 0.5) * side,
                     plane_z_cm};
  return rec;
}

// Default species set. Fluxes and shapes are deliberately simple and fully
// exposed through the config file; the zenith exponents are conventional
// choices, not measured values.
inline std::vector<CosmicSpeciesModel> default_cosmic_models() {
  std::vector<CosmicSpeciesModel> m;
  auto add = [&](Species sp, double flux, PiecewisePowerLaw pl, double zen, double lam) {
    CosmicSpeciesModel c;
    c.species = sp;
    c.sea_level_flux_cm2_s = flux;
    c.spectrum = std::move(pl);
    c.zenith_exponent = zen;
    c.scale_height_m = lam;
    m.push_back(std::move(c));
  };
  // spectra are clipped to the span of the shipped interaction tables
  // (photons 10 MeV, charged species 10 GeV)
  add(Species::mu_minus, 8.0e-3,
      PiecewisePowerLaw({200.0, 2000.0, 10000.0}, {-0.4, -2.0}), 2.0, 5000.0);
  add(Species::mu_plus, 10.2e-3,
      PiecewisePowerLaw({200.0, 2000.0, 10000.0}, {-0.4, -2.0}), 2.0, 5000.0);
  add(Species::electron, 3.0e-3,
      PiecewisePowerLaw({10.0, 100.0, 1000.0}, {-1.0, -2.2}), 2.0, 2500.0);
  add(Species::positron, 2.3e-3,
      PiecewisePowerLaw({10.0, 100.0, 1000.0}, {-1.0, -2.2}), 2.0, 2500.0);
  add(Species::gamma, 8.0e-3, PiecewisePowerLaw({1.0, 10.0}, {-1.8}), 2.0, 2500.0);
  add(Species::proton, 1.7e-4,
      PiecewisePowerLaw({50.0, 1000.0, 10000.0}, {-0.7, -2.2}), 3.0, 1000.0);
  add(Species::neutron, 6.4e-3,
      PiecewisePowerLaw({1.0, 10.0, 1000.0, 10000.0}, {-0.9, -1.5, -2.2}), 3.0,
      1000.0);
  return m;
}

}  // namespace radbkg
