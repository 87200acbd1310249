#pragma once

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/decay_chains.hpp"
#include "radbkg/deposition.hpp"
#include "radbkg/environment.hpp"

namespace radbkg {

enum class SourceId { k40, th232a, th232b, u238a, u238b, cosmic };

inline constexpr std::array<SourceId, 6> all_sources = {
    SourceId::k40,    SourceId::th232a, SourceId::th232b,
    SourceId::u238a,  SourceId::u238b,  SourceId::cosmic};

inline std::string_view source_token(SourceId s) {
  switch (s) {
    case SourceId::k40: return "k40";
    case SourceId::th232a: return "th232a";
    case SourceId::th232b: return "th232b";
    case SourceId::u238a: return "u238a";
    case SourceId::u238b: return "u238b";
    case SourceId::cosmic: return "cosmic";
  }
  throw std::logic_error("bad source id");
}

inline bool is_gamma_chain(SourceId s) { return s != SourceId::cosmic; }

inline ChainId source_chain(SourceId s) {
  switch (s) {
    case SourceId::k40: return ChainId::k40;
    case SourceId::th232a: return ChainId::th232a;
    case SourceId::th232b: return ChainId::th232b;
    case SourceId::u238a: return ChainId::u238a;
    case SourceId::u238b: return ChainId::u238b;
    default: throw std::invalid_argument("cosmic is not a decay chain");
  }
}

// One row of the summary-rate parameter table: the charged-particle floor c,
// gamma slope g, power p with thickness exponent beta, MeV-plus rate m with
// exponent alpha, and the gallium density surcharge rho_Ga.
struct SourceTerm {
  double c_per_s;
  double g_per_s;
  double p_kev_per_s;
  double beta;
  double m_per_s;
  double alpha;
  double rho_ga_g_cm3;  // gamma chains only
};

struct SourceParams {
  std::map<SourceId, SourceTerm> terms;
  double g_cr_gallium_per_s = 7.0e-3;  // replaces g_CR on gallium substrates

  static SourceParams defaults() {
    SourceParams p;
    p.terms[SourceId::k40]    = {2.2e-3,  6.8e-3,  1.4,  1.12, 15e-6,  5.0, 2.0};
    p.terms[SourceId::th232a] = {0.6e-3,  4.9e-3,  0.5,  1.12, 2e-6,   5.0, 4.0};
    p.terms[SourceId::th232b] = {1.5e-3,  6.6e-3,  0.9,  1.12, 20e-6,  5.0, 4.0};
    p.terms[SourceId::u238a]  = {0.02e-3, 0.6e-3,  0.03, 1.12, 0.0,    5.0, 15.0};
    p.terms[SourceId::u238b]  = {1.9e-3, 11.7e-3,  1.4,  1.12, 13e-6,  5.0, 4.0};
    p.terms[SourceId::cosmic] = {40e-3,   1.4e-3,  8.0,  1.0,  180e-6, 1.8, 0.0};
    return p;
  }

  void validate() const {
    for (const auto& [id, t] : terms)
      if (t.c_per_s < 0 || t.g_per_s < 0 || t.p_kev_per_s < 0 || t.m_per_s < 0)
        throw std::invalid_argument("negative rate parameter for " +
                                    std::string(source_token(id)));
  }
};

struct RateTriple {
  double r_per_s = 0.0;
  double p_kev_per_s = 0.0;
  double m_per_s = 0.0;

  RateTriple& operator+=(const RateTriple& o) {
    r_per_s += o.r_per_s;
    p_kev_per_s += o.p_kev_per_s;
    m_per_s += o.m_per_s;
    return *this;
  }
};

enum class Quantity { event_rate, power, mev_rate };

struct Corrections {
  double ceiling = 1.0;
  double shape = 1.0;
  double density = 1.0;

  double product() const { return ceiling * shape * density; }
};

// The kappa_c, kappa_sh, kappa_rho multipliers for one source and quantity.
inline Corrections correction_factors(const SubstrateSpec& substrate,
                                      const EnvironmentSpec& env, SourceId source,
                                      Quantity quantity,
                                      const SourceParams& params = SourceParams::defaults()) {
  substrate.validate();
  env.validate();
  Corrections k;

  // ceiling: 2% loss per 10 cm of concrete beyond the nominal 20 cm, cosmic only
  if (source == SourceId::cosmic)
    k.ceiling = std::pow(0.98, (env.ceiling_concrete_cm - 20.0) / 10.0);

  // shape: linear in the side-to-top area ratio between the published anchors
  // (10x10 -> 1.0 at ratio 0.2; 10x1 -> 1.20 for R, 0.97 for P); unknown for M.
  // The anchors only cover ratios up to 1.1, so the input is clamped to [0, 2]
  // rather than extrapolated into pillar-like geometries.
  if (quantity != Quantity::mev_rate) {
    double anchor = quantity == Quantity::event_rate ? 1.20 : 0.97;
    double ratio = std::min(std::max(substrate.shape_ratio(), 0.0), 2.0);
    k.shape = 1.0 + (ratio - 0.2) / (1.1 - 0.2) * (anchor - 1.0);
  }

  // density
  double rel = substrate.material->relative_density;
  bool gallium = substrate.material->contains_gallium;
  if (quantity == Quantity::mev_rate) {
    k.density = std::pow(rel, 2.7);
  } else if (source == SourceId::cosmic) {
    // R_CR carries no density factor (the gallium case is handled through the
    // g_CR substitution); P_CR scales with relative density
    k.density = quantity == Quantity::power ? rel : 1.0;
  } else {
    double rho_eff = substrate.material->density;
    if (gallium) rho_eff += params.terms.at(source).rho_ga_g_cm3;
    k.density = rho_eff / constants::silicon_density_g_cm3;
  }
  return k;
}

// How the cosmic-ray relative intensity exp(H/lambda) is evaluated.
struct CrScaling {
  enum class Mode { single, species_split } mode = Mode::single;
  double lambda_m = 2000.0;  // single effective scale height
  // species-split alternative: weighted sum of three exponentials
  double lambda_mu_m = 5000.0;
  double lambda_nuclear_m = 1000.0;
  double lambda_em_m = 2500.0;
  double weight_mu = 0.62;
  double weight_nuclear = 0.15;
  double weight_em = 0.23;

  double relative_intensity(double elevation_m) const {
    if (mode == Mode::single) {
      if (!(lambda_m > 0.0)) throw std::invalid_argument("scale height must be > 0");
      return std::exp(elevation_m / lambda_m);
    }
    double wsum = weight_mu + weight_nuclear + weight_em;
    return (weight_mu * std::exp(elevation_m / lambda_mu_m) +
            weight_nuclear * std::exp(elevation_m / lambda_nuclear_m) +
            weight_em * std::exp(elevation_m / lambda_em_m)) /
           wsum;
  }
};

struct SourceRateEntry {
  SourceId source;
  double relative_activity;  // a_s / n_s, or exp(H/lambda) for cosmic rays
  RateTriple rates;
  Corrections kappa_r, kappa_p, kappa_m;
};

struct RateBreakdown {
  RateTriple total;
  std::vector<SourceRateEntry> per_source;
};

// Closed-form summary rates: each source contributes
//   [R, P, M] = (A/100 mm^2) a~ [c + g tau, p tau^beta, m tau^alpha] k_c k_sh k_rho
inline RateBreakdown compute_rates(const SubstrateSpec& substrate,
                                   const EnvironmentSpec& env,
                                   const SourceParams& params = SourceParams::defaults(),
                                   const CrScaling& cr = {}) {
  substrate.validate();
  env.validate();
  params.validate();
  double tau = substrate.tau();
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  double area_factor = substrate.area_mm2() / constants::nominal_area_mm2;
  bool gallium = substrate.material->contains_gallium;

  RateBreakdown out;
  for (SourceId s : all_sources) {
    const SourceTerm& t = params.terms.at(s);
    double rel_activity;
    if (s == SourceId::cosmic) {
      rel_activity = cr.relative_intensity(env.elevation_m);
    } else {
      double a = env.activity(source_chain(s));
      if (a < 0.0) throw std::invalid_argument("negative activity");
      rel_activity = a / nominal_activity(source_chain(s));
    }

    double g = t.g_per_s;
    if (s == SourceId::cosmic && gallium) g = params.g_cr_gallium_per_s;

    SourceRateEntry entry;
    entry.source = s;
    entry.relative_activity = rel_activity;
    entry.kappa_r = correction_factors(substrate, env, s, Quantity::event_rate, params);
    entry.kappa_p = correction_factors(substrate, env, s, Quantity::power, params);
    entry.kappa_m = correction_factors(substrate, env, s, Quantity::mev_rate, params);

    double base = area_factor * rel_activity;
    // kappa_rho multiplies the full (c + g tau) term, floor included; the
    // published corrections do not split the two contributions
    entry.rates.r_per_s = base * (t.c_per_s + g * tau) * entry.kappa_r.product();
    entry.rates.p_kev_per_s =
        base * t.p_kev_per_s * std::pow(tau, t.beta) * entry.kappa_p.product();
    entry.rates.m_per_s =
        base * t.m_per_s * std::pow(tau, t.alpha) * entry.kappa_m.product();

    out.total += entry.rates;
    out.per_source.push_back(entry);
  }
  return out;
}

}  // namespace radbkg
