#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "radbkg/decay_chains.hpp"
#include "radbkg/geometry.hpp"
#include "radbkg/klein_nishina.hpp"
#include "radbkg/phase_space.hpp"
#include "radbkg/rng.hpp"

namespace radbkg {

struct TransportCutoffs {
  double photon_kev = 10.0;
  double charged_kev = 20.0;
};

struct TransportResult {
  std::vector<PhaseSpaceRecord> exiting;
  std::vector<double> deposits_kev;  // one entry per geometry layer

  double deposit_total() const {
    double s = 0.0;
    for (double d : deposits_kev) s += d;
    return s;
  }
};

namespace detail {

constexpr double kEdgeNudge = 1e-9;  // cm, push across layer boundaries

inline double boundary_distance(const SlabGeometry& geom, int layer, double z,
                                double dz) {
  if (dz > 0.0) {
    double top = geom.layer_bottom_cm(layer) + geom.layers[layer].thickness_cm;
    return (top - z) / dz;
  }
  if (dz < 0.0) return (geom.layer_bottom_cm(layer) - z) / dz;
  return std::numeric_limits<double>::infinity();
}

// Straight-line continuous-slowing-down walk of a charged particle. Deposits
// energy per layer; appends an exiting record if the particle escapes with
// more than the cutoff.
inline void csda_walk(PhaseSpaceRecord rec, const SlabGeometry& geom,
                      const TransportCutoffs& cutoffs, TransportResult& out) {
  double t_mev = rec.energy_kev * 1e-3;
  Vec3 pos = rec.position_cm;
  const Vec3& dir = rec.direction;
  while (true) {
    int layer = geom.locate(pos[2]);
    if (layer < 0 || layer >= static_cast<int>(geom.layers.size())) {
      bool leaving = (layer < 0) ? dir[2] < 0.0 : dir[2] > 0.0;
      if (geom.layers.empty()) leaving = true;
      if (leaving) {
        rec.position_cm = pos;
        rec.energy_kev = t_mev * 1e3;
        out.exiting.push_back(rec);
        return;
      }
      // re-enter the stack
      double z_target = (layer < 0) ? 0.0 : geom.total_thickness_cm();
      double step = (z_target - pos[2]) / dir[2] + kEdgeNudge;
      for (int i = 0; i < 3; ++i) pos[i] += step * dir[i];
      continue;
    }
    const MaterialDef& mat = *geom.layers[layer].material;
    double d_boundary = boundary_distance(geom, layer, pos[2], dir[2]);
    double reachable = csda_range(mat, rec.species, t_mev);
    if (reachable <= d_boundary) {
      // stops in this layer
      out.deposits_kev[layer] += t_mev * 1e3;
      return;
    }
    double t_after = slow_down(mat, rec.species, t_mev, d_boundary);
    out.deposits_kev[layer] += (t_mev - t_after) * 1e3;
    t_mev = t_after;
    if (t_mev * 1e3 <= cutoffs.charged_kev) {
      out.deposits_kev[layer] += t_mev * 1e3;
      return;
    }
    double step = d_boundary + kEdgeNudge;
    for (int i = 0; i < 3; ++i) pos[i] += step * dir[i];
  }
}

inline void spawn_electron(Species sp, double t_kev, const Vec3& pos, const Vec3& dir,
                           std::uint64_t history, double weight,
                           const SlabGeometry& geom, const TransportCutoffs& cutoffs,
                           TransportResult& out) {
  int layer = geom.locate(pos[2]);
  if (t_kev <= cutoffs.charged_kev) {
    if (layer >= 0 && layer < static_cast<int>(geom.layers.size()))
      out.deposits_kev[layer] += t_kev;
    return;
  }
  PhaseSpaceRecord e;
  e.species = sp;
  e.energy_kev = t_kev;
  e.position_cm = pos;
  e.direction = dir;
  e.weight = weight;
  e.history = history;
  csda_walk(e, geom, cutoffs, out);
}

}  // namespace detail

// Photon transport through the slab stack: exponential free paths, process
// choice proportional to the per-process attenuation, Klein-Nishina Compton
// sampling. Photoabsorption and pair production convert to electrons, which
// are transported by straight-line CSDA. Pair rest-mass energy (1022 keV) is
// deposited at the vertex; annihilation photons are not tracked.
inline TransportResult transport_photon(const PhaseSpaceRecord& record,
                                        const SlabGeometry& geom, RandomStream& rng,
                                        const TransportCutoffs& cutoffs = {}) {
  if (record.species != Species::gamma)
    throw std::invalid_argument("transport_photon: record is not a photon");
  geom.validate();
  TransportResult out;
  out.deposits_kev.assign(geom.layers.empty() ? 1 : geom.layers.size(), 0.0);

  struct Photon {
    double e_kev;
    Vec3 pos;
    Vec3 dir;
  };
  std::vector<Photon> stack{{record.energy_kev, record.position_cm, record.direction}};

  while (!stack.empty()) {
    Photon ph = stack.back();
    stack.pop_back();
    while (true) {
      int layer = geom.locate(ph.pos[2]);
      if (geom.layers.empty() || layer < 0 ||
          layer >= static_cast<int>(geom.layers.size())) {
        bool leaving = geom.layers.empty() || (layer < 0 ? ph.dir[2] < 0.0 : ph.dir[2] > 0.0);
        if (leaving) {
          PhaseSpaceRecord r = record;
          r.energy_kev = ph.e_kev;
          r.position_cm = ph.pos;
          r.direction = ph.dir;
          out.exiting.push_back(r);
          break;
        }
        double z_target = (layer < 0) ? 0.0 : geom.total_thickness_cm();
        double step = (z_target - ph.pos[2]) / ph.dir[2] + detail::kEdgeNudge;
        for (int i = 0; i < 3; ++i) ph.pos[i] += step * ph.dir[i];
        continue;
      }
      const MaterialDef& mat = *geom.layers[layer].material;
      double mu_pe = attenuation_coefficient(mat, ph.e_kev, Process::photoelectric);
      double mu_c = attenuation_coefficient(mat, ph.e_kev, Process::compton);
      double mu_pp = attenuation_coefficient(mat, ph.e_kev, Process::pair);
      double mu = mu_pe + mu_c + mu_pp;
      double free_path = rng.exponential() / mu;
      double d_boundary = detail::boundary_distance(geom, layer, ph.pos[2], ph.dir[2]);
      if (free_path >= d_boundary) {
        double step = d_boundary + detail::kEdgeNudge;
        for (int i = 0; i < 3; ++i) ph.pos[i] += step * ph.dir[i];
        continue;
      }
      for (int i = 0; i < 3; ++i) ph.pos[i] += free_path * ph.dir[i];
      double u = rng.uniform() * mu;
      if (u < mu_pe) {
        // photoabsorption: full energy to a forward electron
        detail::spawn_electron(Species::electron, ph.e_kev, ph.pos, ph.dir,
                               record.history, record.weight, geom, cutoffs, out);
        break;
      }
      if (u < mu_pe + mu_c) {
        auto kn = sample_klein_nishina(ph.e_kev, rng);
        auto kin = compton_kinematics(ph.dir, ph.e_kev, kn.scattered_kev, kn.cos_theta, rng);
        detail::spawn_electron(Species::electron, ph.e_kev - kn.scattered_kev, ph.pos,
                               kin.electron_dir, record.history, record.weight, geom,
                               cutoffs, out);
        if (kn.scattered_kev <= cutoffs.photon_kev) {
          out.deposits_kev[layer] += kn.scattered_kev;
          break;
        }
        ph.e_kev = kn.scattered_kev;
        ph.dir = kin.photon_dir;
        continue;
      }
      {
        // pair production: kinetic energy split uniformly between e+ and e-
        double t_pair = std::max(0.0, ph.e_kev - constants::pair_threshold_kev);
        out.deposits_kev[layer] += constants::pair_threshold_kev;
        double f = rng.uniform();
        detail::spawn_electron(Species::positron, f * t_pair, ph.pos, ph.dir,
                               record.history, record.weight, geom, cutoffs, out);
        detail::spawn_electron(Species::electron, (1.0 - f) * t_pair, ph.pos, ph.dir,
                               record.history, record.weight, geom, cutoffs, out);
        break;
      }
    }
  }
  if (geom.layers.empty()) out.deposits_kev.clear();
  return out;
}

// CSDA transport of e+-, mu+-, p through the stack.
inline TransportResult transport_charged(const PhaseSpaceRecord& record,
                                         const SlabGeometry& geom, RandomStream& rng,
                                         const TransportCutoffs& cutoffs = {}) {
  (void)rng;  // CSDA stage-1 transport is deterministic
  if (!is_charged(record.species))
    throw std::invalid_argument("transport_charged: species is not charged");
  geom.validate();
  TransportResult out;
  out.deposits_kev.assign(geom.layers.empty() ? 1 : geom.layers.size(), 0.0);
  if (geom.layers.empty()) {
    out.exiting.push_back(record);
    out.deposits_kev.clear();
    return out;
  }
  detail::csda_walk(record, geom, cutoffs, out);
  return out;
}

// Neutron attenuation by a single removal cross section (cm^2/g): exponential
// survival, survivors unchanged in energy, absorbed neutrons deposit locally.
inline TransportResult transport_neutron(const PhaseSpaceRecord& record,
                                         const SlabGeometry& geom, RandomStream& rng,
                                         double removal_cm2_g) {
  if (record.species != Species::neutron)
    throw std::invalid_argument("transport_neutron: record is not a neutron");
  geom.validate();
  TransportResult out;
  out.deposits_kev.assign(geom.layers.empty() ? 1 : geom.layers.size(), 0.0);
  PhaseSpaceRecord rec = record;
  Vec3 pos = rec.position_cm;
  while (true) {
    int layer = geom.locate(pos[2]);
    if (geom.layers.empty() || layer < 0 || layer >= static_cast<int>(geom.layers.size())) {
      bool leaving =
          geom.layers.empty() || (layer < 0 ? rec.direction[2] < 0.0 : rec.direction[2] > 0.0);
      if (leaving) {
        rec.position_cm = pos;
        out.exiting.push_back(rec);
        break;
      }
      double z_target = (layer < 0) ? 0.0 : geom.total_thickness_cm();
      double step = (z_target - pos[2]) / rec.direction[2] + detail::kEdgeNudge;
      for (int i = 0; i < 3; ++i) pos[i] += step * rec.direction[i];
      continue;
    }
    double mu = removal_cm2_g * geom.layers[layer].material->density;
    double free_path = mu > 0.0 ? rng.exponential() / mu
                                : std::numeric_limits<double>::infinity();
    double d_boundary = detail::boundary_distance(geom, layer, pos[2], rec.direction[2]);
    if (free_path >= d_boundary) {
      double step = d_boundary + detail::kEdgeNudge;
      for (int i = 0; i < 3; ++i) pos[i] += step * rec.direction[i];
      continue;
    }
    out.deposits_kev[layer] += rec.energy_kev;  // removed from the beam
    break;
  }
  if (geom.layers.empty()) out.deposits_kev.clear();
  return out;
}

// Stage-1 source run for terrestrial gammas: n_decays parent decays uniform
// in the emission layer, isotropic emission, secular-equilibrium line
// sampling. Returns particles leaving the top surface and the effective
// source time n / (total activity x slab mass).
inline std::pair<PhaseSpaceSet, double> simulate_slab_emission(
    const std::map<ChainId, double>& activities_bq_kg, const SlabGeometry& geom,
    std::uint64_t n_decays, RandomStream& rng, double generation_area_cm2,
    const TransportCutoffs& cutoffs = {},
    const std::string& data_dir = default_data_dir()) {
  geom.validate();
  if (n_decays == 0) throw std::invalid_argument("n_decays must be positive");
  if (geom.emission_layer < 0) throw std::invalid_argument("no emission layer designated");
  const auto& layer = geom.layers[geom.emission_layer];

  double a_total = 0.0;
  std::vector<std::pair<const DecayChain*, double>> cdf;
  for (const auto& [id, a] : activities_bq_kg) {
    if (a < 0.0) throw std::invalid_argument("negative activity");
    if (a == 0.0) continue;
    a_total += a;
    cdf.emplace_back(&decay_chain(id, data_dir), a_total);
  }
  if (a_total <= 0.0) throw std::invalid_argument("total activity is zero");

  double mass_kg =
      layer.material->density * generation_area_cm2 * layer.thickness_cm * 1e-3;
  double effective_time_s = static_cast<double>(n_decays) / (a_total * mass_kg);

  double z0 = geom.layer_bottom_cm(geom.emission_layer);
  double z_top = geom.total_thickness_cm();
  double side = std::sqrt(generation_area_cm2);

  PhaseSpaceSet set;
  set.effective_time_s = effective_time_s;
  set.generation_area_cm2 = generation_area_cm2;
  for (std::uint64_t n = 0; n < n_decays; ++n) {
    double pick = rng.uniform() * a_total;
    const DecayChain* chain = cdf.back().first;
    for (const auto& [c, edge] : cdf)
      if (pick < edge) {
        chain = c;
        break;
      }
    auto lines = sample_decay_emission(*chain, rng);
    if (lines.empty()) continue;
    PhaseSpaceRecord primary;
    primary.history = n;
    primary.position_cm = {rng.uniform(-0.5, 0.5) * side, rng.uniform(-0.5, 0.5) * side,
                           z0 + rng.uniform() * layer.thickness_cm};
    for (double e_kev : lines) {
      primary.energy_kev = e_kev;
      primary.direction = rng.isotropic_direction();
      auto result = transport_photon(primary, geom, rng, cutoffs);
      for (auto& rec : result.exiting)
        if (rec.position_cm[2] >= z_top && rec.direction[2] > 0.0)
          set.records.push_back(rec);
    }
  }
  return {std::move(set), effective_time_s};
}

}  // namespace radbkg
