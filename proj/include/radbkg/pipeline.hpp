#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "radbkg/config.hpp"
#include "radbkg/cosmic.hpp"
#include "radbkg/deposition.hpp"
#include "radbkg/reaiming.hpp"
#include "radbkg/transport.hpp"

namespace radbkg {

// Full two-stage run: stage-1 slab transport, re-aiming onto the substrate
// sphere, stage-2 deposition. Work is split into fixed-size chunks with
// per-chunk random streams derived from (seed, chunk index), so the result
// is a function of seed and history count alone, not of the thread count.
struct RunOutput {
  PhaseSpaceSet phase_space;  // re-aimed stage-1 output
  DepositSpectrum spectrum;
  std::vector<double> event_deposits_kev;
  std::uint64_t histories = 0;
};

enum class Stage { gamma, cosmic };

struct RunSettings {
  Stage stage = Stage::gamma;
  std::uint64_t histories = 1000000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool keep_phase_space = true;
  std::string data_dir = default_data_dir();
};

namespace detail {

constexpr std::uint64_t kChunkSize = 65536;

struct ChunkResult {
  PhaseSpaceSet phase_space;
  DepositResult dep;
};

template <typename ChunkFn>
RunOutput run_chunked(const RunSettings& rs, const Binning& binning, ChunkFn&& fn) {
  std::uint64_t n_chunks = (rs.histories + kChunkSize - 1) / kChunkSize;
  std::vector<ChunkResult> results(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      std::uint64_t n = std::min(kChunkSize, rs.histories - c * kChunkSize);
      results[c] = fn(c, n);
    }
  };
  unsigned n_threads = std::max(1u, rs.threads);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  RunOutput out;
  out.spectrum = DepositSpectrum(binning, 0.0);
  for (auto& r : results) {
    if (rs.keep_phase_space) {
      out.phase_space.records.insert(out.phase_space.records.end(),
                                     r.phase_space.records.begin(),
                                     r.phase_space.records.end());
      out.phase_space.effective_time_s += r.phase_space.effective_time_s;
      out.phase_space.generation_area_cm2 = r.phase_space.generation_area_cm2;
    }
    for (std::size_t b = 0; b < out.spectrum.counts.size(); ++b)
      out.spectrum.counts[b] += r.dep.spectrum.counts[b];
    out.spectrum.overflow += r.dep.spectrum.overflow;
    out.spectrum.live_time_s += r.dep.spectrum.live_time_s;
    out.histories += r.dep.histories;
    out.event_deposits_kev.insert(out.event_deposits_kev.end(),
                                  r.dep.event_deposits_kev.begin(),
                                  r.dep.event_deposits_kev.end());
  }
  return out;
}

}  // namespace detail

inline RunOutput run_pipeline(const Config& config, const RunSettings& rs) {
  const auto substrate = config.substrate(rs.data_dir);
  const auto env = config.environment();
  const auto cutoffs = config.cutoffs();
  const double generation_area = config.number("mc.generation_area");
  const double removal = config.number("mc.neutron_removal");
  const bool straggling = config.flag("mc.straggling");
  const bool record_events = config.flag("mc.record_events");
  const Binning binning =
      Binning::log(config.number("mc.spectrum_min"), config.number("mc.spectrum_max"),
                   config.count("mc.spectrum_bins"));

  ReaimTarget target;
  target.radius_cm =
      config.number("mc.sphere_radius_scale") * substrate.box().half_diagonal();
  target.generation_area_cm2 = generation_area;
  target.validate();

  DepositOptions dep_opts;
  dep_opts.straggling = straggling;
  dep_opts.record_events = record_events;
  dep_opts.reaim_radius_cm = target.radius_cm;
  dep_opts.cutoffs = cutoffs;

  const MaterialDef& concrete = material("concrete", rs.data_dir);
  const MaterialDef& aluminum = material("aluminum", rs.data_dir);

  if (rs.stage == Stage::gamma) {
    SlabGeometry geom;
    geom.layers.push_back({&concrete, config.number("mc.slab_thickness")});
    if (env.aluminum_shell_cm > 0.0)
      geom.layers.push_back({&aluminum, env.aluminum_shell_cm});
    geom.emission_layer = 0;
    return detail::run_chunked(
        rs, binning, [&](std::uint64_t chunk, std::uint64_t n) {
          RandomStream rng1(rs.seed, 3 * chunk);
          RandomStream rng2(rs.seed, 3 * chunk + 1);
          RandomStream rng3(rs.seed, 3 * chunk + 2);
          detail::ChunkResult res;
          auto [set, time_s] = simulate_slab_emission(
              env.activities_bq_kg, geom, n, rng1, generation_area, cutoffs, rs.data_dir);
          res.phase_space = reaim(set, target, rng2);
          res.dep = deposit(res.phase_space, substrate, rng3, binning, dep_opts);
          return res;
        });
  }

  // cosmic: primaries above the ceiling, stack is aluminum below concrete
  SlabGeometry geom;
  if (env.aluminum_shell_cm > 0.0) geom.layers.push_back({&aluminum, env.aluminum_shell_cm});
  if (env.ceiling_concrete_cm > 0.0)
    geom.layers.push_back({&concrete, env.ceiling_concrete_cm});
  const auto models = config.cosmic_models();
  const double rate = total_cosmic_rate(models, env.elevation_m);  // per cm^2 s
  const double z_top = geom.total_thickness_cm();

  return detail::run_chunked(rs, binning, [&, z_top](std::uint64_t chunk, std::uint64_t n) {
    RandomStream rng1(rs.seed, 3 * chunk);
    RandomStream rng2(rs.seed, 3 * chunk + 1);
    RandomStream rng3(rs.seed, 3 * chunk + 2);
    detail::ChunkResult res;
    PhaseSpaceSet set;
    set.generation_area_cm2 = generation_area;
    set.effective_time_s = static_cast<double>(n) / (rate * generation_area);
    for (std::uint64_t i = 0; i < n; ++i) {
      PhaseSpaceRecord primary =
          sample_cosmic_primary(models, env, rng1, generation_area, z_top);
      primary.history = i;
      TransportResult tr;
      switch (primary.species) {
        case Species::gamma: tr = transport_photon(primary, geom, rng1, cutoffs); break;
        case Species::neutron: tr = transport_neutron(primary, geom, rng1, removal); break;
        default: tr = transport_charged(primary, geom, rng1, cutoffs); break;
      }
      for (auto& rec : tr.exiting)
        if (rec.direction[2] < 0.0 && rec.position_cm[2] <= 0.0)
          set.records.push_back(rec);
    }
    res.phase_space = reaim(set, target, rng2);
    res.dep = deposit(res.phase_space, substrate, rng3, binning, dep_opts);
    return res;
  });
}

}  // namespace radbkg
