#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/geometry.hpp"
#include "radbkg/histogram.hpp"
#include "radbkg/klein_nishina.hpp"
#include "radbkg/landau.hpp"
#include "radbkg/materials.hpp"
#include "radbkg/phase_space.hpp"
#include "radbkg/rng.hpp"
#include "radbkg/transport.hpp"

namespace radbkg {

// The wafer under study. tau and area are derived, never stored, so they can
// not drift out of sync with the fields.
struct SubstrateSpec {
  const MaterialDef* material = nullptr;
  double thickness_um = constants::nominal_thickness_um;
  double width_mm = 10.0;
  double length_mm = 10.0;

  double tau() const { return thickness_um / constants::nominal_thickness_um; }
  double area_mm2() const { return width_mm * length_mm; }

  // side-to-top area ratio evaluated at the nominal 500 um thickness: a pure
  // lateral-shape measure, so the thickness scaling laws stay factorized
  double shape_ratio() const {
    return 2.0 * (width_mm + length_mm) * 0.5 / area_mm2();
  }

  Box box() const {
    return Box{{0.05 * width_mm, 0.05 * length_mm, 0.5e-4 * thickness_um}};  // cm
  }

  void validate() const {
    if (material == nullptr) throw std::invalid_argument("substrate material not set");
    if (!(thickness_um > 0.0 && width_mm > 0.0 && length_mm > 0.0))
      throw std::invalid_argument("substrate dimensions must be positive");
  }
};

// Binned per-event deposited energy with the live time it represents.
struct DepositSpectrum {
  Binning binning;
  std::vector<double> counts;
  double overflow = 0.0;
  double live_time_s = 0.0;

  DepositSpectrum() = default;
  explicit DepositSpectrum(Binning b, double live_time = 0.0)
      : binning(std::move(b)), counts(binning.n_bins(), 0.0), live_time_s(live_time) {}

  void add_event(double e_kev, double weight = 1.0) {
    auto i = binning.find(e_kev);
    if (i == Binning::npos) {
      if (e_kev >= binning.edges_kev.back()) overflow += weight;
      // deposits below the first edge land in the first bin: R counts all E>0
      else counts.front() += weight;
      return;
    }
    counts[i] += weight;
  }

  double total_events() const {
    double s = overflow;
    for (double c : counts) s += c;
    return s;
  }

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << std::setprecision(17);
    out << "# radbkg-spec v1 live_time_s=" << live_time_s << "\n";
    out << "# overflow=" << overflow << "\n";
    for (std::size_t i = 0; i < counts.size(); ++i)
      out << binning.edges_kev[i] << ',' << binning.edges_kev[i + 1] << ',' << counts[i]
          << '\n';
    if (!out) throw IoError("write failed: " + path);
  }

  static DepositSpectrum read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# radbkg-spec v1", 0) != 0)
      throw IoError(path + ": not a radbkg-spec v1 file");
    DepositSpectrum s;
    {
      auto eq = line.find("live_time_s=");
      s.live_time_s = std::stod(line.substr(eq + 12));
    }
    std::vector<double> lo, hi;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '#') {
        auto eq = line.find("overflow=");
        if (eq != std::string::npos) s.overflow = std::stod(line.substr(eq + 9));
        continue;
      }
      std::istringstream ss(line);
      std::string a, b, c;
      std::getline(ss, a, ',');
      std::getline(ss, b, ',');
      std::getline(ss, c, ',');
      lo.push_back(std::stod(a));
      hi.push_back(std::stod(b));
      s.counts.push_back(std::stod(c));
    }
    if (lo.empty()) throw IoError(path + ": no bins");
    s.binning.edges_kev = lo;
    s.binning.edges_kev.push_back(hi.back());
    return s;
  }
};

enum class MergeMode {
  partitions,          // pieces of one run: counts add, live times add
  independent_sources  // same exposure seen by several sources: live time kept
};

inline DepositSpectrum merge_spectra(const std::vector<DepositSpectrum>& spectra,
                                     MergeMode mode = MergeMode::partitions) {
  if (spectra.empty()) throw std::invalid_argument("merge_spectra: empty input");
  DepositSpectrum out = spectra.front();
  for (std::size_t i = 1; i < spectra.size(); ++i) {
    const auto& s = spectra[i];
    if (!(s.binning == out.binning))
      throw std::invalid_argument("merge_spectra: mismatched binning");
    if (!(s.live_time_s > 0.0))
      throw std::invalid_argument("merge_spectra: nonpositive live time");
    for (std::size_t b = 0; b < out.counts.size(); ++b) out.counts[b] += s.counts[b];
    out.overflow += s.overflow;
    if (mode == MergeMode::partitions) {
      out.live_time_s += s.live_time_s;
    } else if (std::abs(s.live_time_s - out.live_time_s) >
               1e-9 * out.live_time_s) {
      throw std::invalid_argument(
          "merge_spectra: independent sources must share one live time");
    }
  }
  return out;
}

struct DepositOptions {
  bool straggling = true;
  std::optional<double> reaim_radius_cm;  // enclosure check when provided
  bool record_events = false;             // keep the per-event list for exact P
  TransportCutoffs cutoffs{};
};

struct DepositResult {
  DepositSpectrum spectrum;
  std::vector<double> event_deposits_kev;  // only when record_events
  std::uint64_t histories = 0;
};

namespace detail {

// Energy a secondary electron born inside the wafer leaves behind: full
// kinetic energy when its CSDA range ends before the surface, otherwise the
// energy lost along the contained part of the track. The residual is taken
// from the range tables, not pro-rated by track length: dE/dx rises as the
// electron slows, so the early track carries less than its length share.
inline double contained_electron_deposit(const MaterialDef& mat, Species sp,
                                         double t_kev, const Vec3& pos,
                                         const Vec3& dir, const Box& box) {
  double d_exit = box.exit_distance(pos, dir);
  double escaping_kev = slow_down(mat, sp, t_kev * 1e-3, d_exit) * 1e3;
  return t_kev - escaping_kev;
}

// Straggled energy loss (keV) of a charged particle of kinetic energy t_kev
// over a chord. Landau about the most probable value in the thin regime, a
// clamped Gaussian (Bohr variance) when the chord eats a sizable fraction of
// the energy, the full energy when the range ends inside.
inline double chord_energy_loss(const MaterialDef& mat, Species sp, double t_kev,
                                double chord_cm, bool straggling, RandomStream& rng) {
  double t_mev = t_kev * 1e-3;
  double range_cm = csda_range(mat, sp, t_mev);
  if (range_cm <= chord_cm) return t_kev;  // stops inside, full deposit

  double mean_kev = (t_mev - slow_down(mat, sp, t_mev, chord_cm)) * 1e3;
  if (!straggling) return mean_kev;

  double mass = species_mass_mev(sp);
  double gamma = 1.0 + t_mev / mass;
  double gamma2 = gamma * gamma;
  double beta2 = 1.0 - 1.0 / gamma2;
  auto par = landau_params(beta2, gamma2, mat.z_over_a, mat.density,
                           mat.mean_excitation_ev, mat.plasma_energy_ev, chord_cm);
  double ratio = constants::electron_mass_mev / mass;
  double wmax_kev = 2e3 * constants::electron_mass_mev * beta2 * gamma2 /
                    (1.0 + 2.0 * gamma * ratio + ratio * ratio);
  double kappa = par.xi_kev / wmax_kev;

  double loss;
  if (kappa > 0.3 || mean_kev > 0.1 * t_kev) {
    // thick/slow regime: Gaussian about the mean with Bohr variance
    double var = par.xi_kev * wmax_kev * (1.0 - 0.5 * beta2);
    loss = mean_kev + std::sqrt(var) * rng.gaussian();
  } else {
    loss = par.mpv_kev + par.xi_kev * LandauSampler::instance().sample(rng);
  }
  return std::min(std::max(loss, 0.0), t_kev);
}

}  // namespace detail

// Stage-2: track re-aimed records through the rectangular wafer and histogram
// the per-history deposited energy. Photons interact by the material tables;
// charged records lose energy along the exact ray-box chord with straggling;
// neutrons pass through (hadronic interactions are out of the model).
inline DepositResult deposit(const PhaseSpaceSet& input, const SubstrateSpec& substrate,
                             RandomStream& rng, const Binning& binning,
                             const DepositOptions& opts = {}) {
  substrate.validate();
  Box box = substrate.box();
  if (opts.reaim_radius_cm && box.half_diagonal() > *opts.reaim_radius_cm)
    throw std::invalid_argument("substrate is not enclosed by the re-aim sphere");
  const MaterialDef& mat = *substrate.material;

  DepositResult result;
  result.spectrum = DepositSpectrum(binning, input.effective_time_s);

  std::size_t i = 0;
  while (i < input.records.size()) {
    std::size_t j = i + 1;
    while (j < input.records.size() &&
           input.records[j].history == input.records[i].history)
      ++j;
    double event_kev = 0.0;
    double weight = input.records[i].weight;

    for (std::size_t k = i; k < j; ++k) {
      const auto& rec = input.records[k];
      auto hit = box.intersect(rec.position_cm, rec.direction);
      if (!hit) continue;
      double chord = hit->second - hit->first;
      if (chord <= 0.0) continue;
      Vec3 entry{rec.position_cm[0] + hit->first * rec.direction[0],
                 rec.position_cm[1] + hit->first * rec.direction[1],
                 rec.position_cm[2] + hit->first * rec.direction[2]};

      if (rec.species == Species::neutron) continue;

      if (is_charged(rec.species)) {
        event_kev += detail::chord_energy_loss(mat, rec.species, rec.energy_kev, chord,
                                               opts.straggling, rng);
        continue;
      }

      // photon: chain of interactions inside the box
      double e = rec.energy_kev;
      Vec3 pos = entry;
      Vec3 dir = rec.direction;
      double remaining = chord;
      while (e > opts.cutoffs.photon_kev) {
        double mu = attenuation_coefficient(mat, e, Process::total);
        double step = rng.exponential() / mu;
        if (step >= remaining) break;  // leaves the wafer
        for (int c = 0; c < 3; ++c) pos[c] += step * dir[c];
        double mu_pe = attenuation_coefficient(mat, e, Process::photoelectric);
        double mu_c = attenuation_coefficient(mat, e, Process::compton);
        double u = rng.uniform() * mu;
        if (u < mu_pe) {
          event_kev += detail::contained_electron_deposit(mat, Species::electron, e,
                                                          pos, dir, box);
          e = 0.0;
          break;
        }
        if (u < mu_pe + mu_c) {
          auto kn = sample_klein_nishina(e, rng);
          auto kin = compton_kinematics(dir, e, kn.scattered_kev, kn.cos_theta, rng);
          double t_e = e - kn.scattered_kev;
          if (t_e > 0.0)
            event_kev += detail::contained_electron_deposit(mat, Species::electron, t_e,
                                                            pos, kin.electron_dir, box);
          e = kn.scattered_kev;
          dir = kin.photon_dir;
          remaining = box.exit_distance(pos, dir);
          continue;
        }
        {
          double t_pair = std::max(0.0, e - constants::pair_threshold_kev);
          event_kev += constants::pair_threshold_kev;  // local, annihilation untracked
          double f = rng.uniform();
          event_kev += detail::contained_electron_deposit(mat, Species::positron,
                                                          f * t_pair, pos, dir, box);
          event_kev += detail::contained_electron_deposit(
              mat, Species::electron, (1.0 - f) * t_pair, pos, dir, box);
          e = 0.0;
          break;
        }
      }
      if (e > 0.0 && e <= opts.cutoffs.photon_kev) event_kev += e;
    }

    if (event_kev > 0.0) {
      result.spectrum.add_event(event_kev, weight);
      if (opts.record_events) result.event_deposits_kev.push_back(event_kev);
    }
    ++result.histories;
    i = j;
  }
  return result;
}

}  // namespace radbkg
