#pragma once

#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "radbkg/histogram.hpp"
#include "radbkg/materials.hpp"  // IoError, default_data_dir
#include "radbkg/rng.hpp"

namespace radbkg {

// The five gamma-producing half-chains. The 232Th and 238U chains are split
// at the gaseous radon isotope, so the two halves may carry distinct
// specific activities.
enum class ChainId { k40, th232a, th232b, u238a, u238b };

inline constexpr std::array<ChainId, 5> all_chains = {
    ChainId::k40, ChainId::th232a, ChainId::th232b, ChainId::u238a, ChainId::u238b};

inline std::string_view chain_token(ChainId c) {
  switch (c) {
    case ChainId::k40: return "k40";
    case ChainId::th232a: return "th232a";
    case ChainId::th232b: return "th232b";
    case ChainId::u238a: return "u238a";
    case ChainId::u238b: return "u238b";
  }
  throw std::logic_error("bad chain id");
}

inline ChainId chain_from_token(std::string_view tok) {
  for (ChainId c : all_chains)
    if (chain_token(c) == tok) return c;
  throw std::invalid_argument("unknown chain '" + std::string(tok) + "'");
}

// nominal specific activity n_s (Bq/kg) in typical concrete
inline double nominal_activity(ChainId c) {
  switch (c) {
    case ChainId::k40: return 400.0;
    case ChainId::th232a:
    case ChainId::th232b: return 30.0;
    case ChainId::u238a:
    case ChainId::u238b: return 40.0;
  }
  throw std::logic_error("bad chain id");
}

struct GammaLine {
  std::string isotope;
  double energy_kev;
  double intensity;  // emission probability per parent decay, in (0, 1]
};

struct DecayChain {
  ChainId id;
  std::vector<GammaLine> lines;
  double nominal_activity_bq_kg;

  void validate() const {
    if (lines.empty()) throw std::invalid_argument("chain has no lines");
    for (const auto& l : lines) {
      if (!(l.intensity > 0.0 && l.intensity <= 1.0))
        throw std::invalid_argument(l.isotope + ": intensity outside (0,1]");
      if (!(l.energy_kev > 0.0 && l.energy_kev <= 3000.0))
        throw std::invalid_argument(l.isotope + ": line outside (0, 3000] keV");
    }
  }
};

inline const std::map<ChainId, DecayChain>& decay_chain_library(
    const std::string& data_dir = default_data_dir()) {
  static std::map<ChainId, DecayChain> lib;
  static std::once_flag once;
  std::call_once(once, [&] {
    std::ifstream in(data_dir + "/decay_lines.csv");
    if (!in) throw IoError("cannot open " + data_dir + "/decay_lines.csv");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line.rfind("chain,", 0) == 0) continue;
      std::istringstream ss(line);
      std::string chain, isotope, e, inten;
      std::getline(ss, chain, ',');
      std::getline(ss, isotope, ',');
      std::getline(ss, e, ',');
      std::getline(ss, inten, ',');
      ChainId id = chain_from_token(chain);
      auto& c = lib[id];
      c.id = id;
      c.nominal_activity_bq_kg = nominal_activity(id);
      c.lines.push_back({isotope, std::stod(e), std::stod(inten)});
    }
    for (auto& [id, c] : lib) c.validate();
    if (lib.size() != all_chains.size()) throw IoError("decay line library incomplete");
  });
  return lib;
}

inline const DecayChain& decay_chain(ChainId id,
                                     const std::string& data_dir = default_data_dir()) {
  return decay_chain_library(data_dir).at(id);
}

// Gamma energies emitted by one parent decay of the half-chain under secular
// equilibrium: every line fires independently with its per-decay probability.
inline std::vector<double> sample_decay_emission(const DecayChain& chain,
                                                 RandomStream& rng) {
  if (chain.lines.empty()) throw std::invalid_argument("chain has no lines");
  std::vector<double> out;
  for (const auto& l : chain.lines)
    if (rng.uniform() < l.intensity) out.push_back(l.energy_kev);
  return out;
}

// Line spectrum of emission rates (gamma / kg / s binned by energy) for the
// given specific activities.
inline Histogram emitted_spectrum(const std::map<ChainId, double>& activities,
                                  const Binning& bins,
                                  const std::string& data_dir = default_data_dir()) {
  Histogram h(bins);
  for (const auto& [id, a] : activities) {
    if (a < 0.0) throw std::invalid_argument("negative activity");
    if (a == 0.0) continue;
    for (const auto& l : decay_chain(id, data_dir).lines)
      h.fill(l.energy_kev, a * l.intensity);
  }
  return h;
}

}  // namespace radbkg
