#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "radbkg/constants.hpp"

namespace radbkg {

enum class Species { gamma, electron, positron, mu_minus, mu_plus, proton, neutron };

inline constexpr std::array<Species, 7> all_species = {
    Species::gamma,    Species::electron, Species::positron, Species::mu_minus,
    Species::mu_plus,  Species::proton,   Species::neutron};

inline std::string_view species_token(Species s) {
  switch (s) {
    case Species::gamma: return "gamma";
    case Species::electron: return "e-";
    case Species::positron: return "e+";
    case Species::mu_minus: return "mu-";
    case Species::mu_plus: return "mu+";
    case Species::proton: return "p";
    case Species::neutron: return "n";
  }
  throw std::logic_error("bad species");
}

inline Species species_from_token(std::string_view tok) {
  for (Species s : all_species)
    if (species_token(s) == tok) return s;
  throw std::invalid_argument("unknown species token '" + std::string(tok) + "'");
}

inline bool is_charged(Species s) {
  return s != Species::gamma && s != Species::neutron;
}

// rest mass of charged species, MeV
inline double species_mass_mev(Species s) {
  switch (s) {
    case Species::electron:
    case Species::positron: return constants::electron_mass_mev;
    case Species::mu_minus:
    case Species::mu_plus: return constants::muon_mass_mev;
    case Species::proton: return constants::proton_mass_mev;
    default: throw std::invalid_argument("species has no stopping-power mass");
  }
}

}  // namespace radbkg
