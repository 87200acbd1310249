#pragma once

#include <map>
#include <stdexcept>

#include "radbkg/decay_chains.hpp"

namespace radbkg {

// Laboratory conditions: elevation, shielding, and the specific activity of
// each gamma half-chain in the foundation.
struct EnvironmentSpec {
  double elevation_m = 0.0;
  double ceiling_concrete_cm = 20.0;
  double aluminum_shell_cm = 1.0;
  std::map<ChainId, double> activities_bq_kg = nominal_activities();

  static std::map<ChainId, double> nominal_activities() {
    std::map<ChainId, double> a;
    for (ChainId c : all_chains) a[c] = nominal_activity(c);
    return a;
  }

  double activity(ChainId c) const {
    auto it = activities_bq_kg.find(c);
    return it == activities_bq_kg.end() ? 0.0 : it->second;
  }

  void validate() const {
    if (elevation_m < 0.0) throw std::invalid_argument("elevation must be >= 0");
    if (ceiling_concrete_cm < 0.0 || aluminum_shell_cm < 0.0)
      throw std::invalid_argument("shielding thickness must be >= 0");
    for (const auto& [c, a] : activities_bq_kg)
      if (a < 0.0) throw std::invalid_argument("activities must be >= 0");
  }
};

}  // namespace radbkg
