#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "radbkg/materials.hpp"  // IoError
#include "radbkg/species.hpp"

namespace radbkg {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct PhaseSpaceRecord {
  Species species = Species::gamma;
  double energy_kev = 0.0;  // kinetic
  Vec3 position_cm{0.0, 0.0, 0.0};
  Vec3 direction{0.0, 0.0, 1.0};  // unit
  double weight = 1.0;
  std::uint64_t history = 0;  // stage-1 history id; not persisted

  void validate() const {
    if (!(energy_kev > 0.0)) throw std::invalid_argument("record energy <= 0");
    if (weight < 0.0) throw std::invalid_argument("record weight < 0");
    if (std::abs(norm(direction) - 1.0) > 1e-9)
      throw std::invalid_argument("record direction not unit length");
  }
};

// A set of particles plus the real-world exposure it statistically
// represents. The records are distributed over generation_area_cm2.
struct PhaseSpaceSet {
  std::vector<PhaseSpaceRecord> records;
  double effective_time_s = 0.0;
  double generation_area_cm2 = 0.0;

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << std::setprecision(17);
    out << "# radbkg-phsp v1 effective_time_s=" << effective_time_s
        << " generation_area_cm2=" << generation_area_cm2 << "\n";
    for (const auto& r : records) {
      out << species_token(r.species) << ',' << r.energy_kev << ','
          << r.position_cm[0] << ',' << r.position_cm[1] << ',' << r.position_cm[2]
          << ',' << r.direction[0] << ',' << r.direction[1] << ',' << r.direction[2]
          << ',' << r.weight << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
  }

  static PhaseSpaceSet read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    PhaseSpaceSet set;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# radbkg-phsp v1", 0) != 0)
      throw IoError(path + ": not a radbkg-phsp v1 file");
    {
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        auto key = tok.substr(0, eq);
        double val = std::stod(tok.substr(eq + 1));
        if (key == "effective_time_s") set.effective_time_s = val;
        if (key == "generation_area_cm2") set.generation_area_cm2 = val;
      }
    }
    std::uint64_t row = 0;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ss(line);
      std::string f;
      std::vector<std::string> fields;
      while (std::getline(ss, f, ',')) fields.push_back(f);
      if (fields.size() != 9) throw IoError(path + ": bad record line: " + line);
      PhaseSpaceRecord r;
      r.species = species_from_token(fields[0]);
      r.energy_kev = std::stod(fields[1]);
      for (int i = 0; i < 3; ++i) r.position_cm[i] = std::stod(fields[2 + i]);
      for (int i = 0; i < 3; ++i) r.direction[i] = std::stod(fields[5 + i]);
      r.weight = std::stod(fields[8]);
      r.history = row++;  // grouping is not persisted; one history per row
      r.validate();
      set.records.push_back(r);
    }
    return set;
  }
};

}  // namespace radbkg
