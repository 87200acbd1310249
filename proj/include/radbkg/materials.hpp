#pragma once

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "radbkg/constants.hpp"
#include "radbkg/elements.hpp"
#include "radbkg/interpolation.hpp"
#include "radbkg/species.hpp"

namespace radbkg {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Process { photoelectric, compton, pair, total };

// One substrate or shielding material: composition, density, and the photon
// attenuation / charged-particle stopping tables loaded from the data CSVs.
// Instances are immutable once loaded and safe to share across threads.
class MaterialDef {
 public:
  std::string name;
  double density = 0.0;           // g/cm^3
  double relative_density = 0.0;  // rho / rho_Si
  std::vector<std::pair<std::string, double>> composition;  // (element, mass fraction)
  bool contains_gallium = false;

  TableSet attenuation;  // energy keV -> {photoelectric, compton, pair} cm^2/g
  TableSet stopping;     // energy MeV -> {e-, e+, mu-, mu+, p} MeV cm^2/g

  double z_over_a = 0.0;        // electrons per amu
  double mean_excitation_ev = 0.0;
  double plasma_energy_ev = 0.0;

  double photon_min_kev() const { return attenuation.min_x(); }
  double photon_max_kev() const { return attenuation.max_x(); }

  void validate() const {
    if (density <= 0.0) throw std::invalid_argument(name + ": density <= 0");
    double sum = 0.0;
    for (const auto& [el, w] : composition) sum += w;
    if (std::abs(sum - 1.0) > 1e-6)
      throw std::invalid_argument(name + ": mass fractions sum to " + std::to_string(sum));
    double rel = density / constants::silicon_density_g_cm3;
    if (std::abs(relative_density - rel) > 1e-6)
      throw std::invalid_argument(name + ": relative density inconsistent");
    // table grids are checked (increasing, positive) on construction
  }

 private:
  friend MaterialDef load_material(const std::string&, const std::string&);
  // CSDA ranges integrated from the stopping tables at load time
  std::vector<LogLogTable> range_cm2_g_;          // energy MeV -> range g/cm^2
  std::vector<LogLogTable> inverse_range_;        // range g/cm^2 -> energy MeV
 public:
  const LogLogTable& range_table(Species s) const { return range_cm2_g_.at(stopping_index(s)); }
  const LogLogTable& inverse_range_table(Species s) const {
    return inverse_range_.at(stopping_index(s));
  }

  static std::size_t stopping_index(Species s) {
    switch (s) {
      case Species::electron: return 0;
      case Species::positron: return 1;
      case Species::mu_minus: return 2;
      case Species::mu_plus: return 3;
      case Species::proton: return 4;
      default: throw std::invalid_argument("no stopping power for neutral species");
    }
  }
};

namespace detail {

inline std::map<std::string, std::string> parse_meta_line(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream ss(line.substr(1));  // past '#'
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq != std::string::npos) kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<double> grid;
  std::vector<std::vector<double>> columns;
};

inline CsvTable read_table_csv(const std::string& path, std::size_t n_value_columns) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file " + path);
  CsvTable out;
  out.columns.resize(n_value_columns);
  std::string line;
  bool first_comment = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (first_comment) {
        out.meta = parse_meta_line(line);
        first_comment = false;
      } else {
        for (auto& [k, v] : parse_meta_line(line)) out.meta.emplace(k, v);
      }
      continue;
    }
    std::istringstream ss(line);
    std::string field;
    std::vector<double> row;
    while (std::getline(ss, field, ',')) row.push_back(std::stod(field));
    if (row.size() != n_value_columns + 1)
      throw IoError(path + ": expected " + std::to_string(n_value_columns + 1) +
                    " columns, got " + std::to_string(row.size()));
    out.grid.push_back(row[0]);
    for (std::size_t c = 0; c < n_value_columns; ++c) out.columns[c].push_back(row[c + 1]);
  }
  if (out.grid.size() < 2) throw IoError(path + ": no data rows");
  return out;
}

}  // namespace detail

inline std::string default_data_dir() {
  if (const char* env = std::getenv("RADBKG_DATA_DIR")) return env;
#ifdef RADBKG_DEFAULT_DATA_DIR
  return RADBKG_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

inline MaterialDef load_material(const std::string& data_dir, const std::string& name) {
  MaterialDef m;
  m.name = name;

  auto att = detail::read_table_csv(data_dir + "/" + name + "_attenuation.csv", 3);
  if (att.meta["kind"] != "attenuation" || att.meta["material"] != name)
    throw IoError(name + ": attenuation file header mismatch");
  m.density = std::stod(att.meta.at("density"));
  m.relative_density = m.density / constants::silicon_density_g_cm3;
  {
    std::istringstream ss(att.meta.at("composition"));
    std::string part;
    while (std::getline(ss, part, ';')) {
      auto colon = part.find(':');
      std::string el = part.substr(0, colon);
      m.composition.emplace_back(el, std::stod(part.substr(colon + 1)));
      if (el == "Ga") m.contains_gallium = true;
    }
  }
  m.attenuation = TableSet(att.grid, std::move(att.columns),
                           {"photoelectric", "compton", "pair"}, name);

  auto st = detail::read_table_csv(data_dir + "/" + name + "_stopping.csv", 5);
  if (st.meta["kind"] != "stopping" || st.meta["material"] != name)
    throw IoError(name + ": stopping file header mismatch");
  if (std::abs(std::stod(st.meta.at("density")) - m.density) > 1e-9)
    throw IoError(name + ": density differs between attenuation and stopping files");
  auto grid = st.grid;
  m.stopping = TableSet(st.grid, std::move(st.columns),
                        {"e-", "e+", "mu-", "mu+", "p"}, name);

  // Landau / density-effect parameters from the composition
  double za = 0.0, ln_i = 0.0;
  for (const auto& [el, w] : m.composition) {
    auto d = element_data(el);
    double f = w * d.z / d.a;
    za += f;
    ln_i += f * std::log(d.i_ev);
  }
  m.z_over_a = za;
  m.mean_excitation_ev = std::exp(ln_i / za);
  m.plasma_energy_ev = 28.816 * std::sqrt(m.density * za);

  // CSDA range r(T) = int dT'/S(T') from the table floor upward (g/cm^2)
  for (std::size_t c = 0; c < 5; ++c) {
    const auto& s = m.stopping.column(c);
    std::vector<double> r(grid.size());
    r[0] = grid[0] / s(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      double dt = grid[i] - grid[i - 1];
      r[i] = r[i - 1] + 0.5 * dt * (1.0 / s(grid[i]) + 1.0 / s(grid[i - 1]));
    }
    m.range_cm2_g_.emplace_back(grid, r, m.name + ":range");
    m.inverse_range_.emplace_back(r, grid, m.name + ":inv_range");
  }

  m.validate();
  return m;
}

inline const std::vector<std::string>& known_materials() {
  static const std::vector<std::string> names = {
      "si", "sic", "sio2", "al2o3", "gan", "gaas", "aluminum", "concrete"};
  return names;
}

// Process-wide registry; materials load once and are then read-only.
inline const MaterialDef& material(const std::string& name,
                                   const std::string& data_dir = default_data_dir()) {
  static std::map<std::string, MaterialDef> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  bool known = false;
  for (const auto& n : known_materials()) known |= (n == name);
  if (!known) {
    std::string msg = "unknown material '" + name + "'; known materials:";
    for (const auto& n : known_materials()) msg += " " + n;
    throw std::invalid_argument(msg);
  }
  return cache.emplace(name, load_material(data_dir, name)).first->second;
}

// Linear attenuation coefficient mu (1/cm). Total is the sum of the
// per-process interpolations, so total == sum holds to rounding.
inline double attenuation_coefficient(const MaterialDef& m, double energy_kev,
                                      Process p = Process::total) {
  if (p == Process::total) {
    double sum = 0.0;
    for (std::size_t c = 0; c < 3; ++c) sum += m.attenuation.column(c)(energy_kev);
    return sum * m.density;
  }
  return m.attenuation.column(static_cast<std::size_t>(p))(energy_kev) * m.density;
}

// Linear stopping power dE/dx (MeV/cm)
inline double stopping_power(const MaterialDef& m, Species s, double kinetic_mev) {
  return m.stopping.column(MaterialDef::stopping_index(s))(kinetic_mev) * m.density;
}

// CSDA range (cm); energies below the table floor use the floor's range
inline double csda_range(const MaterialDef& m, Species s, double kinetic_mev) {
  const auto& r = m.range_table(s);
  double t = std::max(kinetic_mev, r.min_x());
  return r(t) / m.density;
}

// Residual kinetic energy (MeV) after path_cm of material, or 0 if it stops.
inline double slow_down(const MaterialDef& m, Species s, double kinetic_mev,
                        double path_cm) {
  const auto& r = m.range_table(s);
  double t = std::max(kinetic_mev, r.min_x());
  double rest = r(t) - path_cm * m.density;
  if (rest <= r.values().front()) return 0.0;
  double out = m.inverse_range_table(s)(rest);
  return std::min(out, kinetic_mev);
}

}  // namespace radbkg
