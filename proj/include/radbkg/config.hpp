#pragma once

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "radbkg/cosmic.hpp"
#include "radbkg/deposition.hpp"
#include "radbkg/environment.hpp"
#include "radbkg/rate_model.hpp"
#include "radbkg/transport.hpp"

namespace radbkg {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cfg {

// Every key carries a declared dimension; values must state their unit and
// are normalized to the canonical one (cm, keV, s, Bq/kg, ...). Silent typos
// and unit mixups are the classic failure mode of physics configs, so
// unknown keys and missing units are hard errors.
enum class Kind {
  length,        // -> cm
  energy,        // -> keV
  area,          // -> cm^2
  activity,      // -> Bq/kg
  flux,          // -> 1/(cm^2 s)
  mass_atten,    // -> cm^2/g
  rate,          // -> 1/s
  power,         // -> keV/s
  density,       // -> g/cm^3
  dimensionless,
  count,
  boolean,
  string,
  energy_list,   // -> keV each
  number_list,
};

struct UnitTable {
  Kind kind;
  std::vector<std::pair<std::string, double>> units;  // token -> factor
  std::string canonical;
};

inline const std::vector<UnitTable>& unit_tables() {
  static const std::vector<UnitTable> t = {
      {Kind::length, {{"um", 1e-4}, {"mm", 0.1}, {"cm", 1.0}, {"m", 100.0}, {"km", 1e5}}, "cm"},
      {Kind::energy, {{"eV", 1e-3}, {"keV", 1.0}, {"MeV", 1e3}, {"GeV", 1e6}}, "keV"},
      {Kind::area, {{"mm2", 1e-2}, {"cm2", 1.0}, {"m2", 1e4}}, "cm2"},
      {Kind::activity, {{"Bq/kg", 1.0}}, "Bq/kg"},
      {Kind::flux, {{"/cm2/s", 1.0}, {"1/cm2/s", 1.0}, {"/m2/s", 1e-4}}, "/cm2/s"},
      {Kind::mass_atten, {{"cm2/g", 1.0}}, "cm2/g"},
      {Kind::rate, {{"/s", 1.0}, {"1/s", 1.0}, {"/min", 1.0 / 60.0}, {"/h", 1.0 / 3600.0}}, "/s"},
      {Kind::power, {{"keV/s", 1.0}, {"MeV/s", 1e3}, {"eV/s", 1e-3}}, "keV/s"},
      {Kind::density, {{"g/cm3", 1.0}}, "g/cm3"},
      {Kind::energy_list, {{"keV", 1.0}, {"MeV", 1e3}, {"GeV", 1e6}}, "MeV"},
  };
  return t;
}

using Value = std::variant<double, std::string, bool, std::uint64_t, std::vector<double>>;

}  // namespace cfg

class Config {
 public:
  // schema plus compiled-in defaults
  static Config defaults() {
    Config c;
    c.ensure_schema();
    return c;
  }

  static Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  static Config parse(const std::string& text) {
    Config c = defaults();
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("line " + std::to_string(line_no) + ": bad section header");
        section = trim(line.substr(1, line.size() - 2));
        continue;
      }
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
      std::string key = section + "." + trim(line.substr(0, eq));
      std::string value = trim(line.substr(eq + 1));
      c.set(key, value);
    }
    return c;
  }

  void set(const std::string& key, const std::string& raw) {
    auto it = schema_.find(key);
    if (it == schema_.end()) throw ConfigError("unknown config key '" + key + "'");
    values_[key] = parse_value(key, it->second, raw);
  }

  // canonical, re-parseable form
  void dump(std::ostream& out) const {
    out << std::setprecision(17);
    std::string section;
    for (const auto& key : order_) {
      auto dot = key.find('.');
      std::string sec = key.substr(0, dot);
      if (sec != section) {
        if (!section.empty()) out << "\n";
        out << "[" << sec << "]\n";
        section = sec;
      }
      out << key.substr(dot + 1) << " = " << format_value(key) << "\n";
    }
  }

  std::string dump_string() const {
    std::ostringstream ss;
    dump(ss);
    return ss.str();
  }

  bool operator==(const Config& other) const { return values_ == other.values_; }

  // typed getters (canonical units)
  double number(const std::string& key) const { return std::get<double>(at(key)); }
  std::uint64_t count(const std::string& key) const { return std::get<std::uint64_t>(at(key)); }
  bool flag(const std::string& key) const { return std::get<bool>(at(key)); }
  const std::string& str(const std::string& key) const { return std::get<std::string>(at(key)); }
  const std::vector<double>& list(const std::string& key) const {
    return std::get<std::vector<double>>(at(key));
  }

  // ---- domain objects -----------------------------------------------------
  SubstrateSpec substrate(const std::string& data_dir = default_data_dir()) const {
    SubstrateSpec s;
    try {
      s.material = &material(str("substrate.material"), data_dir);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("substrate.material: ") + e.what());
    }
    s.thickness_um = number("substrate.thickness") * 1e4;  // cm -> um
    s.width_mm = number("substrate.width") * 10.0;         // cm -> mm
    s.length_mm = number("substrate.length") * 10.0;
    s.validate();
    return s;
  }

  EnvironmentSpec environment() const {
    EnvironmentSpec e;
    e.elevation_m = number("environment.elevation") / 100.0;  // cm -> m
    e.ceiling_concrete_cm = number("environment.ceiling");
    e.aluminum_shell_cm = number("environment.aluminum_shell");
    for (ChainId c : all_chains)
      e.activities_bq_kg[c] =
          number("sources.activity_" + std::string(chain_token(c)));
    e.validate();
    return e;
  }

  SourceParams source_params() const {
    SourceParams p = SourceParams::defaults();
    for (SourceId s : all_sources) {
      std::string tok(source_token(s));
      SourceTerm& t = p.terms[s];
      t.c_per_s = number("sources.c_" + tok);
      t.g_per_s = number("sources.g_" + tok);
      t.p_kev_per_s = number("sources.p_" + tok);
      t.beta = number("sources.beta_" + tok);
      t.m_per_s = number("sources.m_" + tok);
      t.alpha = number("sources.alpha_" + tok);
      if (is_gamma_chain(s)) t.rho_ga_g_cm3 = number("sources.rho_ga_" + tok);
    }
    p.g_cr_gallium_per_s = number("sources.g_cosmic_gallium");
    p.validate();
    return p;
  }

  CrScaling cr_scaling() const {
    CrScaling cr;
    const std::string& mode = str("cosmic.cr_mode");
    if (mode == "single")
      cr.mode = CrScaling::Mode::single;
    else if (mode == "species_split")
      cr.mode = CrScaling::Mode::species_split;
    else
      throw ConfigError("cosmic.cr_mode must be 'single' or 'species_split'");
    cr.lambda_m = number("cosmic.cr_lambda") / 100.0;
    cr.lambda_mu_m = number("cosmic.scale_height_mu-") / 100.0;
    cr.lambda_nuclear_m = number("cosmic.scale_height_p") / 100.0;
    cr.lambda_em_m = number("cosmic.scale_height_e-") / 100.0;
    cr.weight_mu = number("cosmic.cr_weight_mu");
    cr.weight_nuclear = number("cosmic.cr_weight_nuclear");
    cr.weight_em = number("cosmic.cr_weight_em");
    return cr;
  }

  std::vector<CosmicSpeciesModel> cosmic_models() const {
    std::vector<CosmicSpeciesModel> out;
    std::istringstream ss(str("cosmic.species"));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      tok = trim(tok);
      if (tok.empty()) continue;
      CosmicSpeciesModel m;
      m.species = species_from_token(tok);
      m.sea_level_flux_cm2_s = number("cosmic.flux_" + tok);
      auto edges = list("cosmic.spectrum_edges_" + tok);
      for (auto& e : edges) e *= 1e-3;  // keV -> MeV
      m.spectrum = PiecewisePowerLaw(edges, list("cosmic.spectrum_indices_" + tok));
      m.zenith_exponent = number("cosmic.zenith_" + tok);
      m.scale_height_m = number("cosmic.scale_height_" + tok) / 100.0;
      out.push_back(std::move(m));
    }
    if (out.empty()) throw ConfigError("cosmic.species is empty");
    return out;
  }

  TransportCutoffs cutoffs() const {
    TransportCutoffs c;
    c.photon_kev = number("mc.photon_cutoff");
    c.charged_kev = number("mc.charged_cutoff");
    return c;
  }

  void validate_domain() const {
    try {
      substrate();
      environment();
      source_params();
      cr_scaling();
      cosmic_models();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }

 private:
  const cfg::Value& at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
    return it->second;
  }

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  }

  void add(const std::string& key, cfg::Kind kind, cfg::Value def) {
    schema_[key] = kind;
    values_[key] = std::move(def);
    order_.push_back(key);
  }

  void ensure_schema();

  static bool parse_number(const std::string& s, double& out) {
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && !s.empty();
  }

  cfg::Value parse_value(const std::string& key, cfg::Kind kind, const std::string& raw) {
    using cfg::Kind;
    switch (kind) {
      case Kind::string: return raw;
      case Kind::boolean:
        if (raw == "true") return true;
        if (raw == "false") return false;
        throw ConfigError(key + ": expected true or false, got '" + raw + "'");
      case Kind::count: {
        double v;
        if (!parse_number(raw, v) || v < 0 || v != std::floor(v))
          throw ConfigError(key + ": expected a nonnegative integer, got '" + raw + "'");
        return static_cast<std::uint64_t>(v);
      }
      case Kind::dimensionless: {
        double v;
        if (!parse_number(raw, v))
          throw ConfigError(key + ": expected a plain number, got '" + raw + "'");
        return v;
      }
      case Kind::number_list: {
        std::istringstream ss(raw);
        std::vector<double> vs;
        std::string tok;
        while (ss >> tok) {
          double v;
          if (!parse_number(tok, v))
            throw ConfigError(key + ": expected plain numbers, got '" + tok + "'");
          vs.push_back(v);
        }
        if (vs.empty()) throw ConfigError(key + ": empty list");
        return vs;
      }
      default: break;
    }
    // dimensioned: one or more numbers then a mandatory unit token
    const cfg::UnitTable* table = nullptr;
    for (const auto& t : cfg::unit_tables())
      if (t.kind == kind) table = &t;
    std::istringstream ss(raw);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) toks.push_back(tok);
    if (toks.size() < 2)
      throw ConfigError(key + ": unit suffix is mandatory (e.g. '500 um'), got '" +
                        raw + "'");
    double factor = -1.0;
    for (const auto& [u, f] : table->units)
      if (u == toks.back()) factor = f;
    if (factor < 0.0) {
      std::string known;
      for (const auto& [u, f] : table->units) known += " " + u;
      throw ConfigError(key + ": unknown unit '" + toks.back() + "'; expected one of" +
                        known);
    }
    std::vector<double> vs;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
      double v;
      if (!parse_number(toks[i], v))
        throw ConfigError(key + ": bad number '" + toks[i] + "'");
      vs.push_back(v * factor);
    }
    if (kind == cfg::Kind::energy_list) return vs;
    if (vs.size() != 1) throw ConfigError(key + ": expected a single value");
    return vs.front();
  }

  std::string format_value(const std::string& key) const {
    using cfg::Kind;
    Kind kind = schema_.at(key);
    const cfg::Value& v = values_.at(key);
    std::ostringstream out;
    out << std::setprecision(17);
    switch (kind) {
      case Kind::string: return std::get<std::string>(v);
      case Kind::boolean: return std::get<bool>(v) ? "true" : "false";
      case Kind::count: out << std::get<std::uint64_t>(v); return out.str();
      case Kind::dimensionless: out << std::get<double>(v); return out.str();
      case Kind::number_list: {
        const auto& vs = std::get<std::vector<double>>(v);
        for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
        return out.str();
      }
      case Kind::energy_list: {
        const auto& vs = std::get<std::vector<double>>(v);
        for (double x : vs) out << x * 1e-3 << " ";
        out << "MeV";
        return out.str();
      }
      default: break;
    }
    const cfg::UnitTable* table = nullptr;
    for (const auto& t : cfg::unit_tables())
      if (t.kind == kind) table = &t;
    out << std::get<double>(v) << " " << table->canonical;
    return out.str();
  }

  std::map<std::string, cfg::Kind> schema_;
  std::map<std::string, cfg::Value> values_;
  std::vector<std::string> order_;
};

inline void Config::ensure_schema() {
  using cfg::Kind;
  add("substrate.material", Kind::string, std::string("si"));
  add("substrate.thickness", Kind::length, 500e-4);  // cm
  add("substrate.width", Kind::length, 1.0);
  add("substrate.length", Kind::length, 1.0);

  add("environment.elevation", Kind::length, 0.0);
  add("environment.ceiling", Kind::length, 20.0);
  add("environment.aluminum_shell", Kind::length, 1.0);

  for (ChainId c : all_chains)
    add("sources.activity_" + std::string(chain_token(c)), Kind::activity,
        nominal_activity(c));
  {
    SourceParams p = SourceParams::defaults();
    for (SourceId s : all_sources) {
      std::string tok(source_token(s));
      const SourceTerm& t = p.terms[s];
      add("sources.c_" + tok, Kind::rate, t.c_per_s);
      add("sources.g_" + tok, Kind::rate, t.g_per_s);
      add("sources.p_" + tok, Kind::power, t.p_kev_per_s);
      add("sources.beta_" + tok, Kind::dimensionless, t.beta);
      add("sources.m_" + tok, Kind::rate, t.m_per_s);
      add("sources.alpha_" + tok, Kind::dimensionless, t.alpha);
      if (is_gamma_chain(s))
        add("sources.rho_ga_" + tok, Kind::density, t.rho_ga_g_cm3);
    }
    add("sources.g_cosmic_gallium", Kind::rate, p.g_cr_gallium_per_s);
  }

  add("cosmic.species", Kind::string, std::string("mu-,mu+,e-,e+,gamma,p,n"));
  for (const auto& m : default_cosmic_models()) {
    std::string tok(species_token(m.species));
    add("cosmic.flux_" + tok, Kind::flux, m.sea_level_flux_cm2_s);
    std::vector<double> edges, indices;
    // recover the defaults from the model definition
    const PiecewisePowerLaw& pl = m.spectrum;
    (void)pl;
    switch (m.species) {
      case Species::mu_minus:
      case Species::mu_plus:
        edges = {200e3, 2000e3, 10000e3};
        indices = {-0.4, -2.0};
        break;
      case Species::electron:
      case Species::positron:
        edges = {10e3, 100e3, 1000e3};
        indices = {-1.0, -2.2};
        break;
      case Species::gamma:
        edges = {1e3, 10e3};
        indices = {-1.8};
        break;
      case Species::proton:
        edges = {50e3, 1000e3, 10000e3};
        indices = {-0.7, -2.2};
        break;
      default:
        edges = {1e3, 10e3, 1000e3, 10000e3};
        indices = {-0.9, -1.5, -2.2};
        break;
    }
    add("cosmic.spectrum_edges_" + tok, Kind::energy_list, edges);
    add("cosmic.spectrum_indices_" + tok, Kind::number_list, indices);
    add("cosmic.zenith_" + tok, Kind::dimensionless, m.zenith_exponent);
    add("cosmic.scale_height_" + tok, Kind::length, m.scale_height_m * 100.0);
  }
  add("cosmic.cr_mode", Kind::string, std::string("single"));
  add("cosmic.cr_lambda", Kind::length, 2000.0 * 100.0);
  add("cosmic.cr_weight_mu", Kind::dimensionless, 0.62);
  add("cosmic.cr_weight_nuclear", Kind::dimensionless, 0.15);
  add("cosmic.cr_weight_em", Kind::dimensionless, 0.23);

  add("mc.photon_cutoff", Kind::energy, 10.0);
  add("mc.charged_cutoff", Kind::energy, 20.0);
  add("mc.neutron_removal", Kind::mass_atten, 0.040);
  add("mc.generation_area", Kind::area, 100.0 * 1e4);  // 100 m^2
  add("mc.sphere_radius_scale", Kind::dimensionless, 1.2);
  add("mc.slab_thickness", Kind::length, 50.0);
  add("mc.histories", Kind::count, std::uint64_t{1000000});
  add("mc.straggling", Kind::boolean, true);
  add("mc.record_events", Kind::boolean, false);
  add("mc.spectrum_bins", Kind::count, std::uint64_t{200});
  add("mc.spectrum_min", Kind::energy, 1.0);
  add("mc.spectrum_max", Kind::energy, 100e3);

  add("output.phase_space", Kind::string, std::string("phase_space.csv"));
  add("output.spectrum", Kind::string, std::string("spectrum.csv"));
  add("output.sweep_table", Kind::string, std::string("sweep.csv"));
}

}  // namespace radbkg
