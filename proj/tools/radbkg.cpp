// Command-line front end: analytic rate estimates (estimate), the two-stage
// Monte Carlo pipeline (simulate), and one-at-a-time parameter sweeps with
// scaling-law fits (sweep). One structured config file drives everything;
// exit codes: 0 ok, 2 config error, 3 runtime/physics error, 4 I/O error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radbkg/radbkg.hpp"

using nlohmann::json;
using namespace radbkg;

namespace {

json triple_json(const RateTriple& t) {
  return {{"R_per_s", t.r_per_s}, {"P_keV_per_s", t.p_kev_per_s}, {"M_per_s", t.m_per_s}};
}

json kappa_json(const Corrections& k) {
  return {{"ceiling", k.ceiling}, {"shape", k.shape}, {"density", k.density}};
}

void print_estimate(const RateBreakdown& rb, bool as_json, std::ostream& out) {
  if (as_json) {
    json j;
    j["total"] = triple_json(rb.total);
    for (const auto& e : rb.per_source) {
      json s = triple_json(e.rates);
      s["relative_activity"] = e.relative_activity;
      s["kappa_R"] = kappa_json(e.kappa_r);
      s["kappa_P"] = kappa_json(e.kappa_p);
      s["kappa_M"] = kappa_json(e.kappa_m);
      j["sources"][std::string(source_token(e.source))] = s;
    }
    out << j.dump(2) << "\n";
    return;
  }
  out << std::setprecision(6);
  out << "source      a~        R (1/s)      P (keV/s)    M (1/s)      "
         "kR(c,sh,rho)           kP(c,sh,rho)\n";
  for (const auto& e : rb.per_source) {
    out << std::left << std::setw(12) << source_token(e.source) << std::setw(10)
        << e.relative_activity << std::setw(13) << e.rates.r_per_s << std::setw(13)
        << e.rates.p_kev_per_s << std::setw(13) << e.rates.m_per_s;
    std::ostringstream kr, kp;
    kr << "(" << e.kappa_r.ceiling << "," << e.kappa_r.shape << "," << e.kappa_r.density
       << ")";
    kp << "(" << e.kappa_p.ceiling << "," << e.kappa_p.shape << "," << e.kappa_p.density
       << ")";
    out << std::setw(23) << kr.str() << kp.str() << "\n";
  }
  out << "total: R = " << rb.total.r_per_s << " 1/s, P = " << rb.total.p_kev_per_s
      << " keV/s, M = " << rb.total.m_per_s << " 1/s\n";
}

struct SweepPoint {
  std::string label;
  double x = 0.0;
  RateTriple analytic;
  bool has_mc = false;
  RateTriple mc;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"natural-radiation background rates in device substrates"};
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  bool as_json = false, print_params = false, dump_config = false;
  app.add_option("--config", config_path, "config file path");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads for MC commands");
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--print-params", print_params, "dump the rate-model parameters");
  app.add_flag("--dump-config", dump_config, "dump the effective config and exit");

  auto* est = app.add_subcommand("estimate", "analytic rate report");

  auto* sim = app.add_subcommand("simulate", "two-stage Monte Carlo run");
  std::string stage_name = "gamma";
  std::uint64_t n_override = 0;
  std::string events_path;
  sim->add_option("--stage", stage_name, "gamma or cosmic")
      ->check(CLI::IsMember({"gamma", "cosmic"}));
  sim->add_option("-n,--histories", n_override, "stage-1 histories");
  sim->add_option("--events", events_path,
                  "write the per-event deposit list here and report exact P");

  auto* swp = app.add_subcommand("sweep", "one-at-a-time parameter sweep");
  std::string sweep_param, sweep_values;
  bool sweep_mc = false;
  std::uint64_t sweep_n = 0;
  std::string sweep_stage = "gamma";
  swp->add_option("--param", sweep_param,
                  "thickness | elevation | ceiling | material | size")
      ->required();
  swp->add_option("--values", sweep_values, "comma-separated values, e.g. '30 um,100 um'")
      ->required();
  swp->add_flag("--mc", sweep_mc, "also run the MC pipeline per point");
  swp->add_option("-n,--histories", sweep_n, "MC histories per point");
  swp->add_option("--stage", sweep_stage, "MC stage for --mc")
      ->check(CLI::IsMember({"gamma", "cosmic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Config config =
      config_path.empty() ? Config::defaults() : Config::parse_file(config_path);
  config.validate_domain();

  if (dump_config) {
    config.dump(std::cout);
    return 0;
  }
  if (print_params) {
    json j;
    const SourceParams p = config.source_params();
    for (const auto& [id, t] : p.terms) {
      j[std::string(source_token(id))] = {
          {"c_per_s", t.c_per_s},   {"g_per_s", t.g_per_s},
          {"p_keV_per_s", t.p_kev_per_s}, {"beta", t.beta},
          {"m_per_s", t.m_per_s},   {"alpha", t.alpha},
          {"rho_Ga_g_cm3", t.rho_ga_g_cm3}};
    }
    j["g_cosmic_gallium_per_s"] = p.g_cr_gallium_per_s;
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (est->parsed() || app.get_subcommands().empty()) {
    auto rb = compute_rates(config.substrate(), config.environment(),
                            config.source_params(), config.cr_scaling());
    print_estimate(rb, as_json, std::cout);
    return 0;
  }

  if (sim->parsed()) {
    Config run_config = config;
    if (!events_path.empty()) run_config.set("mc.record_events", "true");
    RunSettings rs;
    rs.stage = stage_name == "gamma" ? Stage::gamma : Stage::cosmic;
    rs.histories = n_override ? n_override : run_config.count("mc.histories");
    rs.seed = seed;
    rs.threads = threads;
    RunOutput out = run_pipeline(run_config, rs);
    out.phase_space.write_csv(run_config.str("output.phase_space"));
    out.spectrum.write_csv(run_config.str("output.spectrum"));
    auto summary = spectrum_to_rates(out.spectrum);
    double p_exact = 0.0;
    if (!events_path.empty()) {
      std::ofstream ev(events_path);
      if (!ev) throw IoError("cannot write " + events_path);
      ev << std::setprecision(17) << "# radbkg-events v1 live_time_s="
         << out.spectrum.live_time_s << "\n";
      for (double e : out.event_deposits_kev) {
        ev << e << "\n";
        p_exact += e;
      }
      p_exact /= out.spectrum.live_time_s;
    }
    if (as_json) {
      json j;
      j["histories"] = rs.histories;
      j["live_time_s"] = out.spectrum.live_time_s;
      j["rates"] = triple_json(summary.rates);
      j["P_quantization_keV_per_s"] = summary.p_quantization_kev_per_s;
      j["phase_space"] = run_config.str("output.phase_space");
      j["spectrum"] = run_config.str("output.spectrum");
      if (!events_path.empty()) {
        j["events"] = events_path;
        j["P_exact_keV_per_s"] = p_exact;
      }
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "histories: " << rs.histories
                << "\nlive time: " << out.spectrum.live_time_s << " s\n"
                << "R = " << summary.rates.r_per_s << " 1/s\n"
                << "P = " << summary.rates.p_kev_per_s << " keV/s (bin-center, +-"
                << summary.p_quantization_kev_per_s << ")\n"
                << "M = " << summary.rates.m_per_s << " 1/s\n";
      if (!events_path.empty())
        std::cout << "P_exact = " << p_exact << " keV/s (" << events_path << ")\n";
    }
    return 0;
  }

  // sweep
  if (sweep_param.find(',') != std::string::npos)
    throw ConfigError(
        "sweep: one parameter at a time (the study design changes no more than "
        "one parameter from nominal); got '" + sweep_param + "'");
  auto values = split(sweep_values, ',');
  if (values.empty()) throw ConfigError("sweep: no values given");

  std::vector<SweepPoint> points;
  for (const auto& v : values) {
    Config c = config;
    SweepPoint pt;
    pt.label = v;
    if (sweep_param == "thickness") {
      c.set("substrate.thickness", v);
      pt.x = c.number("substrate.thickness") * 1e4;  // um
    } else if (sweep_param == "elevation") {
      c.set("environment.elevation", v);
      pt.x = c.number("environment.elevation") / 100.0;  // m
    } else if (sweep_param == "ceiling") {
      c.set("environment.ceiling", v);
      pt.x = c.number("environment.ceiling");
    } else if (sweep_param == "material") {
      c.set("substrate.material", v);
      pt.x = static_cast<double>(points.size());
    } else if (sweep_param == "size") {
      auto x_pos = v.find('x');
      auto sp = v.find(' ');
      if (x_pos == std::string::npos || sp == std::string::npos || sp < x_pos)
        throw ConfigError("sweep size values look like '10x5 mm'");
      std::string unit = v.substr(sp + 1);
      c.set("substrate.width", v.substr(0, x_pos) + " " + unit);
      c.set("substrate.length", v.substr(x_pos + 1, sp - x_pos - 1) + " " + unit);
      pt.x = c.number("substrate.width") * c.number("substrate.length") * 100.0;  // mm^2
    } else {
      throw ConfigError("sweep: unknown parameter '" + sweep_param + "'");
    }
    c.validate_domain();
    auto rb = compute_rates(c.substrate(), c.environment(), c.source_params(),
                            c.cr_scaling());
    pt.analytic = rb.total;
    if (sweep_mc) {
      RunSettings rs;
      rs.stage = sweep_stage == "gamma" ? Stage::gamma : Stage::cosmic;
      rs.histories = sweep_n ? sweep_n : config.count("mc.histories");
      rs.seed = seed;
      rs.threads = threads;
      rs.keep_phase_space = false;
      pt.has_mc = true;
      pt.mc = spectrum_to_rates(run_pipeline(c, rs).spectrum).rates;
    }
    points.push_back(pt);
  }

  // plot-ready table
  std::ofstream table(config.str("output.sweep_table"));
  if (!table) throw IoError("cannot write " + config.str("output.sweep_table"));
  table << std::setprecision(17);
  table << "# param=" << sweep_param << "\n";
  table << "value,R_per_s,P_keV_per_s,M_per_s";
  if (sweep_mc) table << ",mc_R_per_s,mc_P_keV_per_s,mc_M_per_s";
  table << "\n";
  for (const auto& pt : points) {
    table << pt.x << ',' << pt.analytic.r_per_s << ',' << pt.analytic.p_kev_per_s << ','
          << pt.analytic.m_per_s;
    if (pt.has_mc) table << ',' << pt.mc.r_per_s << ',' << pt.mc.p_kev_per_s << ',' << pt.mc.m_per_s;
    table << "\n";
  }

  json report;
  report["param"] = sweep_param;
  report["table"] = config.str("output.sweep_table");
  auto fit_series = [&](auto getter, const char* which) {
    std::vector<std::pair<double, double>> xy;
    for (const auto& pt : points) xy.emplace_back(pt.x, getter(pt));
    if (sweep_param == "thickness" && xy.size() >= 3) {
      auto f = fit_power_law(xy);
      report["fits"][which] = {{"model", "power_law"},
                               {"parameters", {{"amplitude", f.amplitude},
                                               {"exponent", f.exponent}}},
                               {"residual", f.residual_rms},
                               {"n_points", f.n_points}};
    } else if (sweep_param == "elevation" && xy.size() >= 3) {
      auto f = fit_exponential(xy);
      report["fits"][which] = {{"model", "exponential"},
                               {"parameters",
                                {{"rate_at_zero", f.rate_at_zero},
                                 {"scale_height_m", f.scale_height},
                                 {"diverged", f.diverged}}},
                               {"residual", f.residual_rms},
                               {"n_points", f.n_points}};
    }
  };
  fit_series([](const SweepPoint& p) { return p.analytic.p_kev_per_s; }, "analytic_P");
  fit_series([](const SweepPoint& p) { return p.analytic.r_per_s; }, "analytic_R");
  if (sweep_mc) {
    fit_series([](const SweepPoint& p) { return p.mc.p_kev_per_s; }, "mc_P");
    fit_series([](const SweepPoint& p) { return p.mc.r_per_s; }, "mc_R");
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
