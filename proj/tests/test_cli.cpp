#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  std::string out_path = "cli_out.tmp", err_path = "cli_err.tmp";
  std::string cmd = std::string(RADBKG_CLI_PATH) + " " + args + " >" + out_path +
                    " 2>" + err_path;
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("estimate reports the nominal totals", "[cli]") {
  auto r = run_cli("estimate --json");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK_THAT(j["total"]["R_per_s"].get<double>(),
             Catch::Matchers::WithinRel(78.22e-3, 1e-12));
  CHECK_THAT(j["total"]["P_keV_per_s"].get<double>(),
             Catch::Matchers::WithinRel(12.23, 1e-12));
  CHECK_THAT(j["total"]["M_per_s"].get<double>(),
             Catch::Matchers::WithinRel(230e-6, 1e-12));
  CHECK(j["sources"].size() == 6);
}

TEST_CASE("halving the area halves every rate", "[cli]") {
  write_file("cli_half.cfg", "[substrate]\nwidth = 10 mm\nlength = 5 mm\n");
  auto full = json::parse(run_cli("estimate --json").out);
  auto half = json::parse(run_cli("estimate --json --config cli_half.cfg").out);
  std::remove("cli_half.cfg");
  // factor out the (known) shape correction so only the area scaling remains
  for (auto q : {"R_per_s", "P_keV_per_s", "M_per_s"}) {
    double f = full["sources"]["cosmic"][q].get<double>();
    double h = half["sources"]["cosmic"][q].get<double>();
    double kf = 1.0, kh = 1.0;
    if (std::string(q) == "R_per_s") {
      kf = full["sources"]["cosmic"]["kappa_R"]["shape"].get<double>();
      kh = half["sources"]["cosmic"]["kappa_R"]["shape"].get<double>();
    } else if (std::string(q) == "P_keV_per_s") {
      kf = full["sources"]["cosmic"]["kappa_P"]["shape"].get<double>();
      kh = half["sources"]["cosmic"]["kappa_P"]["shape"].get<double>();
    }
    CHECK_THAT(h / kh * 2.0, Catch::Matchers::WithinRel(f / kf, 1e-9));
  }
}

TEST_CASE("unknown materials exit with code 2 and list the known set", "[cli]") {
  write_file("cli_bad.cfg", "[substrate]\nmaterial = kryptonite\n");
  auto r = run_cli("estimate --config cli_bad.cfg");
  std::remove("cli_bad.cfg");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("kryptonite") != std::string::npos);
  CHECK(r.err.find("gaas") != std::string::npos);
  CHECK(r.err.find("concrete") != std::string::npos);
}

TEST_CASE("unknown config keys exit with code 2 naming the key", "[cli]") {
  write_file("cli_typo.cfg", "[environment]\nelevatoin = 100 m\n");
  auto r = run_cli("estimate --config cli_typo.cfg");
  std::remove("cli_typo.cfg");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("elevatoin") != std::string::npos);
}

TEST_CASE("simulate is bit-reproducible across runs and thread counts", "[cli]") {
  write_file("cli_sim.cfg",
             "[output]\nphase_space = cli_ps_a.csv\nspectrum = cli_sp_a.csv\n");
  auto r1 = run_cli("simulate --stage gamma -n 20000 --seed 11 --config cli_sim.cfg");
  REQUIRE(r1.exit_code == 0);
  std::string ps1 = slurp("cli_ps_a.csv"), sp1 = slurp("cli_sp_a.csv");
  auto r2 = run_cli(
      "simulate --stage gamma -n 20000 --seed 11 --threads 2 --config cli_sim.cfg");
  REQUIRE(r2.exit_code == 0);
  std::string ps2 = slurp("cli_ps_a.csv"), sp2 = slurp("cli_sp_a.csv");
  CHECK(ps1 == ps2);
  CHECK(sp1 == sp2);
  CHECK(!ps1.empty());
  auto r3 = run_cli("simulate --stage gamma -n 20000 --seed 12 --config cli_sim.cfg");
  REQUIRE(r3.exit_code == 0);
  CHECK(slurp("cli_ps_a.csv") != ps1);  // different seed, different sequence
  std::remove("cli_sim.cfg");
  std::remove("cli_ps_a.csv");
  std::remove("cli_sp_a.csv");
}

TEST_CASE("dump-config round-trips", "[cli]") {
  auto dumped = run_cli("--dump-config");
  REQUIRE(dumped.exit_code == 0);
  write_file("cli_dumped.cfg", dumped.out);
  auto again = run_cli("--dump-config --config cli_dumped.cfg");
  std::remove("cli_dumped.cfg");
  REQUIRE(again.exit_code == 0);
  CHECK(again.out == dumped.out);
}

TEST_CASE("print-params exposes the compiled defaults", "[cli]") {
  auto r = run_cli("--print-params");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["k40"]["g_per_s"].get<double>() == 6.8e-3);
  CHECK(j["cosmic"]["m_per_s"].get<double>() == 180e-6);
  CHECK(j["u238a"]["rho_Ga_g_cm3"].get<double>() == 15.0);
  CHECK(j["g_cosmic_gallium_per_s"].get<double>() == 7e-3);
}

TEST_CASE("analytic thickness sweep recovers the built-in exponent", "[cli]") {
  // gamma terms only: zero out the cosmic-ray row so P is a pure power law
  write_file("cli_sweep.cfg",
             "[sources]\nc_cosmic = 0 /s\ng_cosmic = 0 /s\np_cosmic = 0 keV/s\n"
             "m_cosmic = 0 /s\n[output]\nsweep_table = cli_sweep_out.csv\n");
  auto r = run_cli(
      "sweep --param thickness --values '1 um,3 um,10 um,30 um,100 um,300 um,500 um,"
      "1500 um' --config cli_sweep.cfg");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["fits"]["analytic_P"]["model"] == "power_law");
  CHECK_THAT(j["fits"]["analytic_P"]["parameters"]["exponent"].get<double>(),
             Catch::Matchers::WithinAbs(1.12, 1e-9));
  CHECK(j["fits"]["analytic_P"]["residual"].get<double>() < 1e-9);
  CHECK(!slurp("cli_sweep_out.csv").empty());
  std::remove("cli_sweep.cfg");
  std::remove("cli_sweep_out.csv");
}

TEST_CASE("analytic elevation sweep recovers the configured scale height", "[cli]") {
  write_file("cli_elev.cfg",
             "[sources]\nactivity_k40 = 0 Bq/kg\nactivity_th232a = 0 Bq/kg\n"
             "activity_th232b = 0 Bq/kg\nactivity_u238a = 0 Bq/kg\n"
             "activity_u238b = 0 Bq/kg\n[output]\nsweep_table = cli_elev_out.csv\n");
  auto r = run_cli(
      "sweep --param elevation --values '0 m,500 m,1000 m,1500 m,2000 m,3000 m' "
      "--config cli_elev.cfg");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["fits"]["analytic_R"]["model"] == "exponential");
  CHECK_THAT(j["fits"]["analytic_R"]["parameters"]["scale_height_m"].get<double>(),
             Catch::Matchers::WithinRel(2000.0, 1e-6));
  std::remove("cli_elev.cfg");
  std::remove("cli_elev_out.csv");
}

TEST_CASE("material and size sweeps run analytically", "[cli]") {
  write_file("cli_msz.cfg", "[output]\nsweep_table = cli_msz_out.csv\n");
  auto r = run_cli(
      "sweep --param material --values 'si,sic,al2o3,gaas' --config cli_msz.cfg");
  REQUIRE(r.exit_code == 0);
  std::string table = slurp("cli_msz_out.csv");
  CHECK(std::count(table.begin(), table.end(), '\n') >= 5);  // header + 4 rows

  auto r2 = run_cli(
      "sweep --param size --values '10x10 mm,10x5 mm,10x1 mm,5x5 mm' "
      "--config cli_msz.cfg");
  REQUIRE(r2.exit_code == 0);
  // bad size grammar is a config error
  auto r3 = run_cli("sweep --param size --values '10by10' --config cli_msz.cfg");
  CHECK(r3.exit_code == 2);
  std::remove("cli_msz.cfg");
  std::remove("cli_msz_out.csv");
}

TEST_CASE("multi-parameter sweeps are refused with the study-design message",
          "[cli]") {
  auto r = run_cli("sweep --param thickness,elevation --values '1 um'");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("one parameter at a time") != std::string::npos);
}

TEST_CASE("unwritable outputs exit with the I/O code", "[cli]") {
  write_file("cli_io.cfg", "[output]\nphase_space = /nonexistent/dir/x.csv\n");
  auto r = run_cli("simulate --stage gamma -n 1000 --seed 1 --config cli_io.cfg");
  std::remove("cli_io.cfg");
  CHECK(r.exit_code == 4);
}

TEST_CASE("physics-impossible runs exit with the runtime code", "[cli]") {
  // generation area smaller than the re-aim disc: rejected at run time
  write_file("cli_rt.cfg", "[mc]\ngeneration_area = 1 cm2\n");
  auto r = run_cli("simulate --stage gamma -n 1000 --seed 1 --config cli_rt.cfg");
  std::remove("cli_rt.cfg");
  CHECK(r.exit_code == 3);
}

TEST_CASE("domain-invalid config values exit with the config code", "[cli]") {
  write_file("cli_dom.cfg", "[substrate]\nthickness = -5 um\n");
  auto r = run_cli("estimate --config cli_dom.cfg");
  std::remove("cli_dom.cfg");
  CHECK(r.exit_code == 2);
}

TEST_CASE("simulated gamma deposits fall steeply and carry no lines", "[cli]") {
  write_file("cli_shape.cfg",
             "[output]\nphase_space = cli_shape_ps.csv\nspectrum = cli_shape_sp.csv\n");
  auto r = run_cli(
      "simulate --stage gamma -n 1000000 --seed 3 --threads 2 --config cli_shape.cfg");
  REQUIRE(r.exit_code == 0);
  std::remove("cli_shape.cfg");
  std::remove("cli_shape_ps.csv");
  // decade-by-decade event counts fall monotonically, and the strongest
  // emission line leaves no spike in the deposited spectrum
  std::ifstream in("cli_shape_sp.csv");
  REQUIRE(in.good());
  std::string line;
  std::getline(in, line);  // header
  double d1 = 0.0, d2 = 0.0, d3 = 0.0;
  double at_line = 0.0, near_line = 0.0;
  int near_n = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    double lo, hi, count;
    std::sscanf(line.c_str(), "%lf,%lf,%lf", &lo, &hi, &count);
    if (lo >= 10.0 && hi <= 100.0) d1 += count;
    if (lo >= 100.0 && hi <= 1000.0) d2 += count;
    if (lo >= 1000.0 && hi <= 3000.0) d3 += count;
    if (lo <= 1460.8 && 1460.8 < hi) at_line = count;
    if ((lo > 1200.0 && hi < 1440.0) || (lo > 1490.0 && hi < 1750.0)) {
      near_line += count;
      ++near_n;
    }
  }
  std::remove("cli_shape_sp.csv");
  CHECK(d1 > d2);
  CHECK(d2 > d3);
  REQUIRE(near_n > 0);
  CHECK(at_line <= 3.0 * (near_line / near_n) + 3.0);
}

TEST_CASE("the events flag yields the exact power alongside the binned one",
          "[cli]") {
  write_file("cli_ev.cfg",
             "[output]\nphase_space = cli_ev_ps.csv\nspectrum = cli_ev_sp.csv\n");
  auto r = run_cli(
      "simulate --stage gamma -n 150000 --seed 8 --events cli_ev_events.csv "
      "--json --config cli_ev.cfg");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  double p_binned = j["rates"]["P_keV_per_s"].get<double>();
  double p_exact = j["P_exact_keV_per_s"].get<double>();
  double bound = j["P_quantization_keV_per_s"].get<double>();
  CHECK(std::abs(p_binned - p_exact) <= bound);
  // the event list reproduces the exact power
  std::ifstream ev("cli_ev_events.csv");
  REQUIRE(ev.good());
  std::string line;
  std::getline(ev, line);
  REQUIRE(line.rfind("# radbkg-events v1", 0) == 0);
  double sum = 0.0;
  int count = 0;
  while (std::getline(ev, line)) {
    sum += std::stod(line);
    ++count;
  }
  CHECK(count > 0);
  CHECK_THAT(sum / j["live_time_s"].get<double>(),
             Catch::Matchers::WithinRel(p_exact, 1e-12));
  std::remove("cli_ev.cfg");
  std::remove("cli_ev_ps.csv");
  std::remove("cli_ev_sp.csv");
  std::remove("cli_ev_events.csv");
}

TEST_CASE("MC sweeps emit per-point rates and fits", "[cli]") {
  write_file("cli_mcsweep.cfg", "[output]\nsweep_table = cli_mcsweep_out.csv\n"
                                "[cosmic]\nspecies = mu-,mu+\n");
  auto r = run_cli(
      "sweep --param elevation --values '0 m,1500 m,3000 m' --mc --stage cosmic "
      "-n 60000 --seed 2 --threads 2 --config cli_mcsweep.cfg");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["fits"].contains("mc_R"));
  double lambda = j["fits"]["mc_R"]["parameters"]["scale_height_m"].get<double>();
  CHECK(lambda > 3000.0);
  CHECK(lambda < 8000.0);
  std::string table = slurp("cli_mcsweep_out.csv");
  CHECK(table.find("mc_R_per_s") != std::string::npos);
  std::remove("cli_mcsweep.cfg");
  std::remove("cli_mcsweep_out.csv");
}
