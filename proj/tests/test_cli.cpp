#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <set>
#include <fstream>
#include <sstream>
#include <string>

#include "satsec/cli.hpp"
#include "testing.hpp"

using namespace satsec;
using namespace satsec::cli;

namespace {
const char* kMinimal = R"(
layers:
  - {count: 10, altitude_km: 600}
sweep:
  variable: R_t
  values: [0, 1, 2]
  methods: [exact]
  metrics: [p_out]
)";

std::string csv_of(const RunConfig& cfg) {
    std::ostringstream log, out;
    write_csv(out, run_sweep(cfg, log));
    return out.str();
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}
}  // namespace

TEST_CASE("defaults are the reference link budget and average shadowing") {
    const auto cfg = parse_config(kMinimal);
    const auto& sys = cfg.scenario.system;
    CHECK(sys.tx_power_w == rel(dbm_to_watt(23.0), 1e-15));
    CHECK(sys.gain_ml == rel(1000.0, 1e-14));
    CHECK(sys.gain_sl == rel(10.0, 1e-14));
    CHECK(sys.carrier_hz == 2e9);
    CHECK(cfg.scenario.fading.b == 0.126);
    CHECK(cfg.scenario.fading.m == 10.1);
    CHECK(cfg.scenario.fading.omega == 0.835);
    CHECK(cfg.grid == std::vector<double>{0, 1, 2});
}

TEST_CASE("units in the config are degrees, dBm and km") {
    const auto cfg = parse_config(std::string(kMinimal) + R"(
system: {tx_power_dbm: 30, beam_half_angle_deg: 20, gain_ml_dbi: 20, beam_mode: steerable, steer_angle_deg: 10}
serving: {altitude_km: 900, elevation_deg: 45}
)");
    CHECK(cfg.scenario.system.tx_power_w == rel(1.0, 1e-14));
    CHECK(cfg.scenario.system.beam_half_angle == rel(deg_to_rad(20.0), 1e-15));
    CHECK(cfg.scenario.system.gain_ml == rel(100.0, 1e-14));
    CHECK(cfg.scenario.beam_mode == BeamMode::steerable);
    CHECK(cfg.scenario.serving_altitude == 900.0);
    CHECK(cfg.scenario.serving_elevation == rel(deg_to_rad(45.0), 1e-15));
}

TEST_CASE("strict parsing") {
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "system: {tx_power_w: 1}\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(std::string(kMinimal) + "extra: 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"fading.q=3"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"sweep.variable=altitude"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"sweep.methods=[exact, magic]"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"sweep.values=[]"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"system.tx_power_dbm=loud"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"fading.m=-1"}), ConfigError);
    CHECK_THROWS_AS(parse_config(kMinimal, {"no_equals_sign"}), ConfigError);
    CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
    CHECK_THROWS_AS(parse_config("sweep: {values: [1]}"), ConfigError);
}

TEST_CASE("overrides and ranges") {
    const auto cfg = parse_config(kMinimal, {"layers.0.altitude_km=900", "sweep.values=", "sweep.range={start: 0, stop: 1, step: 0.25}"});
    CHECK(cfg.scenario.layers[0].altitude == 900.0);
    CHECK(cfg.grid == std::vector<double>{0, 0.25, 0.5, 0.75, 1.0});
    const auto two = parse_config(kMinimal, {"layers.1={count: 4, altitude_km: 1000}"});
    CHECK(two.scenario.layers.size() == 2);
    CHECK_THROWS_AS(parse_config(kMinimal, {"layers.5.count=1"}), ConfigError);
}

TEST_CASE("sweep application") {
    SnrScenario s;
    double rate = 1.0;
    apply_sweep_value(SweepVar::P_dBm, 30.0, s, rate);
    CHECK(s.system.tx_power_w == rel(1.0, 1e-14));
    apply_sweep_value(SweepVar::dw_sb, 15.0, s, rate);
    CHECK(s.system.steer_angle == rel(deg_to_rad(15.0), 1e-15));
    apply_sweep_value(SweepVar::theta_s, 30.0, s, rate);
    CHECK(s.serving_elevation == rel(deg_to_rad(30.0), 1e-15));
    apply_sweep_value(SweepVar::R_t, 2.5, s, rate);
    CHECK(rate == 2.5);
    apply_sweep_value(SweepVar::N, 42.0, s, rate);
    CHECK(s.layers[0].count == 42);
    CHECK_THROWS_AS(apply_sweep_value(SweepVar::N, 4.5, s, rate), ConfigError);
    for (auto v : {SweepVar::a_e, SweepVar::a_s, SweepVar::N, SweepVar::P_dBm, SweepVar::R_t, SweepVar::dw_sb,
                   SweepVar::theta_s})
        CHECK(parse_sweep_var(sweep_var_name(v)) == v);
}

TEST_CASE("CSV schema") {
    const auto text = csv_of(parse_config(kMinimal));
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "sweep_var,sweep_value,method,metric,value,ci_halfwidth,n_trials,seed");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("R_t,", 0) == 0);
        CHECK(line.find(",exact,p_out,") != std::string::npos);
        CHECK(line.substr(line.size() - 3) == ",,,");
    }
    CHECK(rows == 3);

    std::ostringstream out;
    write_csv(out, {Row{"N", 10, "mc", "c_erg@a,b", 1.5, 0.25, 100, 7}});
    CHECK(out.str().find("N,10,mc,\"c_erg@a,b\",1.5,0.25,100,7\n") != std::string::npos);
}

TEST_CASE("series become metric suffixes and Monte-Carlo rows carry CI fields") {
    const auto cfg = parse_config(std::string(kMinimal), {"sweep.methods=[approx, mc]", "sweep.mc_trials=500",
                                                          "series=[{label: small, set: {layers.0.count: 5}}, "
                                                          "{set: {layers.0.count: 50}}]"});
    std::ostringstream log;
    const auto rows = run_sweep(cfg, log);
    CHECK(rows.size() == 2 * 3 * 2);
    CHECK(rows.front().metric == "p_out@small");
    CHECK(rows.back().metric == "p_out@layers.0.count=50");
    CHECK(rows[1].method == "mc");
    CHECK(rows[1].ci.has_value());
    CHECK(rows[1].n_trials.value() == 500);
    CHECK(rows[1].seed.value() == 1);
}

TEST_CASE("method validity") {
    const auto multi = parse_config(kMinimal, {"layers.1={count: 4, altitude_km: 1000}"});
    std::ostringstream log;
    CHECK_THROWS_AS(run_sweep(multi, log), ConfigError);

    const auto big = parse_config(kMinimal, {"layers.0.count=600"});
    const auto rows = run_sweep(big, log);
    CHECK(rows.size() == 3);
    CHECK(rows[0].method == "approx");
    CHECK(log.str().find("exact-mode cap") != std::string::npos);
}

TEST_CASE("asymptotic rows") {
    const auto cfg = parse_config(kMinimal, {"sweep.methods=[asymptotic]", "sweep.metrics=[c_erg, p_out]"});
    std::ostringstream log;
    const auto rows = run_sweep(cfg, log);
    std::set<std::string> names;
    for (const auto& r : rows) names.insert(r.metric);
    CHECK(names == std::set<std::string>{"c_erg_inf", "slope", "offset", "c_erg_no_eav", "p_out_no_eav"});
}

TEST_CASE("command-line tool") {
    const std::string tool = SATSEC_TOOL;
    const std::string cfg = std::string(SATSEC_CONFIG_DIR) + "/fig08.yaml";
    const std::string out1 = "cli_test_w1.csv", out2 = "cli_test_w3.csv";
    CHECK(std::system((tool + " --config " + cfg + " --out " + out1 +
                       " --method exact,mc --trials 2000 --set series=[] --set sweep.range.step=1 --workers 1")
                          .c_str()) == 0);
    CHECK(std::system((tool + " --config " + cfg + " --out " + out2 +
                       " --method exact,mc --trials 2000 --set series=[] --set sweep.range.step=1 --workers 3")
                          .c_str()) == 0);
    const auto a = slurp(out1);
    CHECK(a.rfind(kCsvHeader, 0) == 0);
    CHECK(a == slurp(out2));
    CHECK(std::system((tool + " --config " + cfg + " --out x.csv --set sweep.values=[] --set sweep.range= 2>/dev/null")
                          .c_str()) != 0);
    CHECK(std::system((tool + " --config does-not-exist.yaml --out x.csv 2>/dev/null").c_str()) != 0);
    CHECK(std::system((tool + " --config " + cfg + " --set bogus.key=1 --out x.csv 2>/dev/null").c_str()) != 0);
}

TEST_CASE("every checked-in figure config parses") {
    for (int k = 3; k <= 11; ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "/fig%02d.yaml", k);
        CAPTURE(name);
        const auto cfg = load_config(std::string(SATSEC_CONFIG_DIR) + name);
        CHECK_FALSE(cfg.grid.empty());
    }
}
