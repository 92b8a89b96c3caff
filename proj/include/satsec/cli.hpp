#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "satsec/montecarlo.hpp"
#include "satsec/secrecy.hpp"

namespace satsec::cli {

/// Error in the configuration or command line; the message names the
/// offending key or value.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepVar { a_e, a_s, N, P_dBm, R_t, dw_sb, theta_s };

const char* sweep_var_name(SweepVar v);
SweepVar parse_sweep_var(const std::string& s);
Method parse_method(const std::string& s);

/// One curve of a figure: a label plus config overrides ("path", "value").
struct Series {
    std::string label;
    std::vector<std::pair<std::string, std::string>> overrides;
};

struct RunConfig {
    SnrScenario scenario;
    SecrecyControl control;
    double rate_target = 1.0;  // bits/s/Hz
    double epsilon = 0.1;

    SweepVar variable = SweepVar::R_t;
    std::vector<double> grid;
    std::vector<Method> methods{Method::exact};
    std::vector<std::string> metrics{"c_erg", "p_out", "c_out"};
    long long mc_trials = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::vector<Series> series;

    /// The document and overrides this was parsed from, so each series can
    /// be re-parsed with its own overrides on top.
    std::string source;
    std::vector<std::string> overrides;
};

/// Parses a YAML document with sections system, fading, serving, layers,
/// targets, numerics, sweep and series. Unknown keys are rejected.
/// Overrides use dotted paths such as "system.tx_power_dbm=30" or
/// "layers.0.altitude_km=800" and are applied before validation.
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});
RunConfig parse_config(const std::string& yaml_text, const std::vector<std::string>& overrides = {});

/// Applies one sweep value to a scenario (and to the target rate for R_t).
void apply_sweep_value(SweepVar v, double value, SnrScenario& scn, double& rate_target);

/// One CSV row.
struct Row {
    std::string sweep_var;
    double sweep_value = 0.0;
    std::string method;
    std::string metric;
    double value = 0.0;
    std::optional<double> ci;
    std::optional<long long> n_trials;
    std::optional<std::uint64_t> seed;
};

inline constexpr const char* kCsvHeader = "sweep_var,sweep_value,method,metric,value,ci_halfwidth,n_trials,seed";

/// Evaluates every (series, sweep value, method) combination in a fixed
/// order. Notes about automatic method changes go to log.
std::vector<Row> run_sweep(const RunConfig& cfg, std::ostream& log);

void write_csv(std::ostream& out, const std::vector<Row>& rows);

/// Entry point of the command-line tool. Returns the process exit code.
int main(int argc, char** argv);

}  // namespace satsec::cli
