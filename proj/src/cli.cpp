#include "satsec/cli.hpp"

#include <yaml-cpp/yaml.h>

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "satsec/approx.hpp"
#include "satsec/pointprocess.hpp"

namespace satsec::cli {

namespace {

const std::set<std::string> kMetrics{"c_erg", "p_out", "c_out", "cases", "mean_effective"};

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::string join_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

// A mapping whose keys must all be consumed; anything left over is a typo.
class Section {
public:
    Section(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path)) {
        if (node_ && !node_.IsNull() && !node_.IsMap()) fail(path_ + ": expected a mapping");
    }

    bool has(const std::string& key) {
        used_.insert(key);
        return node_ && node_.IsMap() && node_[key] && !node_[key].IsNull();
    }

    YAML::Node node(const std::string& key) {
        used_.insert(key);
        if (!node_ || !node_.IsMap()) return YAML::Node();
        return node_[key];
    }

    template <class T>
    void read(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = node_[key].as<T>();
        } catch (const YAML::Exception&) {
            fail(join_path(path_, key) + ": cannot read value '" + YAML::Dump(node_[key]) + "'");
        }
    }

    std::string path(const std::string& key) const { return join_path(path_, key); }

    void finish() const {
        if (!node_ || !node_.IsMap()) return;
        for (const auto& kv : node_) {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key)) fail("unknown key '" + join_path(path_, key) + "'");
        }
    }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

void set_path(YAML::Node node, const std::vector<std::string>& segs, std::size_t i, const YAML::Node& value,
              const std::string& full) {
    const std::string& seg = segs[i];
    const bool last = i + 1 == segs.size();
    if (node.IsSequence()) {
        std::size_t idx = 0;
        try {
            std::size_t used = 0;
            idx = std::stoul(seg, &used);
            if (used != seg.size()) throw std::invalid_argument(seg);
        } catch (const std::exception&) {
            fail("override '" + full + "': '" + seg + "' is not a list index");
        }
        if (idx > node.size()) fail("override '" + full + "': index " + seg + " is past the end of the list");
        if (idx == node.size()) node.push_back(YAML::Node(YAML::NodeType::Map));
        if (last)
            node[idx] = value;
        else
            set_path(node[idx], segs, i + 1, value, full);
        return;
    }
    if (node.IsDefined() && !node.IsNull() && !node.IsMap())
        fail("override '" + full + "': cannot descend into a scalar at '" + seg + "'");
    if (last)
        node[seg] = value;
    else
        set_path(node[seg], segs, i + 1, value, full);
}

void apply_override(YAML::Node& root, const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) fail("override '" + text + "' must look like key.path=value");
    const std::string path = text.substr(0, eq);
    std::vector<std::string> segs;
    std::stringstream ss(path);
    for (std::string s; std::getline(ss, s, '.');) {
        if (s.empty()) fail("override '" + text + "' has an empty path segment");
        segs.push_back(s);
    }
    YAML::Node value;
    try {
        value = YAML::Load(text.substr(eq + 1));
    } catch (const YAML::Exception& e) {
        fail("override '" + text + "': " + e.what());
    }
    if (!root.IsDefined() || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
    set_path(root, segs, 0, value, text);
}

double round_grid(double v) { return std::round(v * 1e9) / 1e9; }

std::vector<double> read_grid(Section& sweep) {
    const bool has_values = sweep.has("values");
    const bool has_range = sweep.has("range");
    if (has_values == has_range) fail("sweep: give exactly one of 'values' or 'range'");
    std::vector<double> grid;
    if (has_values) {
        const auto node = sweep.node("values");
        if (!node.IsSequence()) fail(sweep.path("values") + ": expected a list");
        for (const auto& v : node) {
            try {
                grid.push_back(v.as<double>());
            } catch (const YAML::Exception&) {
                fail(sweep.path("values") + ": entries must be numbers");
            }
        }
    } else {
        Section range(sweep.node("range"), sweep.path("range"));
        double start = 0.0, stop = 0.0, step = 0.0;
        for (const char* k : {"start", "stop", "step"})
            if (!range.has(k)) fail(range.path(k) + " is required");
        range.read("start", start);
        range.read("stop", stop);
        range.read("step", step);
        range.finish();
        if (!(step > 0.0) || !(stop >= start)) fail(sweep.path("range") + ": need step > 0 and stop >= start");
        const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (n > 100000) fail(sweep.path("range") + ": more than 100000 points");
        for (long long k = 0; k < n; ++k) grid.push_back(round_grid(start + static_cast<double>(k) * step));
    }
    if (grid.empty()) fail("sweep: the grid is empty");
    return grid;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

RunConfig parse_tree(const YAML::Node& root) {
    RunConfig cfg;
    Section top(root, "");
    auto& sys = cfg.scenario.system;

    {
        Section s(top.node("system"), "system");
        s.read("earth_radius_km", sys.earth_radius_km);
        s.read("path_loss_exponent", sys.path_loss_exponent);
        s.read("speed_of_light_mps", sys.speed_of_light);
        if (s.has("carrier_ghz")) {
            double ghz = 0.0;
            s.read("carrier_ghz", ghz);
            sys.carrier_hz = ghz * 1e9;
        }
        if (s.has("bandwidth_mhz")) {
            double mhz = 0.0;
            s.read("bandwidth_mhz", mhz);
            sys.bandwidth_hz = mhz * 1e6;
        }
        auto dbm = [&](const char* key, double& watt) {
            if (!s.has(key)) return;
            double v = 0.0;
            s.read(key, v);
            watt = dbm_to_watt(v);
        };
        dbm("tx_power_dbm", sys.tx_power_w);
        dbm("noise_psd_dbm_hz", sys.noise_psd_w_per_hz);
        auto dbi = [&](const char* key, double& lin) {
            if (!s.has(key)) return;
            double v = 0.0;
            s.read(key, v);
            lin = db_to_linear(v);
        };
        dbi("gain_tx_dbi", sys.gain_tx);
        dbi("gain_ml_dbi", sys.gain_ml);
        dbi("gain_sl_dbi", sys.gain_sl);
        auto deg = [&](const char* key, double& rad) {
            if (!s.has(key)) return;
            double v = 0.0;
            s.read(key, v);
            rad = deg_to_rad(v);
        };
        deg("beam_half_angle_deg", sys.beam_half_angle);
        deg("steer_angle_deg", sys.steer_angle);
        if (s.has("beam_mode")) {
            std::string mode;
            s.read("beam_mode", mode);
            if (mode == "fixed")
                cfg.scenario.beam_mode = BeamMode::fixed;
            else if (mode == "steerable")
                cfg.scenario.beam_mode = BeamMode::steerable;
            else
                fail("system.beam_mode: expected 'fixed' or 'steerable', got '" + mode + "'");
        }
        s.finish();
    }
    {
        Section s(top.node("fading"), "fading");
        s.read("b", cfg.scenario.fading.b);
        s.read("m", cfg.scenario.fading.m);
        s.read("omega", cfg.scenario.fading.omega);
        s.finish();
    }
    {
        Section s(top.node("serving"), "serving");
        s.read("altitude_km", cfg.scenario.serving_altitude);
        if (s.has("elevation_deg")) {
            double v = 0.0;
            s.read("elevation_deg", v);
            cfg.scenario.serving_elevation = deg_to_rad(v);
        }
        s.finish();
    }
    if (top.has("layers")) {
        const auto node = top.node("layers");
        if (!node.IsSequence() || node.size() == 0) fail("layers: expected a nonempty list");
        cfg.scenario.layers.clear();
        for (std::size_t i = 0; i < node.size(); ++i) {
            Section s(node[i], "layers." + std::to_string(i));
            LayerSpec l;
            if (!s.has("count") || !s.has("altitude_km")) fail("layers." + std::to_string(i) + ": needs count and altitude_km");
            s.read("count", l.count);
            s.read("altitude_km", l.altitude);
            s.finish();
            cfg.scenario.layers.push_back(l);
        }
    } else {
        top.node("layers");
    }
    {
        Section s(top.node("targets"), "targets");
        s.read("rate_bps_hz", cfg.rate_target);
        s.read("epsilon", cfg.epsilon);
        s.finish();
    }
    {
        Section s(top.node("numerics"), "numerics");
        auto& c = cfg.control;
        s.read("abs_tol", c.quad.abs_tol);
        s.read("rel_tol", c.quad.rel_tol);
        s.read("max_intervals", c.quad.max_intervals);
        s.read("tail_tol", c.tail_tol);
        s.read("pair_mass_tol", c.pair_mass_tol);
        s.read("exact_max_eavesdroppers", c.exact_max_eavesdroppers);
        s.read("outage_tol", c.outage_tol);
        s.read("rate_bracket_tail", c.rate_bracket_tail);
        s.read("series_rel_tol", cfg.scenario.series.rel_tol);
        s.read("series_n_max", cfg.scenario.series.n_max);
        s.finish();
    }
    {
        Section s(top.node("sweep"), "sweep");
        if (!s.has("variable")) fail("sweep.variable is required");
        std::string var;
        s.read("variable", var);
        cfg.variable = parse_sweep_var(var);
        cfg.grid = read_grid(s);
        if (s.has("methods")) {
            std::vector<std::string> names;
            s.read("methods", names);
            if (names.empty()) fail("sweep.methods: expected at least one method");
            cfg.methods.clear();
            for (const auto& n : names) cfg.methods.push_back(parse_method(n));
        }
        if (s.has("metrics")) {
            s.read("metrics", cfg.metrics);
            if (cfg.metrics.empty()) fail("sweep.metrics: expected at least one metric");
            for (const auto& m : cfg.metrics)
                if (!kMetrics.count(m)) fail("sweep.metrics: unknown metric '" + m + "'");
        }
        s.read("mc_trials", cfg.mc_trials);
        s.read("seed", cfg.seed);
        s.read("workers", cfg.workers);
        s.finish();
    }
    if (top.has("series")) {
        const auto node = top.node("series");
        if (!node.IsSequence()) fail("series: expected a list");
        for (std::size_t i = 0; i < node.size(); ++i) {
            const std::string where = "series." + std::to_string(i);
            Section s(node[i], where);
            Series ser;
            s.read("label", ser.label);
            if (!s.has("set")) fail(where + ".set is required");
            const auto set = s.node("set");
            if (!set.IsMap() || set.size() == 0) fail(where + ".set: expected a nonempty mapping");
            std::string auto_label;
            for (const auto& kv : set) {
                const auto key = kv.first.as<std::string>();
                YAML::Emitter em;
                em << YAML::Flow << kv.second;
                ser.overrides.emplace_back(key, em.c_str());
                if (!auto_label.empty()) auto_label += ";";
                auto_label += key + "=" + em.c_str();
            }
            if (ser.label.empty()) ser.label = auto_label;
            s.finish();
            cfg.series.push_back(std::move(ser));
        }
    }
    top.finish();

    if (cfg.mc_trials < 1) fail("sweep.mc_trials must be at least 1");
    if (cfg.workers < 0) fail("sweep.workers must be nonnegative");
    if (!(cfg.rate_target >= 0.0)) fail("targets.rate_bps_hz must be nonnegative");
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) fail("targets.epsilon must lie in (0, 1)");
    cfg.control.quad.workers = cfg.workers;
    try {
        cfg.scenario.validate();
        cfg.control.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    return cfg;
}

// Everything except the series list, resolved for one curve.
struct ResolvedRun {
    RunConfig cfg;
    std::string suffix;
};

std::vector<ResolvedRun> resolve_series(const RunConfig& cfg) {
    if (cfg.series.empty()) return {{cfg, ""}};
    std::vector<ResolvedRun> runs;
    for (const auto& s : cfg.series) {
        auto ov = cfg.overrides;
        for (const auto& [k, v] : s.overrides) ov.push_back(k + "=" + v);
        RunConfig sub = parse_config(cfg.source, ov);
        runs.push_back({std::move(sub), "@" + s.label});
    }
    return runs;
}

void check_methods(const RunConfig& cfg) {
    const bool multi = cfg.scenario.layers.size() > 1;
    for (Method m : cfg.methods)
        if (m == Method::exact && multi)
            fail("method 'exact' supports a single eavesdropper layer; use 'approx' or 'mc' for several layers");
    if (multi && (cfg.variable == SweepVar::a_e || cfg.variable == SweepVar::N))
        fail(std::string("sweep variable '") + sweep_var_name(cfg.variable) +
             "' is ambiguous with several layers; override layers.<i> in a series instead");
    for (double v : cfg.grid) {
        SnrScenario scn = cfg.scenario;
        double rate = cfg.rate_target;
        apply_sweep_value(cfg.variable, v, scn, rate);
        try {
            scn.validate();
        } catch (const std::invalid_argument& e) {
            fail(std::string("sweep value ") + format_number(v) + ": " + e.what());
        }
    }
}

bool wants(const RunConfig& cfg, const char* metric) {
    return std::find(cfg.metrics.begin(), cfg.metrics.end(), metric) != cfg.metrics.end();
}

double mean_effective_analytic(const SnrModel& model) {
    double sum = 0.0;
    for (std::size_t v = 0; v < model.layer_count(); ++v)
        sum += model.layer(v).count * region_probabilities(model.layer(v)).visible();
    return sum;
}

class Emitter {
public:
    Emitter(std::vector<Row>& rows, const std::string& var, double x, const std::string& suffix)
        : rows_(rows), var_(var), x_(x), suffix_(suffix) {}

    void analytic(Method m, const std::string& metric, double value) {
        rows_.push_back({var_, x_, method_name(m), metric + suffix_, value, std::nullopt, std::nullopt, std::nullopt});
    }
    void sampled(const std::string& metric, double value, std::optional<double> ci, long long n, std::uint64_t seed) {
        rows_.push_back({var_, x_, method_name(Method::montecarlo), metric + suffix_, value, ci, n, seed});
    }

private:
    std::vector<Row>& rows_;
    std::string var_;
    double x_;
    std::string suffix_;
};

void evaluate_analytic(Method m, const RunConfig& cfg, const SnrModel& model, double rate, Emitter& out) {
    if (m == Method::exact) {
        ExactSecrecy ex(model, cfg.control);
        if (wants(cfg, "c_erg")) out.analytic(m, "c_erg", ex.ergodic_capacity());
        if (wants(cfg, "p_out")) out.analytic(m, "p_out", ex.outage_probability(rate));
        if (wants(cfg, "c_out")) out.analytic(m, "c_out", ex.outage_capacity(cfg.epsilon));
        if (wants(cfg, "cases")) {
            const auto c = four_case_probabilities(model.layer(0).count, model.layer(0));
            out.analytic(m, "p_case1", c.p1);
            out.analytic(m, "p_case2", c.p2);
            out.analytic(m, "p_case3", c.p3);
            out.analytic(m, "p_case4", c.p4);
        }
        if (wants(cfg, "mean_effective")) out.analytic(m, "mean_effective", mean_effective_analytic(model));
    } else if (m == Method::approx) {
        if (wants(cfg, "c_erg")) out.analytic(m, "c_erg", approx_ergodic_capacity(model, cfg.control));
        if (wants(cfg, "p_out")) out.analytic(m, "p_out", approx_outage_probability(model, rate, cfg.control));
        if (wants(cfg, "c_out"))
            out.analytic(m, "c_out",
                         outage_capacity_given(
                             model, [&](double r) { return approx_outage_probability(model, r, cfg.control); },
                             cfg.epsilon, cfg.control));
        if (wants(cfg, "mean_effective")) out.analytic(m, "mean_effective", mean_effective_analytic(model));
    } else {
        if (wants(cfg, "c_erg")) {
            if (model.layer_count() == 1) {
                const auto h = high_snr_characterization(model);
                out.analytic(m, "c_erg_inf", h.c_erg_inf);
                out.analytic(m, "slope", h.slope);
                out.analytic(m, "offset", h.offset);
            }
            out.analytic(m, "c_erg_no_eav", capacity_no_eavesdroppers(model));
        }
        if (wants(cfg, "p_out")) out.analytic(m, "p_out_no_eav", outage_no_eavesdroppers(model, rate));
    }
}

void evaluate_montecarlo(const RunConfig& cfg, const SnrScenario& scn, double rate, Emitter& out) {
    MonteCarloOptions opts;
    opts.n_trials = cfg.mc_trials;
    opts.seed = cfg.seed;
    opts.workers = cfg.workers;
    opts.keep_samples = wants(cfg, "c_out");
    const auto batch = simulate_secrecy(scn, {rate}, opts);
    const long long n = batch.n_trials;
    if (wants(cfg, "c_erg")) out.sampled("c_erg", batch.mean_secrecy_rate, batch.mean_secrecy_rate_ci, n, cfg.seed);
    if (wants(cfg, "p_out")) out.sampled("p_out", batch.outage_frequency[0], batch.outage_ci[0], n, cfg.seed);
    if (wants(cfg, "c_out")) {
        const auto rep = montecarlo_report(batch, 0, cfg.epsilon);
        out.sampled("c_out", rep.c_out, std::nullopt, n, cfg.seed);
    }
    if (wants(cfg, "cases")) {
        for (int c = 0; c < 4; ++c) {
            const double p = batch.case_frequencies[c];
            const double ci = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
            out.sampled("p_case" + std::to_string(c + 1), p, ci, n, cfg.seed);
        }
    }
    if (wants(cfg, "mean_effective")) out.sampled("mean_effective", batch.mean_effective, std::nullopt, n, cfg.seed);
}

}  // namespace

const char* sweep_var_name(SweepVar v) {
    switch (v) {
        case SweepVar::a_e: return "a_e";
        case SweepVar::a_s: return "a_s";
        case SweepVar::N: return "N";
        case SweepVar::P_dBm: return "P_dBm";
        case SweepVar::R_t: return "R_t";
        case SweepVar::dw_sb: return "dw_sb";
        case SweepVar::theta_s: return "theta_s";
    }
    return "?";
}

SweepVar parse_sweep_var(const std::string& s) {
    for (SweepVar v : {SweepVar::a_e, SweepVar::a_s, SweepVar::N, SweepVar::P_dBm, SweepVar::R_t, SweepVar::dw_sb,
                       SweepVar::theta_s})
        if (s == sweep_var_name(v)) return v;
    fail("unknown sweep variable '" + s + "' (expected a_e, a_s, N, P_dBm, R_t, dw_sb or theta_s)");
}

Method parse_method(const std::string& s) {
    for (Method m : {Method::exact, Method::approx, Method::asymptotic, Method::montecarlo})
        if (s == method_name(m)) return m;
    fail("unknown method '" + s + "' (expected exact, approx, asymptotic or mc)");
}

RunConfig parse_config(const std::string& yaml_text, const std::vector<std::string>& overrides) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        fail(std::string("config is not valid YAML: ") + e.what());
    }
    if (root.IsDefined() && !root.IsNull() && !root.IsMap()) fail("config: top level must be a mapping");
    for (const auto& o : overrides) apply_override(root, o);
    RunConfig cfg = parse_tree(root);
    cfg.source = yaml_text;
    cfg.overrides = overrides;
    return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), overrides);
}

void apply_sweep_value(SweepVar v, double value, SnrScenario& scn, double& rate_target) {
    switch (v) {
        case SweepVar::a_e:
            for (auto& l : scn.layers) l.altitude = value;
            break;
        case SweepVar::a_s: scn.serving_altitude = value; break;
        case SweepVar::N:
            if (value < 0.0 || value != std::floor(value) || value > 1e9)
                fail("sweep value for N must be a nonnegative integer, got " + format_number(value));
            for (auto& l : scn.layers) l.count = static_cast<int>(value);
            break;
        case SweepVar::P_dBm: scn.system.tx_power_w = dbm_to_watt(value); break;
        case SweepVar::R_t:
            if (value < 0.0) fail("sweep value for R_t must be nonnegative");
            rate_target = value;
            break;
        case SweepVar::dw_sb: scn.system.steer_angle = deg_to_rad(value); break;
        case SweepVar::theta_s: scn.serving_elevation = deg_to_rad(value); break;
    }
}

std::vector<Row> run_sweep(const RunConfig& cfg, std::ostream& log) {
    std::vector<Row> rows;
    for (const auto& run : resolve_series(cfg)) {
        const RunConfig& c = run.cfg;
        check_methods(c);
        const std::string var = sweep_var_name(c.variable);
        for (double x : c.grid) {
            SnrScenario scn = c.scenario;
            double rate = c.rate_target;
            apply_sweep_value(c.variable, x, scn, rate);
            Emitter out(rows, var, x, run.suffix);
            const SnrModel model(scn);
            const bool has_approx = std::find(c.methods.begin(), c.methods.end(), Method::approx) != c.methods.end();
            for (Method m : c.methods) {
                if (m == Method::montecarlo) {
                    evaluate_montecarlo(c, scn, rate, out);
                    continue;
                }
                if (m == Method::exact && scn.total_eavesdroppers() > c.control.exact_max_eavesdroppers) {
                    log << "note: " << var << "=" << format_number(x) << ": N=" << scn.total_eavesdroppers()
                        << " exceeds the exact-mode cap of " << c.control.exact_max_eavesdroppers
                        << (has_approx ? "; exact rows skipped, approx rows cover it\n" : "; reporting approx instead\n");
                    if (!has_approx) evaluate_analytic(Method::approx, c, model, rate, out);
                    continue;
                }
                evaluate_analytic(m, c, model, rate, out);
            }
        }
    }
    return rows;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << csv_field(r.sweep_var) << ',' << format_number(r.sweep_value) << ',' << csv_field(r.method) << ','
            << csv_field(r.metric) << ',' << format_number(r.value) << ','
            << (r.ci ? format_number(*r.ci) : std::string()) << ','
            << (r.n_trials ? std::to_string(*r.n_trials) : std::string()) << ','
            << (r.seed ? std::to_string(*r.seed) : std::string()) << '\n';
    }
}

int main(int argc, char** argv) {
    CLI::App app{"Secrecy metrics of a satellite uplink with eavesdropping satellites"};
    std::string config_path, out_path = "-";
    std::optional<std::uint64_t> seed;
    std::optional<long long> trials;
    std::optional<int> workers;
    std::vector<std::string> methods, sets;
    app.add_option("--config", config_path, "YAML scenario and sweep description")->required();
    app.add_option("--out", out_path, "CSV output path, '-' for stdout");
    app.add_option("--seed", seed, "Monte-Carlo seed");
    app.add_option("--trials", trials, "Monte-Carlo trials per sweep point");
    app.add_option("--workers", workers, "Worker threads, 0 for one per core");
    app.add_option("--method", methods, "Methods to run: exact, approx, asymptotic, mc")->delimiter(',');
    app.add_option("--set", sets, "Config override key.path=value (repeatable)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::vector<std::string> overrides = sets;
    if (seed) overrides.push_back("sweep.seed=" + std::to_string(*seed));
    if (trials) overrides.push_back("sweep.mc_trials=" + std::to_string(*trials));
    if (workers) overrides.push_back("sweep.workers=" + std::to_string(*workers));
    if (!methods.empty()) {
        std::string list = "[";
        for (std::size_t i = 0; i < methods.size(); ++i) list += (i ? "," : "") + methods[i];
        overrides.push_back("sweep.methods=" + list + "]");
    }

    try {
        const RunConfig cfg = load_config(config_path, overrides);
        const auto rows = run_sweep(cfg, std::cerr);
        std::ostringstream csv;
        write_csv(csv, rows);
        if (out_path == "-") {
            std::cout << csv.str();
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!f) throw ConfigError("cannot write '" + out_path + "'");
            f << csv.str();
            if (!f) throw std::runtime_error("failed writing '" + out_path + "'");
        }
    } catch (const ConfigError& e) {
        std::cerr << "satsec: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "satsec: invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "satsec: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace satsec::cli
