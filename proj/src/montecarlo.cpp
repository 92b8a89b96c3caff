#include "satsec/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "satsec/parallel.hpp"

namespace satsec {

namespace {

constexpr double kZ95 = 1.959963984540054;

struct Vec3 {
    double x, y, z;
};

Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

// The terminal sits at (0, 0, r). Everything in km.
struct Terminal {
    double r;
    Vec3 pos() const { return {0.0, 0.0, r}; }
};

struct LinkPhysics {
    double numerator;  // P G_t (c / 4π f_c)² / (N₀ W)
    double alpha;
    double gain_ml, gain_sl;
    double half_angle;  // main lobe reaches the terminal when the off-nadir angle is within this

    LinkPhysics(const SystemParams& sys, BeamMode mode) {
        const double lambda_over_4pi = sys.speed_of_light / (4.0 * std::numbers::pi * sys.carrier_hz);
        numerator = sys.tx_power_w * sys.gain_tx * lambda_over_4pi * lambda_over_4pi /
                    (sys.noise_psd_w_per_hz * sys.bandwidth_hz);
        alpha = sys.path_loss_exponent;
        gain_ml = sys.gain_ml;
        gain_sl = sys.gain_sl;
        half_angle = sys.beam_half_angle + (mode == BeamMode::steerable ? sys.steer_angle : 0.0);
    }

    double snr(double distance_km, double gain, double h) const {
        return h * numerator * gain / std::pow(1000.0 * distance_km, alpha);
    }
};

struct Satellite {
    Vec3 pos;
    double psi;
    double azimuth;
};

Satellite draw_on_shell(double radius, double cos_lo, double cos_hi, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> cos_dist(cos_lo, cos_hi);
    std::uniform_real_distribution<double> az_dist(0.0, 2.0 * std::numbers::pi);
    const double c = cos_dist(rng);
    const double az = az_dist(rng);
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    return {{radius * s * std::cos(az), radius * s * std::sin(az), radius * c}, std::acos(c), az};
}

bool above_horizon(const Satellite& s, const Terminal& t) { return s.pos.z > t.r; }

// Angle at the satellite between its nadir and the terminal.
double off_nadir_angle(const Satellite& s, const Terminal& t) {
    const Vec3 to_terminal = t.pos() - s.pos;
    const Vec3 nadir{-s.pos.x, -s.pos.y, -s.pos.z};
    const double c = dot(nadir, to_terminal) / (norm(nadir) * norm(to_terminal));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

// Received SNR at the eavesdropper and whether its main lobe covers the terminal.
std::pair<double, bool> eavesdropper_snr(const Satellite& s, const Terminal& t, const LinkPhysics& phys,
                                         const FadingParams& fading, std::mt19937_64& rng) {
    const double off = off_nadir_angle(s, t);
    const double gain = antenna_gain(off, phys.half_angle, phys.gain_ml, phys.gain_sl);
    const double d = norm(t.pos() - s.pos);
    return {phys.snr(d, gain, sr_sample(fading, rng)), gain == phys.gain_ml};
}

double serving_path_km(const SnrScenario& scn) {
    // Ray from the terminal at elevation θ meets the shell of radius r + a_s.
    const double r = scn.system.earth_radius_km;
    const Vec3 dir{std::cos(scn.serving_elevation), 0.0, std::sin(scn.serving_elevation)};
    const double R = r + scn.serving_altitude;
    const double b = r * dir.z;
    const double t = -b + std::sqrt(b * b + R * R - r * r);
    const Vec3 sat{t * dir.x, 0.0, r + t * dir.z};
    return norm(sat - Terminal{r}.pos());
}

struct BlockTally {
    double rate_sum = 0.0;
    double rate_sq_sum = 0.0;
    std::vector<long long> outage;
    std::array<long long, 4> cases{};
    long long effective = 0;
};

double empirical_quantile(std::vector<double>& sorted_values, double level) {
    if (sorted_values.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double pos = level * static_cast<double>(sorted_values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted_values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted_values[lo] * (1.0 - frac) + sorted_values[hi] * frac;
}

double proportion_ci(double p, long long n) { return kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(n)); }

}  // namespace

std::vector<SampledSatellite> sample_constellation(const EavesdropperLayer& layer, std::mt19937_64& rng) {
    std::vector<SampledSatellite> out;
    out.reserve(static_cast<std::size_t>(layer.count));
    const double radius = layer.earth_radius + layer.altitude;
    for (int i = 0; i < layer.count; ++i) {
        const auto s = draw_on_shell(radius, -1.0, 1.0, rng);
        SampledSatellite ss;
        ss.psi = s.psi;
        ss.azimuth = s.azimuth;
        ss.effective = ss.psi <= layer.psi_max;
        ss.mainlobe = ss.effective && ss.psi <= layer.psi_th;
        out.push_back(ss);
    }
    return out;
}

void MonteCarloOptions::validate() const {
    if (n_trials < 1) throw std::invalid_argument("n_trials must be at least 1, got " + std::to_string(n_trials));
    if (block_size < 1) throw std::invalid_argument("block_size must be positive");
    if (workers < 0) throw std::invalid_argument("workers must be nonnegative");
}

TrialBatchResult simulate_secrecy(const SnrScenario& scn, const std::vector<double>& rate_grid,
                                  const MonteCarloOptions& opts) {
    scn.validate();
    opts.validate();
    for (double r : rate_grid)
        if (!(r >= 0.0)) throw std::invalid_argument("rate grid entries must be nonnegative");

    const Terminal term{scn.system.earth_radius_km};
    const LinkPhysics phys(scn.system, scn.beam_mode);
    const double d_s = serving_path_km(scn);
    const long long n = opts.n_trials;
    const long long bs = opts.block_size;
    const auto n_blocks = static_cast<std::size_t>((n + bs - 1) / bs);

    std::vector<double> gs(static_cast<std::size_t>(n)), ge(static_cast<std::size_t>(n)),
        rate(static_cast<std::size_t>(n));
    std::vector<BlockTally> tallies(n_blocks);

    parallel_for(n_blocks, resolve_workers(opts.workers), [&](std::size_t b) {
        auto rng = substream(opts.seed, b);
        BlockTally& t = tallies[b];
        t.outage.assign(rate_grid.size(), 0);
        const long long first = static_cast<long long>(b) * bs;
        const long long last = std::min(n, first + bs);
        for (long long i = first; i < last; ++i) {
            const double g_s = phys.snr(d_s, phys.gain_ml, sr_sample(scn.fading, rng));
            double g_e = 0.0;
            int n_main = 0, n_side = 0;
            for (const auto& l : scn.layers) {
                const double radius = term.r + l.altitude;
                for (int k = 0; k < l.count; ++k) {
                    const auto sat = draw_on_shell(radius, -1.0, 1.0, rng);
                    if (!above_horizon(sat, term)) continue;
                    const auto [snr, main] = eavesdropper_snr(sat, term, phys, scn.fading, rng);
                    g_e = std::max(g_e, snr);
                    (main ? n_main : n_side) += 1;
                }
            }
            const double r = std::max(0.0, std::log2((1.0 + g_s) / (1.0 + g_e)));
            const auto idx = static_cast<std::size_t>(i);
            gs[idx] = g_s;
            ge[idx] = g_e;
            rate[idx] = r;
            t.rate_sum += r;
            t.rate_sq_sum += r * r;
            for (std::size_t j = 0; j < rate_grid.size(); ++j)
                if (r <= rate_grid[j]) ++t.outage[j];
            t.cases[(n_main > 0 ? 2 : 0) + (n_side > 0 ? 1 : 0)] += 1;
            t.effective += n_main + n_side;
        }
    });

    TrialBatchResult res;
    res.n_trials = n;
    res.seed = opts.seed;
    res.rate_grid = rate_grid;
    double sum = 0.0, sq = 0.0;
    std::vector<long long> outage(rate_grid.size(), 0);
    std::array<long long, 4> cases{};
    long long effective = 0;
    for (const auto& t : tallies) {  // fixed block order
        sum += t.rate_sum;
        sq += t.rate_sq_sum;
        for (std::size_t j = 0; j < outage.size(); ++j) outage[j] += t.outage[j];
        for (int c = 0; c < 4; ++c) cases[c] += t.cases[c];
        effective += t.effective;
    }
    const double nd = static_cast<double>(n);
    res.mean_secrecy_rate = sum / nd;
    const double var = n > 1 ? std::max(0.0, (sq - sum * sum / nd) / (nd - 1.0)) : 0.0;
    res.mean_secrecy_rate_ci = kZ95 * std::sqrt(var / nd);
    for (long long o : outage) {
        const double p = static_cast<double>(o) / nd;
        res.outage_frequency.push_back(p);
        res.outage_ci.push_back(proportion_ci(p, n));
    }
    // cases index: 0 none, 1 side only, 2 main only, 3 both
    res.case_frequencies = {static_cast<double>(cases[0]) / nd, static_cast<double>(cases[1]) / nd,
                            static_cast<double>(cases[2]) / nd, static_cast<double>(cases[3]) / nd};
    res.mean_effective = static_cast<double>(effective) / nd;

    if (opts.keep_samples) {
        res.serving_snr = gs;
        res.eav_snr = ge;
        res.secrecy_rate = rate;
    }
    std::sort(gs.begin(), gs.end());
    std::sort(ge.begin(), ge.end());
    for (std::size_t k = 0; k < TrialBatchResult::quantile_levels.size(); ++k) {
        res.serving_snr_quantiles[k] = empirical_quantile(gs, TrialBatchResult::quantile_levels[k]);
        res.eav_snr_quantiles[k] = empirical_quantile(ge, TrialBatchResult::quantile_levels[k]);
    }
    return res;
}

SecrecyReport montecarlo_report(const TrialBatchResult& batch, std::size_t k, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (batch.secrecy_rate.empty()) throw std::invalid_argument("batch kept no secrecy-rate samples");
    SecrecyReport rep;
    rep.method = Method::montecarlo;
    rep.rate_target = batch.rate_grid.at(k);
    rep.epsilon = epsilon;
    rep.n_trials = batch.n_trials;
    rep.c_erg = batch.mean_secrecy_rate;
    rep.c_erg_ci = batch.mean_secrecy_rate_ci;
    rep.p_out = batch.outage_frequency[k];
    rep.p_out_ci = batch.outage_ci[k];

    std::vector<double> r = batch.secrecy_rate;
    std::sort(r.begin(), r.end());
    const auto zero_count = std::upper_bound(r.begin(), r.end(), 0.0) - r.begin();
    if (static_cast<double>(zero_count) / static_cast<double>(r.size()) >= epsilon) {
        rep.rate_at_epsilon = 0.0;
        rep.diagnostics.outage_infeasible = true;
    } else {
        rep.rate_at_epsilon = empirical_quantile(r, epsilon);
    }
    rep.c_out = (1.0 - epsilon) * rep.rate_at_epsilon;
    return rep;
}

SecrecyReport montecarlo_secrecy_metrics(const SnrScenario& scn, double rate, double epsilon,
                                         const MonteCarloOptions& opts) {
    MonteCarloOptions o = opts;
    o.keep_samples = true;
    return montecarlo_report(simulate_secrecy(scn, {rate}, o), 0, epsilon);
}

std::vector<double> sample_conditioned_eav_snr(const SnrScenario& scn, int p, int q, long long n, std::uint64_t seed,
                                               std::size_t v) {
    scn.validate();
    if (p < 0 || q < 0 || p + q == 0) throw std::invalid_argument("need p, q >= 0 with p + q >= 1");
    const Terminal term{scn.system.earth_radius_km};
    const LinkPhysics phys(scn.system, scn.beam_mode);
    const double radius = term.r + scn.layers.at(v).altitude;
    const double cos_horizon = term.r / radius;
    auto rng = substream(seed, 0);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    // Draw visible satellites and keep them by the lobe their antenna
    // actually presents, until p main-lobe and q side-lobe ones are in hand.
    for (long long i = 0; i < n; ++i) {
        int need_main = p, need_side = q;
        double best = 0.0;
        long long attempts = 0;
        while (need_main > 0 || need_side > 0) {
            if (++attempts > 100000000)
                throw std::runtime_error("conditioned sampler cannot reach the requested lobe counts");
            const auto sat = draw_on_shell(radius, cos_horizon, 1.0, rng);
            const bool main = off_nadir_angle(sat, term) <= phys.half_angle;
            int& need = main ? need_main : need_side;
            if (need == 0) continue;
            --need;
            best = std::max(best, eavesdropper_snr(sat, term, phys, scn.fading, rng).first);
        }
        out.push_back(best);
    }
    return out;
}

std::vector<double> sample_serving_snr(const SnrScenario& scn, long long n, std::uint64_t seed) {
    scn.validate();
    const LinkPhysics phys(scn.system, scn.beam_mode);
    const double d_s = serving_path_km(scn);
    auto rng = substream(seed, 0);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = phys.snr(d_s, phys.gain_ml, sr_sample(scn.fading, rng));
    return out;
}

EffectiveCountResult simulate_effective_counts(const EavesdropperLayer& layer, long long n_constellations,
                                               std::uint64_t seed, int workers, int block_size) {
    if (n_constellations < 1) throw std::invalid_argument("need at least one constellation");
    if (block_size < 1) throw std::invalid_argument("block_size must be positive");
    const long long bs = block_size;
    const auto n_blocks = static_cast<std::size_t>((n_constellations + bs - 1) / bs);
    struct Tally {
        double sum = 0.0, sq = 0.0;
        std::array<long long, 4> cases{};
    };
    std::vector<Tally> tallies(n_blocks);
    parallel_for(n_blocks, resolve_workers(workers), [&](std::size_t b) {
        auto rng = substream(seed, b);
        auto& t = tallies[b];
        const long long first = static_cast<long long>(b) * bs;
        const long long last = std::min(n_constellations, first + bs);
        for (long long i = first; i < last; ++i) {
            int main = 0, side = 0;
            for (const auto& s : sample_constellation(layer, rng)) {
                if (!s.effective) continue;
                (s.mainlobe ? main : side) += 1;
            }
            const double k = main + side;
            t.sum += k;
            t.sq += k * k;
            t.cases[(main > 0 ? 2 : 0) + (side > 0 ? 1 : 0)] += 1;
        }
    });
    EffectiveCountResult res;
    res.n_constellations = n_constellations;
    double sum = 0.0, sq = 0.0;
    std::array<long long, 4> cases{};
    for (const auto& t : tallies) {
        sum += t.sum;
        sq += t.sq;
        for (int c = 0; c < 4; ++c) cases[c] += t.cases[c];
    }
    const double nd = static_cast<double>(n_constellations);
    res.mean = sum / nd;
    res.stddev = n_constellations > 1 ? std::sqrt(std::max(0.0, (sq - sum * sum / nd) / (nd - 1.0))) : 0.0;
    res.standard_error = res.stddev / std::sqrt(nd);
    for (int c = 0; c < 4; ++c) res.case_frequencies[c] = static_cast<double>(cases[c]) / nd;
    res.effective_fraction = layer.count > 0 ? res.mean / layer.count : 0.0;
    return res;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("KS statistic needs samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS statistic needs samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

}  // namespace satsec
