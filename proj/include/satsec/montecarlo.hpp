#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "satsec/secrecy.hpp"

namespace satsec {

/// One eavesdropping satellite drawn uniformly on its shell.
struct SampledSatellite {
    double psi = 0.0;      // polar angle from the terminal's zenith, rad
    double azimuth = 0.0;  // rad
    bool effective = false;
    bool mainlobe = false;
};

/// N points uniform on the shell: cos ψ ~ U[-1, 1], azimuth ~ U[0, 2π).
/// Lobe labels use the layer's (possibly steered) threshold angle.
std::vector<SampledSatellite> sample_constellation(const EavesdropperLayer& layer, std::mt19937_64& rng);

struct MonteCarloOptions {
    long long n_trials = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    /// Keep per-trial γ_s, γ_e* and R in trial order.
    bool keep_samples = false;
    /// Trials per random substream. Results depend on it, but not on workers.
    int block_size = 1024;

    void validate() const;
};

/// Aggregated outcome of a batch of independent uplink realizations.
struct TrialBatchResult {
    long long n_trials = 0;
    std::uint64_t seed = 0;

    double mean_secrecy_rate = 0.0;
    double mean_secrecy_rate_ci = 0.0;  // 95% half-width

    std::vector<double> rate_grid;
    std::vector<double> outage_frequency;  // P[R <= R_t] per grid point
    std::vector<double> outage_ci;

    /// Frequencies of: no visible eavesdropper, side lobe only, main lobe
    /// only, both lobes occupied. Counts are pooled over all layers.
    std::array<double, 4> case_frequencies{};
    double mean_effective = 0.0;

    /// Quantiles of γ_s and γ_e* at quantile_levels.
    static constexpr std::array<double, 9> quantile_levels{0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};
    std::array<double, 9> serving_snr_quantiles{};
    std::array<double, 9> eav_snr_quantiles{};

    /// Filled only with keep_samples.
    std::vector<double> serving_snr;
    std::vector<double> eav_snr;
    std::vector<double> secrecy_rate;
};

/// Simulates the uplink from first principles: satellite positions in
/// Cartesian coordinates, antenna gain from the actual off-boresight angle,
/// free-space loss and independent shadowed-Rician gains. The result is
/// bit-identical for any worker count.
TrialBatchResult simulate_secrecy(const SnrScenario& scn, const std::vector<double>& rate_grid,
                                  const MonteCarloOptions& opts);

/// Report for grid point k of a batch. c_out uses the empirical ε-quantile
/// of the secrecy rate, so the batch must have kept its samples.
SecrecyReport montecarlo_report(const TrialBatchResult& batch, std::size_t k, double epsilon);

/// Monte-Carlo counterpart of the analytical reports.
SecrecyReport montecarlo_secrecy_metrics(const SnrScenario& scn, double rate, double epsilon,
                                         const MonteCarloOptions& opts);

/// Largest eavesdropper SNR given exactly p satellites in the main-lobe cap
/// and q in the side-lobe ring of layer v, sampled n times.
std::vector<double> sample_conditioned_eav_snr(const SnrScenario& scn, int p, int q, long long n, std::uint64_t seed,
                                               std::size_t v = 0);

/// Serving SNR samples alone.
std::vector<double> sample_serving_snr(const SnrScenario& scn, long long n, std::uint64_t seed);

struct EffectiveCountResult {
    long long n_constellations = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double standard_error = 0.0;
    std::array<double, 4> case_frequencies{};
    double effective_fraction = 0.0;  // per satellite
};

/// Counts effective eavesdroppers over independent constellations of a layer.
EffectiveCountResult simulate_effective_counts(const EavesdropperLayer& layer, long long n_constellations,
                                               std::uint64_t seed, int workers = 1, int block_size = 1024);

/// One-sample Kolmogorov-Smirnov distance sup |F_n - F|. Sorts a copy.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Critical KS distance at 1% significance for n samples.
inline double ks_critical_1pct(long long n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

/// Two-sample KS distance.
double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace satsec
