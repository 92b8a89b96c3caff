#pragma once

#include <random>
#include <span>
#include <vector>

#include "satsec/params.hpp"
#include "satsec/specfun.hpp"

namespace satsec {

using specfun::SeriesControl;
using specfun::SeriesValue;

/// Shadowed-Rician fading: b is half the scattered power, m the Nakagami
/// shadowing parameter, omega the average line-of-sight power.
struct FadingParams {
    double b = 0.126;
    double m = 10.1;
    double omega = 0.835;

    /// Leading constant (2bm/(2bm+Ω))^m / (2b).
    double K() const;
    /// Series ratio (Ω/(2bm+Ω)) / (2b).
    double delta() const;
    /// 2bδ, the negative-binomial success ratio of the mixture form.
    double z() const;
    double mean_power() const { return 2.0 * b + omega; }

    void validate() const;
};

/// The channel gain law written as a negative-binomial mixture of Gamma
/// laws: h ~ Σ_n w_n Gamma(shape n+1, scale 2b) with
/// w_n = (1-z)^m (m)_n z^n / n!. Expanding the original series term by term
/// gives K (m)_n δ^n (2b)^{n+1} / (n!)^2 = w_n / n!, so both forms agree.
class ShadowedRicianSeries {
public:
    explicit ShadowedRicianSeries(const FadingParams& fading, const SeriesControl& ctrl = {});

    const FadingParams& fading() const { return fading_; }
    std::span<const double> weights() const { return weights_; }
    std::size_t terms() const { return weights_.size(); }
    /// The weight table hit n_max before its tail dropped below tolerance.
    bool truncated() const { return truncated_; }
    double scale() const { return 2.0 * fading_.b; }

    double cdf(double x) const;
    /// 1 - cdf(x), accurate in the far tail.
    double ccdf(double x) const;
    double pdf(double x) const;
    /// Smallest x with ccdf(x) <= tail.
    double quantile_upper(double tail) const;

private:
    FadingParams fading_;
    std::vector<double> weights_;
    bool truncated_ = false;
};

/// Shadowed-Rician CDF of the channel power gain.
SeriesValue sr_cdf(double x, const FadingParams& fading, const SeriesControl& ctrl = {});

/// One channel power gain drawn by composition: shadowed LOS amplitude
/// plus circular complex Gaussian scattering.
double sr_sample(const FadingParams& fading, std::mt19937_64& rng);

/// Sectorized pattern: main-lobe gain inside the half-angle (inclusive).
double antenna_gain(double offset_angle, double beam_half_angle, double gain_ml, double gain_sl);

/// SNR normalizations w₁ (main lobe) and w₂ (side lobe), units 1/m^α.
struct LinkBudget {
    double w1 = 0.0;
    double w2 = 0.0;

    static LinkBudget from(const SystemParams& sys);
};

/// 1 / (w · d^α) with d given in km and evaluated in meters.
double snr_scale(double d_km, double w, double alpha);

}  // namespace satsec
