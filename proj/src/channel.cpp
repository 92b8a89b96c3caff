#include "satsec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satsec {

using specfun::log_gamma;

double FadingParams::K() const {
    return std::pow(2.0 * b * m / (2.0 * b * m + omega), m) / (2.0 * b);
}

double FadingParams::delta() const { return omega / (2.0 * b * m + omega) / (2.0 * b); }

double FadingParams::z() const { return omega / (2.0 * b * m + omega); }

void FadingParams::validate() const {
    if (!(b > 0.0) || !(m > 0.0) || !(omega > 0.0) || !std::isfinite(b) || !std::isfinite(m) || !std::isfinite(omega))
        throw std::invalid_argument("fading parameters b, m, omega must be positive and finite");
}

ShadowedRicianSeries::ShadowedRicianSeries(const FadingParams& fading, const SeriesControl& ctrl) : fading_(fading) {
    fading_.validate();
    ctrl.validate();
    const double z = fading_.z();
    const double m = fading_.m;
    const double nb_mean = m * z / (1.0 - z);
    const double log_head = m * std::log1p(-z) - log_gamma(m);
    const double log_z = std::log(z);
    double sum = 0.0;
    for (int n = 0;; ++n) {
        if (n >= ctrl.n_max) {
            truncated_ = true;
            break;
        }
        const double w = std::exp(log_head + log_gamma(m + n) - log_gamma(n + 1.0) + n * log_z);
        weights_.push_back(w);
        sum += w;
        if (n > nb_mean) {
            // later weights shrink at least geometrically with this ratio
            const double ratio = z * (m + n) / (n + 1.0);
            if (ratio < 1.0 && w * ratio / (1.0 - ratio) < ctrl.rel_tol * sum) break;
        }
    }
    // Spread the discarded tail over the kept terms so the law stays proper.
    for (double& w : weights_) w /= sum;
}

double ShadowedRicianSeries::cdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("shadowed-Rician cdf: x must be nonnegative");
    if (x == 0.0) return 0.0;
    std::vector<double> p(weights_.size());
    specfun::regularized_gamma_p_ladder(1.0, x / scale(), p);
    double s = 0.0;
    for (std::size_t n = weights_.size(); n-- > 0;) s += weights_[n] * p[n];
    return std::min(s, 1.0);
}

double ShadowedRicianSeries::ccdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("shadowed-Rician ccdf: x must be nonnegative");
    std::vector<double> q(weights_.size());
    specfun::regularized_gamma_q_ladder(1.0, x / scale(), q);
    double s = 0.0;
    for (std::size_t n = weights_.size(); n-- > 0;) s += weights_[n] * q[n];
    return std::min(s, 1.0);
}

double ShadowedRicianSeries::pdf(double x) const {
    if (!(x >= 0.0)) throw std::domain_error("shadowed-Rician pdf: x must be nonnegative");
    const double y = x / scale();
    if (y == 0.0) return weights_[0] / scale();
    const double ly = std::log(y);
    double s = 0.0;
    for (std::size_t n = weights_.size(); n-- > 0;)
        s += weights_[n] * std::exp(static_cast<double>(n) * ly - y - log_gamma(n + 1.0));
    return s / scale();
}

double ShadowedRicianSeries::quantile_upper(double tail) const {
    if (!(tail > 0.0 && tail < 1.0)) throw std::domain_error("quantile_upper: tail must lie in (0, 1)");
    double hi = scale();
    while (ccdf(hi) > tail) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ccdf(mid) > tail ? lo : hi) = mid;
    }
    return hi;
}

SeriesValue sr_cdf(double x, const FadingParams& fading, const SeriesControl& ctrl) {
    ShadowedRicianSeries s(fading, ctrl);
    return {s.cdf(x), static_cast<int>(s.terms()), s.truncated()};
}

double sr_sample(const FadingParams& fading, std::mt19937_64& rng) {
    // The LOS phase is uniform and independent of the circularly symmetric
    // scattering, so it can be fixed at zero without changing |.|².
    std::gamma_distribution<double> los_power(fading.m, fading.omega / fading.m);
    std::normal_distribution<double> axis(0.0, std::sqrt(fading.b));
    const double amp = std::sqrt(los_power(rng));
    const double re = axis(rng) + amp;
    const double im = axis(rng);
    return re * re + im * im;
}

double antenna_gain(double offset_angle, double beam_half_angle, double gain_ml, double gain_sl) {
    return std::fabs(offset_angle) <= beam_half_angle ? gain_ml : gain_sl;
}

LinkBudget LinkBudget::from(const SystemParams& sys) {
    sys.validate();
    const double pi2 = std::numbers::pi * std::numbers::pi;
    LinkBudget lb;
    lb.w1 = 16.0 * pi2 * sys.carrier_hz * sys.carrier_hz * sys.noise_psd_w_per_hz * sys.bandwidth_hz /
            (sys.speed_of_light * sys.speed_of_light * sys.tx_power_w * sys.gain_tx * sys.gain_ml);
    lb.w2 = lb.w1 * sys.gain_ml / sys.gain_sl;
    return lb;
}

double snr_scale(double d_km, double w, double alpha) {
    if (!(d_km > 0.0)) throw std::domain_error("snr_scale: distance must be positive");
    return 1.0 / (w * std::pow(1000.0 * d_km, alpha));
}

}  // namespace satsec
