#include "satsec/snrdist.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

#include "satsec/specfun.hpp"

namespace satsec {

namespace {
// Below this relative ring width (1 - lo²/hi²) the closed form cancels
// badly; a fixed Gauss rule on the uniform variable z² is used instead.
constexpr double kThinRing = 1e-4;
}  // namespace

void SnrScenario::validate() const {
    system.validate();
    fading.validate();
    series.validate();
    if (!(serving_altitude > 0.0)) throw std::invalid_argument("serving altitude must be positive");
    if (!(serving_elevation > 0.0 && serving_elevation <= std::numbers::pi / 2 + 1e-12))
        throw std::invalid_argument("serving elevation must lie in (0, 90] degrees");
    if (layers.empty()) throw std::invalid_argument("at least one eavesdropper layer is required");
    for (const auto& l : layers) {
        if (l.count < 0) throw std::invalid_argument("eavesdropper count must be nonnegative");
        if (!(l.altitude > 0.0)) throw std::invalid_argument("eavesdropper altitude must be positive");
    }
}

double SnrScenario::effective_half_angle() const {
    return beam_mode == BeamMode::steerable ? system.beam_half_angle + system.steer_angle : system.beam_half_angle;
}

EavesdropperLayer SnrScenario::layer(std::size_t v) const {
    const auto& l = layers.at(v);
    return EavesdropperLayer::make(l.count, l.altitude, effective_half_angle(), system.earth_radius_km);
}

int SnrScenario::total_eavesdroppers() const {
    int n = 0;
    for (const auto& l : layers) n += l.count;
    return n;
}

SnrModel::SnrModel(const SnrScenario& scn)
    : scn_(scn), series_((scn.validate(), scn.fading), scn.series), budget_(LinkBudget::from(scn.system)) {
    d_s_ = satsec::serving_distance(scn_.serving_altitude, scn_.serving_elevation, scn_.system.earth_radius_km);
    serving_scale_ = snr_scale(d_s_, budget_.w1, scn_.system.path_loss_exponent);
    for (std::size_t v = 0; v < scn_.layers.size(); ++v) layers_.push_back(scn_.layer(v));
}

double SnrModel::serving_snr_cdf(double x) const {
    if (x <= 0.0) return 0.0;
    return series_.cdf(x / serving_scale_);
}

double SnrModel::serving_snr_ccdf(double x) const {
    if (x <= 0.0) return 1.0;
    return series_.ccdf(x / serving_scale_);
}

double SnrModel::serving_snr_pdf(double x) const {
    if (x < 0.0) return 0.0;
    return series_.pdf(x / serving_scale_) / serving_scale_;
}

double SnrModel::serving_snr_quantile_upper(double tail) const {
    return series_.quantile_upper(tail) * serving_scale_;
}

double SnrModel::ring_average_cdf(double x, double lo_km, double hi_km, double w) const {
    if (!(hi_km > lo_km)) return 1.0;
    if (x <= 0.0) return 0.0;
    const double alpha = scn_.system.path_loss_exponent;
    const double lo = 1000.0 * lo_km;
    const double hi = 1000.0 * hi_km;
    const double rho = (lo / hi) * (lo / hi);

    if (1.0 - rho < kThinRing) {
        using G = boost::math::quadrature::gauss<double, 10>;
        const double u0 = lo * lo;
        const double u1 = hi * hi;
        return G::integrate(
                   [&](double u) { return series_.cdf(w * std::pow(u, 0.5 * alpha) * x); }, u0, u1) /
               (u1 - u0);
    }

    const double e = 2.0 / alpha;
    const double c = 2.0 * scn_.fading.b / (w * x);  // m^α
    const double lam_hi = std::pow(hi, alpha) / c;
    const double lam_lo = std::pow(lo, alpha) / c;
    const double kappa = std::pow(lam_hi, -e);        // c^{2/α} / hi²

    const std::size_t L = series_.terms();
    std::vector<double> p_hi(L), p_lo(L), pe_hi(L), pe_lo(L);
    specfun::regularized_gamma_p_ladder(1.0, lam_hi, p_hi);
    specfun::regularized_gamma_p_ladder(1.0, lam_lo, p_lo);
    specfun::regularized_gamma_p_ladder(1.0 + e, lam_hi, pe_hi);
    specfun::regularized_gamma_p_ladder(1.0 + e, lam_lo, pe_lo);

    const auto wts = series_.weights();
    double sum = 0.0;
    for (std::size_t n = L; n-- > 0;) {
        const double dn = static_cast<double>(n);
        const double g = std::exp(specfun::log_gamma(dn + 1.0 + e) - specfun::log_gamma(dn + 1.0));
        const double j = p_hi[n] - rho * p_lo[n] - kappa * g * (pe_hi[n] - pe_lo[n]);
        sum += wts[n] * j;
    }
    return std::clamp(sum / (1.0 - rho), 0.0, 1.0);
}

double SnrModel::ring_integral(double x, int n, double lo_km, double hi_km, double w) const {
    if (n < 0) throw std::domain_error("series index must be nonnegative");
    if (!(x > 0.0)) throw std::domain_error("SNR threshold must be positive");
    const double alpha = scn_.system.path_loss_exponent;
    const double lo = 1000.0 * lo_km;
    const double hi = 1000.0 * hi_km;
    const double e = 2.0 / alpha;
    const double c = 2.0 * scn_.fading.b / (w * x);
    const double lam_hi = std::pow(hi, alpha) / c;
    const double lam_lo = std::pow(lo, alpha) / c;
    using specfun::lower_incomplete_gamma;
    return 0.5 * hi * hi * lower_incomplete_gamma(1.0 + n, lam_hi) -
           0.5 * lo * lo * lower_incomplete_gamma(1.0 + n, lam_lo) -
           0.5 * std::pow(c, e) *
               (lower_incomplete_gamma(1.0 + n + e, lam_hi) - lower_incomplete_gamma(1.0 + n + e, lam_lo));
}

LobeCdfs SnrModel::single_eav_cdfs(double x, std::size_t v) const {
    const auto& L = layers_.at(v);
    return {ring_average_cdf(x, L.altitude, L.d_th, budget_.w1),
            L.sidelobe_empty() ? 1.0 : ring_average_cdf(x, L.d_th, L.d_max, budget_.w2)};
}

double SnrModel::eav_mainlobe_snr_cdf(double x, int p, std::size_t v) const {
    if (p < 0) throw std::domain_error("main-lobe count must be nonnegative");
    if (p == 0) return 1.0;
    if (x <= 0.0) return 0.0;
    const auto& L = layers_.at(v);
    return std::pow(ring_average_cdf(x, L.altitude, L.d_th, budget_.w1), p);
}

double SnrModel::eav_sidelobe_snr_cdf(double x, int q, std::size_t v) const {
    if (q < 0) throw std::domain_error("side-lobe count must be nonnegative");
    if (q == 0) return 1.0;
    if (x <= 0.0) return 0.0;
    const auto& L = layers_.at(v);
    if (L.sidelobe_empty()) return 1.0;
    return std::pow(ring_average_cdf(x, L.d_th, L.d_max, budget_.w2), q);
}

double SnrModel::eav_joint_snr_cdf(double x, int p, int q, std::size_t v) const {
    return eav_mainlobe_snr_cdf(x, p, v) * eav_sidelobe_snr_cdf(x, q, v);
}

double SnrModel::mainlobe_integral(double x, int n, std::size_t v) const {
    const auto& L = layers_.at(v);
    return ring_integral(x, n, L.altitude, L.d_th, budget_.w1);
}

double SnrModel::sidelobe_integral(double x, int n, std::size_t v) const {
    const auto& L = layers_.at(v);
    return ring_integral(x, n, L.d_th, L.d_max, budget_.w2);
}

}  // namespace satsec
