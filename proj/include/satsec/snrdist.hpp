#pragma once

#include <cstddef>
#include <vector>

#include "satsec/channel.hpp"
#include "satsec/geometry.hpp"
#include "satsec/params.hpp"

namespace satsec {

enum class BeamMode { fixed, steerable };

struct LayerSpec {
    int count = 0;
    double altitude = 600.0;  // km
};

/// Everything needed to evaluate SNR laws for one uplink.
struct SnrScenario {
    SystemParams system;
    FadingParams fading;
    double serving_altitude = 600.0;                 // km
    double serving_elevation = deg_to_rad(60.0);     // rad
    std::vector<LayerSpec> layers{LayerSpec{10, 600.0}};
    BeamMode beam_mode = BeamMode::fixed;
    SeriesControl series;

    void validate() const;
    /// ω_th for fixed beams, ω_th + Δω_sb for steerable ones.
    double effective_half_angle() const;
    EavesdropperLayer layer(std::size_t v) const;
    int total_eavesdroppers() const;
};

/// Per-satellite CDFs of the SNR seen by one eavesdropper placed uniformly
/// in the main-lobe cap or side-lobe ring of a layer.
struct LobeCdfs {
    double mainlobe = 1.0;
    double sidelobe = 1.0;
};

/// Precomputed view of a scenario: fading series, link budget and layer
/// geometry. Immutable after construction, so safe to share across threads.
class SnrModel {
public:
    explicit SnrModel(const SnrScenario& scn);

    const SnrScenario& scenario() const { return scn_; }
    const ShadowedRicianSeries& series() const { return series_; }
    const LinkBudget& budget() const { return budget_; }
    double serving_distance() const { return d_s_; }
    std::size_t layer_count() const { return layers_.size(); }
    const EavesdropperLayer& layer(std::size_t v) const { return layers_.at(v); }

    /// γ_s = h · serving_scale()
    double serving_scale() const { return serving_scale_; }
    double serving_snr_cdf(double x) const;
    double serving_snr_ccdf(double x) const;
    double serving_snr_pdf(double x) const;
    /// Smallest x with P[γ_s > x] <= tail.
    double serving_snr_quantile_upper(double tail) const;

    /// Single-eavesdropper CDFs for both lobes of layer v.
    LobeCdfs single_eav_cdfs(double x, std::size_t v = 0) const;

    double eav_mainlobe_snr_cdf(double x, int p, std::size_t v = 0) const;
    double eav_sidelobe_snr_cdf(double x, int q, std::size_t v = 0) const;
    double eav_joint_snr_cdf(double x, int p, int q, std::size_t v = 0) const;

    /// ∫_lo^hi γ(1+n, w zᵅ x / (2b)) z dz in closed form, with z in meters
    /// and (lo, hi) the lobe's distance support. Exposed for verification.
    double mainlobe_integral(double x, int n, std::size_t v = 0) const;
    double sidelobe_integral(double x, int n, std::size_t v = 0) const;

private:
    // E_z[F_h(w zᵅ x)] for z with density ∝ z on (lo, hi) km
    double ring_average_cdf(double x, double lo_km, double hi_km, double w) const;
    double ring_integral(double x, int n, double lo_km, double hi_km, double w) const;

    SnrScenario scn_;
    ShadowedRicianSeries series_;
    LinkBudget budget_;
    double d_s_ = 0.0;
    double serving_scale_ = 0.0;
    std::vector<EavesdropperLayer> layers_;
};

}  // namespace satsec
