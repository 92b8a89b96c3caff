#pragma once

#include <numbers>

namespace satsec {

inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }
double db_to_linear(double db);
double linear_to_db(double lin);
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

/// Physical constants and link budget. Everything is linear and SI except
/// the Earth radius, which is in km like every other distance in the library.
struct SystemParams {
    double earth_radius_km = 6378.0;
    double path_loss_exponent = 2.0;
    double speed_of_light = 3e8;         // m/s
    double carrier_hz = 2e9;
    double bandwidth_hz = 1e6;
    double tx_power_w = dbm_to_watt(23.0);
    double noise_psd_w_per_hz = dbm_to_watt(-174.0);  // per Hz
    double gain_tx = 1.0;                // 0 dBi
    double gain_ml = 1000.0;             // 30 dBi
    double gain_sl = 10.0;               // 10 dBi
    double beam_half_angle = deg_to_rad(40.0);  // ω_th
    double steer_angle = 0.0;                   // Δω_sb

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

}  // namespace satsec
