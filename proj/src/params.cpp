#include "satsec/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace satsec {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

namespace {
void positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(name) + " must be positive and finite, got " + std::to_string(v));
}
}  // namespace

void SystemParams::validate() const {
    positive(earth_radius_km, "earth_radius_km");
    positive(path_loss_exponent, "path_loss_exponent");
    positive(speed_of_light, "speed_of_light");
    positive(carrier_hz, "carrier_hz");
    positive(bandwidth_hz, "bandwidth_hz");
    positive(tx_power_w, "tx_power_w");
    positive(noise_psd_w_per_hz, "noise_psd_w_per_hz");
    positive(gain_tx, "gain_tx");
    positive(gain_ml, "gain_ml");
    positive(gain_sl, "gain_sl");
    if (!(beam_half_angle >= 0.0 && beam_half_angle < std::numbers::pi / 2))
        throw std::invalid_argument("beam half-angle must lie in [0, 90) degrees");
    if (!(steer_angle >= 0.0 && steer_angle < std::numbers::pi / 2))
        throw std::invalid_argument("steering angle must lie in [0, 90) degrees");
}

}  // namespace satsec
