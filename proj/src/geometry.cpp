#include "satsec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace satsec {

namespace {

void check_shell(double a, double r) {
    if (!(a > 0.0) || !std::isfinite(a))
        throw std::domain_error("altitude must be positive, got " + std::to_string(a));
    if (!(r > 0.0)) throw std::domain_error("earth radius must be positive");
}

double full_coverage_angle(double a_e, double r) { return std::asin(r / (r + a_e)); }

}  // namespace

double max_polar_angle(double a_e, double r) {
    check_shell(a_e, r);
    return std::acos(r / (r + a_e));
}

double beam_threshold_polar_angle(double a_e, double beam_half_angle, double r) {
    check_shell(a_e, r);
    if (!(beam_half_angle >= 0.0 && beam_half_angle < std::numbers::pi / 2))
        throw std::domain_error("beam half-angle must lie in [0, pi/2)");
    const double psi_max = max_polar_angle(a_e, r);
    const double s = (r + a_e) / r * std::sin(beam_half_angle);
    if (s >= 1.0) return psi_max;
    return std::clamp(std::asin(s) - beam_half_angle, 0.0, psi_max);
}

double serving_distance(double a_s, double elevation, double r) {
    check_shell(a_s, r);
    if (!(elevation > 0.0 && elevation <= std::numbers::pi / 2 + 1e-15))
        throw std::domain_error("serving elevation must lie in (0, pi/2]");
    const double s = std::sin(elevation);
    // (r+a)² = d² + r² + 2 r d sin θ solved for d; written to avoid cancellation near zenith
    const double q = a_s * (2.0 * r + a_s);
    return q / (std::sqrt(r * r * s * s + q) + r * s);
}

double chord_distance(double a_e, double psi, double r) {
    // r² + (r+a)² - 2r(r+a)cos ψ = a² + 4r(r+a) sin²(ψ/2)
    const double h = std::sin(0.5 * psi);
    return std::sqrt(a_e * a_e + 4.0 * r * (r + a_e) * h * h);
}

double horizon_distance(double a_e, double r) {
    check_shell(a_e, r);
    return std::sqrt(a_e * (2.0 * r + a_e));
}

double min_full_steer_angle(double a_e, double beam_half_angle, double r) {
    check_shell(a_e, r);
    return std::max(0.0, full_coverage_angle(a_e, r) - beam_half_angle);
}

CapAreas cap_surface_areas(double a_e, double psi_th, double r) {
    check_shell(a_e, r);
    const double R = r + a_e;
    const double h = std::sin(0.5 * psi_th);
    CapAreas out{};
    out.total = 2.0 * std::numbers::pi * R * a_e;
    out.mainlobe = 4.0 * std::numbers::pi * R * R * h * h;
    out.sidelobe = std::max(0.0, out.total - out.mainlobe);
    return out;
}

EavesdropperLayer EavesdropperLayer::make(int count, double altitude, double effective_half_angle, double r) {
    if (count < 0) throw std::invalid_argument("eavesdropper count must be nonnegative");
    check_shell(altitude, r);
    if (!(effective_half_angle >= 0.0 && std::isfinite(effective_half_angle)))
        throw std::invalid_argument("beam half-angle must be nonnegative");
    EavesdropperLayer L;
    L.count = count;
    L.altitude = altitude;
    L.earth_radius = r;
    const double full = full_coverage_angle(altitude, r);
    L.beam_half_angle = std::min(effective_half_angle, full);
    L.psi_max = max_polar_angle(altitude, r);
    L.psi_th = effective_half_angle >= full ? L.psi_max
                                            : beam_threshold_polar_angle(altitude, L.beam_half_angle, r);
    L.d_max = horizon_distance(altitude, r);
    L.d_th = L.psi_th >= L.psi_max ? L.d_max : std::min(chord_distance(altitude, L.psi_th, r), L.d_max);
    return L;
}

ServingGeometry ServingGeometry::make(double altitude, double elevation, double r) {
    return {altitude, elevation, serving_distance(altitude, elevation, r)};
}

}  // namespace satsec
