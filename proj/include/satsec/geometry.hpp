#pragma once

namespace satsec {

inline constexpr double kEarthRadiusKm = 6378.0;

// All distances in km, all angles in radians.

double max_polar_angle(double a_e, double r = kEarthRadiusKm);

/// Polar angle at which the boundary between main-lobe and side-lobe
/// coverage of the terminal lies. Returns max_polar_angle(a_e) once the
/// beam is wide enough that every visible satellite covers the terminal
/// with its main lobe.
double beam_threshold_polar_angle(double a_e, double beam_half_angle, double r = kEarthRadiusKm);

double serving_distance(double a_s, double elevation, double r = kEarthRadiusKm);

/// Terminal-to-satellite distance for a satellite at polar angle psi.
double chord_distance(double a_e, double psi, double r = kEarthRadiusKm);

/// Distance to a satellite on the terminal's horizon plane.
double horizon_distance(double a_e, double r = kEarthRadiusKm);

/// Smallest boresight steering angle that brings every visible satellite's
/// main lobe onto the terminal; 0 if the beam already does so unsteered.
double min_full_steer_angle(double a_e, double beam_half_angle, double r = kEarthRadiusKm);

struct CapAreas {
    double mainlobe;   // km²
    double sidelobe;   // km²
    double total;      // km², visible cap
};

CapAreas cap_surface_areas(double a_e, double psi_th, double r = kEarthRadiusKm);

/// One shell of eavesdropping satellites with its derived beam geometry.
struct EavesdropperLayer {
    int count = 0;
    double altitude = 0.0;
    double earth_radius = kEarthRadiusKm;
    double beam_half_angle = 0.0;  // effective half-angle, already steered and clamped
    double psi_max = 0.0;
    double psi_th = 0.0;
    double d_th = 0.0;
    double d_max = 0.0;

    /// effective_half_angle is ω_th for fixed beams and ω_th + Δω_sb for
    /// steerable ones; values past the full-coverage angle are clamped.
    static EavesdropperLayer make(int count, double altitude, double effective_half_angle,
                                  double r = kEarthRadiusKm);

    /// True when the main-lobe cap covers the whole visible cap.
    bool sidelobe_empty() const { return psi_th >= psi_max; }
    bool mainlobe_empty() const { return psi_th <= 0.0; }
};

struct ServingGeometry {
    double altitude = 0.0;
    double elevation = 0.0;
    double distance = 0.0;

    static ServingGeometry make(double altitude, double elevation, double r = kEarthRadiusKm);
};

}  // namespace satsec
