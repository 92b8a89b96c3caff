#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>
#include <numbers>

#include "satsec/geometry.hpp"
#include "satsec/params.hpp"
#include "testing.hpp"

using namespace satsec;

TEST_CASE("unit conversions") {
    CHECK(dbm_to_watt(30.0) == rel(1.0, 1e-15));
    CHECK(watt_to_dbm(dbm_to_watt(-174.0)) == rel(-174.0, 1e-14));
    CHECK(db_to_linear(30.0) == rel(1000.0, 1e-14));
    CHECK(linear_to_db(10.0) == rel(10.0, 1e-15));
    CHECK(rad_to_deg(deg_to_rad(37.5)) == rel(37.5, 1e-15));
}

TEST_CASE("visible cap and beam threshold angles") {
    CHECK(max_polar_angle(600.0) == rel(0.417721929671100921, 1e-14));
    CHECK(max_polar_angle(1200.0) == rel(0.570470708472564, 1e-13));
    CHECK(beam_threshold_polar_angle(1200.0, deg_to_rad(40.0)) == rel(0.170933798113694993, 1e-13));
    CHECK(beam_threshold_polar_angle(1200.0, deg_to_rad(55.0)) == rel(0.379145278375919, 1e-12));
    // a beam wider than the Earth's apparent half-angle covers the whole cap
    CHECK(beam_threshold_polar_angle(600.0, deg_to_rad(80.0)) == max_polar_angle(600.0));
    CHECK(beam_threshold_polar_angle(600.0, 0.0) == 0.0);
}

TEST_CASE("distances") {
    CHECK(serving_distance(600.0, 1e-12) == rel(2830.83026690050776, 1e-9));
    CHECK_THROWS_AS(serving_distance(600.0, 0.0), std::domain_error);
    CHECK(serving_distance(600.0, deg_to_rad(60.0)) == rel(683.160821421199232, 1e-13));
    CHECK(serving_distance(600.0, deg_to_rad(90.0)) == rel(600.0, 1e-14));
    const auto L = EavesdropperLayer::make(10, 1200.0, deg_to_rad(40.0));
    CHECK(L.d_th == rel(1687.82727814341010, 1e-13));
    CHECK(chord_distance(1200.0, 0.0) == rel(1200.0, 1e-14));
    CHECK(chord_distance(600.0, max_polar_angle(600.0)) == rel(horizon_distance(600.0), 1e-13));
    // the horizon point is where the terminal-to-satellite line is tangent
    const double r = kEarthRadiusKm, a = 600.0;
    CHECK(horizon_distance(a) == rel(std::sqrt((r + a) * (r + a) - r * r), 1e-14));
}

TEST_CASE("steering angle that floods the visible cap") {
    CHECK(rad_to_deg(min_full_steer_angle(600.0, deg_to_rad(40.0))) == rel(26.0662964197853218, 1e-12));
    CHECK(rad_to_deg(min_full_steer_angle(1200.0, deg_to_rad(40.0))) == rel(17.3144360686841137, 1e-12));
    CHECK(min_full_steer_angle(600.0, deg_to_rad(80.0)) == 0.0);
}

TEST_CASE("cap surface areas") {
    const auto a40 = cap_surface_areas(1200.0, beam_threshold_polar_angle(1200.0, deg_to_rad(40.0)));
    CHECK(a40.mainlobe == rel(5258444.015, 1e-9));
    CHECK(a40.sidelobe == rel(51878329.894, 1e-9));
    CHECK(a40.total == rel(57136773.909, 1e-9));
    CHECK(a40.mainlobe + a40.sidelobe == rel(a40.total, 1e-14));
    const auto a55 = cap_surface_areas(1200.0, beam_threshold_polar_angle(1200.0, deg_to_rad(55.0)));
    CHECK(a55.mainlobe == rel(25624866.096, 1e-9));
    CHECK(a55.sidelobe == rel(31511907.814, 1e-9));

    // against direct integration of the spherical area element
    const double R = kEarthRadiusKm + 1200.0;
    const double psi = 0.3;
    const double direct = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        [&](double t) { return 2.0 * std::numbers::pi * R * R * std::sin(t); }, 0.0, psi);
    CHECK(cap_surface_areas(1200.0, psi).mainlobe == rel(direct, 1e-12));
}

TEST_CASE("layer construction") {
    const auto L = EavesdropperLayer::make(7, 600.0, deg_to_rad(40.0));
    CHECK(L.count == 7);
    CHECK(L.psi_th < L.psi_max);
    CHECK(L.d_th < L.d_max);
    CHECK_FALSE(L.sidelobe_empty());
    CHECK_FALSE(L.mainlobe_empty());
    const auto wide = EavesdropperLayer::make(7, 600.0, deg_to_rad(70.0));
    CHECK(wide.sidelobe_empty());
    CHECK(wide.d_th == wide.d_max);
    const auto s = ServingGeometry::make(600.0, deg_to_rad(60.0));
    CHECK(s.distance == rel(683.160821421199232, 1e-13));
}
