#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "satsec/pointprocess.hpp"
#include "satsec/params.hpp"
#include "testing.hpp"

using namespace satsec;

namespace {
EavesdropperLayer layer(int n, double a, double deg) { return EavesdropperLayer::make(n, a, deg_to_rad(deg)); }
}  // namespace

TEST_CASE("region probabilities") {
    for (double a : {300.0, 600.0, 1200.0, 2100.0}) {
        const auto pr = region_probabilities(layer(1, a, 40.0));
        CHECK(pr.mainlobe + pr.sidelobe + pr.hidden == rel(1.0, 1e-15));
        CHECK(pr.visible() == rel(a / (2.0 * (kEarthRadiusKm + a)), 1e-13));
    }
    const auto wide = region_probabilities(layer(1, 600.0, 75.0));
    CHECK(wide.sidelobe == 0.0);
}

TEST_CASE("case probabilities") {
    CHECK(case_probability(10, 0, 0, layer(10, 1200.0, 40.0)) == rel(0.438292098941915932, 1e-13));
    CHECK(case_probability(0, 0, 0, layer(0, 600.0, 40.0)) == 1.0);
    CHECK_THROWS_AS(case_probability(3, 2, 2, layer(3, 600.0, 40.0)), std::domain_error);

    for (int N : {1, 10, 100, 500}) {
        const auto L = layer(N, 600.0, 30.0);
        double total = 0.0;
        for (int p = 0; p <= N; ++p)
            for (int q = 0; p + q <= N; ++q) total += case_probability(N, p, q, L);
        CHECK(total == rel(1.0, 1e-9));
    }
    // a ring that does not exist can hold nobody
    const auto wide = layer(5, 600.0, 75.0);
    CHECK(case_probability(5, 1, 1, wide) == 0.0);
    CHECK(case_probability(5, 2, 0, wide) > 0.0);
}

TEST_CASE("four cases from the multinomial") {
    for (int N : {1, 5, 20, 100}) {
        const auto L = layer(N, 1200.0, 40.0);
        const auto c = four_case_probabilities(N, L);
        CHECK(c.p1 + c.p2 + c.p3 + c.p4 == rel(1.0, 1e-12));
        double side_only = 0.0, main_only = 0.0;
        for (int q = 1; q <= N; ++q) side_only += case_probability(N, 0, q, L);
        for (int p = 1; p <= N; ++p) main_only += case_probability(N, p, 0, L);
        CHECK(c.p1 == rel(case_probability(N, 0, 0, L), 1e-12));
        CHECK(c.p2 == rel(side_only, 1e-10));
        CHECK(c.p3 == rel(main_only, 1e-10));
    }
}

TEST_CASE("shell distance law") {
    const auto L = layer(10, 600.0, 40.0);
    CHECK(distance_cdf_shell(600.0, 600.0) == 0.0);
    CHECK(distance_cdf_shell(L.d_max, 600.0) == rel(0.0429922613929492691, 1e-13));
    CHECK(distance_cdf_shell(2.0 * kEarthRadiusKm + 600.0, 600.0) == rel(1.0, 1e-14));
}

TEST_CASE("lobe-conditioned distance laws") {
    const auto L = layer(10, 1200.0, 40.0);
    CHECK(mainlobe_distance_cdf(1400.0, L) == rel(0.369118700203649576, 1e-12));
    CHECK(mainlobe_distance_cdf(L.altitude, L) == 0.0);
    CHECK(mainlobe_distance_cdf(L.d_th, L) == rel(1.0, 1e-14));
    CHECK(sidelobe_distance_cdf(L.d_th, L) == 0.0);
    CHECK(sidelobe_distance_cdf(L.d_max, L) == rel(1.0, 1e-14));

    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    CHECK(GK::integrate([&](double x) { return mainlobe_distance_pdf(x, L); }, L.altitude, L.d_th) ==
          rel(1.0, 1e-12));
    CHECK(GK::integrate([&](double x) { return sidelobe_distance_pdf(x, L); }, L.d_th, L.d_max) == rel(1.0, 1e-12));

    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = L.altitude + (L.d_max - L.altitude) * i / 200.0;
        const double f = mainlobe_distance_cdf(x, L);
        CHECK(f >= prev);
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
        prev = f;
    }
    const auto wide = layer(10, 600.0, 75.0);
    CHECK(sidelobe_distance_cdf(wide.d_max - 1.0, wide) == 0.0);
    CHECK(sidelobe_distance_cdf(wide.d_max, wide) == 1.0);
    CHECK(sidelobe_distance_pdf(wide.d_max - 1.0, wide) == 0.0);
}
