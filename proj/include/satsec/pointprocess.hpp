#pragma once

#include "satsec/geometry.hpp"

namespace satsec {

/// Probability that a single uniformly placed satellite lands in each region
/// of its shell: main-lobe cap, side-lobe ring, or below the horizon.
struct RegionProbabilities {
    double mainlobe = 0.0;
    double sidelobe = 0.0;
    double hidden = 1.0;

    double visible() const { return mainlobe + sidelobe; }
};

RegionProbabilities region_probabilities(const EavesdropperLayer& layer);

/// Probability that exactly p of N satellites are in the main-lobe cap and
/// q in the side-lobe ring. Evaluated in log space; valid for N up to ~1e5.
double case_probability(int N, int p, int q, const EavesdropperLayer& layer);

/// Same as case_probability with the region probabilities already known.
double case_probability(int N, int p, int q, const RegionProbabilities& pr);

/// Case 1: no visible satellite. Case 2: main lobe empty, side lobe not.
/// Case 3: side lobe empty, main lobe not. Case 4: both occupied.
struct CaseProbabilities {
    double p1 = 1.0;
    double p2 = 0.0;
    double p3 = 0.0;
    double p4 = 0.0;
};

CaseProbabilities four_case_probabilities(int N, const EavesdropperLayer& layer);

/// CDF of the distance from the terminal to a uniform point on the whole shell.
double distance_cdf_shell(double x, double a_e, double r = kEarthRadiusKm);

/// Distance distributions conditioned on the satellite being in the
/// main-lobe cap, support (a_e, d_th].
double mainlobe_distance_cdf(double x, const EavesdropperLayer& layer);
double mainlobe_distance_pdf(double x, const EavesdropperLayer& layer);

/// Conditioned on the side-lobe ring, support (d_th, d_max]. When the ring
/// is empty the CDF is a unit step at d_max and the PDF is identically 0.
double sidelobe_distance_cdf(double x, const EavesdropperLayer& layer);
double sidelobe_distance_pdf(double x, const EavesdropperLayer& layer);

}  // namespace satsec
