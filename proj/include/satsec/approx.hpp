#pragma once

#include <vector>

#include "satsec/secrecy.hpp"

namespace satsec {

/// Poisson-limit CDF of the strongest main-lobe eavesdropper of layer v:
/// exp(-N π_ml (1 - A(x))) with A the single-satellite main-lobe CDF.
double ppp_eav_mainlobe_cdf(const SnrModel& model, double x, std::size_t v = 0);
double ppp_eav_sidelobe_cdf(const SnrModel& model, double x, std::size_t v = 0);

/// Product of both lobes over every layer.
double ppp_eav_cdf(const SnrModel& model, double x);

/// Single-integral metrics under the Poisson approximation. Handles any
/// number of layers; with one layer this is the single-altitude result.
SecrecyReport approx_secrecy_metrics(const SnrModel& model, double rate, double epsilon,
                                     const SecrecyControl& ctrl = {});

/// Same evaluator, named for the several-altitude use.
SecrecyReport multi_altitude_metrics(const SnrModel& model, double rate, double epsilon,
                                     const SecrecyControl& ctrl = {});

double approx_ergodic_capacity(const SnrModel& model, const SecrecyControl& ctrl = {},
                               SecrecyDiagnostics* diag = nullptr);
double approx_outage_probability(const SnrModel& model, double rate, const SecrecyControl& ctrl = {},
                                 SecrecyDiagnostics* diag = nullptr);

/// Legitimate-link capacity with no eavesdroppers, from the finite-sum
/// closed form obtained by truncating the fading law at ⌊m⌋ terms. Adds a
/// warning to diag when m is not an integer.
double capacity_no_eavesdroppers(const SnrModel& model, SecrecyDiagnostics* diag = nullptr);

/// F_{γs}(2^R - 1).
double outage_no_eavesdroppers(const SnrModel& model, double rate);

/// Limit as the eavesdropper count grows without bound.
SecrecyReport degenerate_many_eavesdroppers();

struct HighSnrCharacterization {
    double c_erg_inf = 0.0;   // bits/s/Hz at the scenario's transmit power
    double slope = 1.0;       // S∞
    double offset = 0.0;      // L∞, in log2(W)
    double lambda_main = 0.0; // mean nearest distance given it lies in the main-lobe range, km
    double lambda_side = 0.0; // same for the side-lobe range, km
    double prob_main = 0.0;   // nearest visible satellite is in the main-lobe range
    double prob_side = 0.0;
    double prob_none = 1.0;   // no visible satellite; equals the slope
    bool ill_conditioned = false;
    std::vector<std::string> warnings;
};

/// High-SNR upper bound built from the nearest visible eavesdropper.
/// Single layer only.
HighSnrCharacterization high_snr_characterization(const SnrModel& model);

/// Mean of the nearest-satellite distance among N uniform satellites on a
/// shell at altitude a_e, conditioned on it lying in (lo, hi]. Uses the
/// binomial-sum closed form for N <= 60 and adaptive quadrature above.
struct ConditionalMean {
    double value = 0.0;
    bool ill_conditioned = false;  // more than 6 digits lost to cancellation
};
ConditionalMean nearest_distance_conditional_mean(int N, double a_e, double lo, double hi,
                                                  double r = kEarthRadiusKm);
ConditionalMean nearest_distance_conditional_mean_series(int N, double a_e, double lo, double hi,
                                                         double r = kEarthRadiusKm);
ConditionalMean nearest_distance_conditional_mean_quadrature(int N, double a_e, double lo, double hi,
                                                             double r = kEarthRadiusKm);

}  // namespace satsec
