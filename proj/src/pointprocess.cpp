#include "satsec/pointprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "satsec/specfun.hpp"

namespace satsec {

namespace {

// k * log(p) with the 0 * log 0 = 0 convention
double xlogy(int k, double p) {
    if (k == 0) return 0.0;
    return k * std::log(p);
}

double ring_cdf(double x, double lo, double hi) {
    if (hi <= lo) return x >= hi ? 1.0 : 0.0;
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    return (x - lo) * (x + lo) / ((hi - lo) * (hi + lo));
}

double ring_pdf(double x, double lo, double hi) {
    if (hi <= lo || x <= lo || x > hi) return 0.0;
    return 2.0 * x / ((hi - lo) * (hi + lo));
}

}  // namespace

RegionProbabilities region_probabilities(const EavesdropperLayer& layer) {
    const double r = layer.earth_radius;
    const double a = layer.altitude;
    const double visible = a / (2.0 * (r + a));
    const double h = std::sin(0.5 * layer.psi_th);
    RegionProbabilities pr;
    pr.mainlobe = std::min(h * h, visible);
    pr.sidelobe = layer.sidelobe_empty() ? 0.0 : visible - pr.mainlobe;
    if (layer.sidelobe_empty()) pr.mainlobe = visible;
    pr.hidden = 1.0 - visible;
    return pr;
}

double case_probability(int N, int p, int q, const RegionProbabilities& pr) {
    if (N < 0 || p < 0 || q < 0) throw std::domain_error("case_probability: counts must be nonnegative");
    if (p + q > N) throw std::domain_error("case_probability: p + q exceeds N");
    const int rest = N - p - q;
    if ((p > 0 && pr.mainlobe <= 0.0) || (q > 0 && pr.sidelobe <= 0.0) || (rest > 0 && pr.hidden <= 0.0))
        return 0.0;
    using specfun::log_gamma;
    const double log_coeff = log_gamma(N + 1.0) - log_gamma(p + 1.0) - log_gamma(q + 1.0) - log_gamma(rest + 1.0);
    return std::exp(log_coeff + xlogy(p, pr.mainlobe) + xlogy(q, pr.sidelobe) + xlogy(rest, pr.hidden));
}

double case_probability(int N, int p, int q, const EavesdropperLayer& layer) {
    return case_probability(N, p, q, region_probabilities(layer));
}

CaseProbabilities four_case_probabilities(int N, const EavesdropperLayer& layer) {
    if (N < 0) throw std::domain_error("four_case_probabilities: N must be nonnegative");
    const auto pr = region_probabilities(layer);
    CaseProbabilities c;
    c.p1 = std::pow(pr.hidden, N);
    c.p2 = std::pow(pr.hidden + pr.sidelobe, N) - c.p1;
    c.p3 = std::pow(pr.hidden + pr.mainlobe, N) - c.p1;
    c.p4 = std::max(0.0, 1.0 - c.p1 - c.p2 - c.p3);
    return c;
}

double distance_cdf_shell(double x, double a_e, double r) {
    if (x <= a_e) return 0.0;
    if (x >= 2.0 * r + a_e) return 1.0;
    return (x - a_e) * (x + a_e) / (4.0 * r * (r + a_e));
}

double mainlobe_distance_cdf(double x, const EavesdropperLayer& layer) {
    return ring_cdf(x, layer.altitude, layer.d_th);
}

double mainlobe_distance_pdf(double x, const EavesdropperLayer& layer) {
    return ring_pdf(x, layer.altitude, layer.d_th);
}

double sidelobe_distance_cdf(double x, const EavesdropperLayer& layer) {
    if (layer.sidelobe_empty()) return x >= layer.d_max ? 1.0 : 0.0;
    return ring_cdf(x, layer.d_th, layer.d_max);
}

double sidelobe_distance_pdf(double x, const EavesdropperLayer& layer) {
    if (layer.sidelobe_empty()) return 0.0;
    return ring_pdf(x, layer.d_th, layer.d_max);
}

}  // namespace satsec
