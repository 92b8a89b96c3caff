#include "satsec/approx.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "satsec/pointprocess.hpp"
#include "satsec/specfun.hpp"

namespace satsec {

double ppp_eav_mainlobe_cdf(const SnrModel& model, double x, std::size_t v) {
    const auto& layer = model.layer(v);
    if (layer.count == 0) return 1.0;
    const auto pr = region_probabilities(layer);
    const double a = x > 0.0 ? model.single_eav_cdfs(x, v).mainlobe : 0.0;
    return std::exp(-layer.count * pr.mainlobe * (1.0 - a));
}

double ppp_eav_sidelobe_cdf(const SnrModel& model, double x, std::size_t v) {
    const auto& layer = model.layer(v);
    if (layer.count == 0 || layer.sidelobe_empty()) return 1.0;
    const auto pr = region_probabilities(layer);
    const double b = x > 0.0 ? model.single_eav_cdfs(x, v).sidelobe : 0.0;
    return std::exp(-layer.count * pr.sidelobe * (1.0 - b));
}

double ppp_eav_cdf(const SnrModel& model, double x) {
    double exponent = 0.0;
    for (std::size_t v = 0; v < model.layer_count(); ++v) {
        const auto& layer = model.layer(v);
        if (layer.count == 0) continue;
        const auto pr = region_probabilities(layer);
        const LobeCdfs c = x > 0.0 ? model.single_eav_cdfs(x, v) : LobeCdfs{0.0, 0.0};
        exponent += layer.count * (pr.mainlobe * (1.0 - c.mainlobe) + pr.sidelobe * (1.0 - c.sidelobe));
    }
    return std::exp(-exponent);
}

double approx_ergodic_capacity(const SnrModel& model, const SecrecyControl& ctrl, SecrecyDiagnostics* diag) {
    return ergodic_capacity_given_cdf(model, [&](double x) { return ppp_eav_cdf(model, x); }, ctrl, diag);
}

double approx_outage_probability(const SnrModel& model, double rate, const SecrecyControl& ctrl,
                                 SecrecyDiagnostics* diag) {
    return outage_probability_given_cdf(model, [&](double x) { return ppp_eav_cdf(model, x); }, rate, ctrl, diag);
}

SecrecyReport approx_secrecy_metrics(const SnrModel& model, double rate, double epsilon, const SecrecyControl& ctrl) {
    SecrecyReport rep;
    rep.method = Method::approx;
    rep.rate_target = rate;
    rep.epsilon = epsilon;
    rep.c_erg = approx_ergodic_capacity(model, ctrl, &rep.diagnostics);
    rep.p_out = approx_outage_probability(model, rate, ctrl, &rep.diagnostics);
    rep.c_out = outage_capacity_given(
        model, [&](double r) { return approx_outage_probability(model, r, ctrl, &rep.diagnostics); }, epsilon, ctrl,
        &rep.diagnostics, &rep.rate_at_epsilon);
    return rep;
}

SecrecyReport multi_altitude_metrics(const SnrModel& model, double rate, double epsilon, const SecrecyControl& ctrl) {
    return approx_secrecy_metrics(model, rate, epsilon, ctrl);
}

double capacity_no_eavesdroppers(const SnrModel& model, SecrecyDiagnostics* diag) {
    const auto& f = model.scenario().fading;
    const double m_floor = std::floor(f.m);
    if (diag && m_floor != f.m)
        diag->warnings.push_back("non-integer m: closed form uses floor(m) terms with the actual m");
    const int M = static_cast<int>(m_floor);
    const double beta = 1.0 / (2.0 * f.b) - f.delta();
    const double u = 1.0 / model.serving_scale();  // w1 d_s^α
    const double xi = beta * u;

    std::vector<double> scaled_gamma(static_cast<std::size_t>(std::max(M, 1)));
    for (int t = 0; t < M; ++t) scaled_gamma[t] = specfun::scaled_upper_incomplete_gamma_nonpos(t, xi);

    double sum = 0.0;
    double k_fact = 1.0;
    for (int k = 0; k < M; ++k) {
        if (k > 0) k_fact *= k;
        // (-1)^k (1-m)_k = (m-1)(m-2)...(m-k)
        const double coeff = (k % 2 == 0 ? 1.0 : -1.0) * specfun::pochhammer(1.0 - f.m, k) *
                             std::pow(f.delta(), k) / k_fact;
        for (int t = 0; t <= k; ++t)
            sum += coeff * std::pow(u, t) / std::pow(beta, k - t + 1) * scaled_gamma[t];
    }
    return f.K() * sum / std::numbers::ln2;
}

double outage_no_eavesdroppers(const SnrModel& model, double rate) {
    if (!(rate >= 0.0)) throw std::invalid_argument("target secrecy rate must be nonnegative");
    return model.serving_snr_cdf(std::exp2(rate) - 1.0);
}

SecrecyReport degenerate_many_eavesdroppers() {
    SecrecyReport rep;
    rep.method = Method::asymptotic;
    rep.c_erg = 0.0;
    rep.p_out = 1.0;
    rep.c_out = 0.0;
    return rep;
}

namespace {

struct ShellTerms {
    double D;   // 4 r (r + a)
    double c0;  // 1 + a² / D
};

ShellTerms shell_terms(double a_e, double r) {
    const double D = 4.0 * r * (r + a_e);
    return {D, 1.0 + a_e * a_e / D};
}

double survival_power(int N, double x, double a_e, double r) {
    return std::pow(1.0 - distance_cdf_shell(x, a_e, r), N);
}

void check_range(int N, double a_e, double lo, double hi) {
    if (N < 1) throw std::invalid_argument("conditional mean needs N >= 1");
    if (!(lo >= a_e && hi > lo)) throw std::invalid_argument("conditional mean needs a_e <= lo < hi");
}

}  // namespace

ConditionalMean nearest_distance_conditional_mean_series(int N, double a_e, double lo, double hi, double r) {
    check_range(N, a_e, lo, hi);
    const auto s = shell_terms(a_e, r);
    const double mass = survival_power(N, lo, a_e, r) - survival_power(N, hi, a_e, r);
    // Neumaier-compensated Σ_i C(N-1,i) c0^{N-1-i} [hi³(-hi²/D)^i - lo³(-lo²/D)^i] / (2i+3)
    double sum = 0.0;
    double comp = 0.0;
    double largest = 0.0;
    const double uh = -hi * hi / s.D;
    const double ul = -lo * lo / s.D;
    double ph = hi * hi * hi;
    double pl = lo * lo * lo;
    for (int i = 0; i < N; ++i) {
        const double log_binom = specfun::log_gamma(N) - specfun::log_gamma(i + 1.0) - specfun::log_gamma(N - i);
        const double pre = std::exp(log_binom + (N - 1 - i) * std::log(s.c0));
        const double term = pre * (ph - pl) / (2.0 * i + 3.0);
        largest = std::max(largest, std::fabs(term));
        const double t = sum + term;
        comp += std::fabs(sum) >= std::fabs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
        ph *= uh;
        pl *= ul;
    }
    sum += comp;
    ConditionalMean out;
    out.value = N / (2.0 * r * (r + a_e)) * sum / mass;
    out.ill_conditioned = sum == 0.0 || largest / std::fabs(sum) > 1e6;
    return out;
}

ConditionalMean nearest_distance_conditional_mean_quadrature(int N, double a_e, double lo, double hi, double r) {
    check_range(N, a_e, lo, hi);
    const double mass = survival_power(N, lo, a_e, r) - survival_power(N, hi, a_e, r);
    const double scale = N / (2.0 * r * (r + a_e));
    quad::QuadratureControl qc;
    qc.abs_tol = 0.0;
    qc.rel_tol = 1e-13;
    const auto res = quad::integrate(
        [&](double t) { return scale * t * t * std::pow(1.0 - distance_cdf_shell(t, a_e, r), N - 1); }, lo, hi, qc);
    return {res.value / mass, false};
}

ConditionalMean nearest_distance_conditional_mean(int N, double a_e, double lo, double hi, double r) {
    if (N <= 60) return nearest_distance_conditional_mean_series(N, a_e, lo, hi, r);
    return nearest_distance_conditional_mean_quadrature(N, a_e, lo, hi, r);
}

HighSnrCharacterization high_snr_characterization(const SnrModel& model) {
    if (model.layer_count() != 1)
        throw std::invalid_argument("high-SNR characterization supports a single eavesdropper layer");
    const auto& layer = model.layer(0);
    const auto& sys = model.scenario().system;
    const int N = layer.count;
    const double r = layer.earth_radius;
    const double a = layer.altitude;
    const double alpha = sys.path_loss_exponent;
    const double d_s = model.serving_distance();

    HighSnrCharacterization h;
    const double surv_th = survival_power(N, layer.d_th, a, r);
    h.prob_none = survival_power(N, layer.d_max, a, r);
    h.prob_main = 1.0 - surv_th;
    h.prob_side = surv_th - h.prob_none;
    h.slope = h.prob_none;

    double bracket = 0.0;  // every term except the one carrying log2 P
    if (h.prob_main > 0.0 && layer.d_th > a) {
        const auto cm = nearest_distance_conditional_mean(N, a, a, layer.d_th, r);
        h.lambda_main = cm.value;
        h.ill_conditioned = h.ill_conditioned || cm.ill_conditioned;
        bracket += h.prob_main * alpha * std::log2(h.lambda_main / d_s);
    }
    if (h.prob_side > 0.0 && layer.d_max > layer.d_th) {
        const auto cm = nearest_distance_conditional_mean(N, a, layer.d_th, layer.d_max, r);
        h.lambda_side = cm.value;
        h.ill_conditioned = h.ill_conditioned || cm.ill_conditioned;
        bracket += h.prob_side * (std::log2(sys.gain_ml / sys.gain_sl) + alpha * std::log2(h.lambda_side / d_s));
    }
    if (h.ill_conditioned) h.warnings.push_back("binomial conditional-mean sum lost more than 6 digits");

    const double w1 = model.budget().w1;
    const double w1_unit_power = w1 * sys.tx_power_w;
    const double path = std::pow(1000.0 * d_s, alpha);
    h.c_erg_inf = bracket - h.prob_none * std::log2(w1 * path);
    h.offset = -(bracket - h.prob_none * std::log2(w1_unit_power * path)) / h.slope;
    return h;
}

}  // namespace satsec
