#include "satsec/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "satsec/pointprocess.hpp"

namespace satsec {

const char* method_name(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::approx: return "approx";
        case Method::asymptotic: return "asymptotic";
        case Method::montecarlo: return "mc";
    }
    return "unknown";
}

void SecrecyControl::validate() const {
    quad.validate();
    if (!(tail_tol > 0.0 && tail_tol < 1e-2)) throw std::invalid_argument("tail_tol must lie in (0, 0.01)");
    if (!(pair_mass_tol >= 0.0 && pair_mass_tol < 1e-2))
        throw std::invalid_argument("pair_mass_tol must lie in [0, 0.01)");
    if (exact_max_eavesdroppers < 0) throw std::invalid_argument("exact_max_eavesdroppers must be nonnegative");
    if (!(outage_tol > 0.0)) throw std::invalid_argument("outage_tol must be positive");
    if (!(rate_bracket_tail > 0.0 && rate_bracket_tail < 1.0))
        throw std::invalid_argument("rate_bracket_tail must lie in (0, 1)");
}

void SecrecyDiagnostics::merge(const SecrecyDiagnostics& o) {
    pairs_used = std::max(pairs_used, o.pairs_used);
    pair_mass = std::min(pair_mass, o.pair_mass);
    x_max = std::max(x_max, o.x_max);
    evaluations += o.evaluations;
    quadrature_converged = quadrature_converged && o.quadrature_converged;
    series_truncated = series_truncated || o.series_truncated;
    outage_infeasible = outage_infeasible || o.outage_infeasible;
    bisection_steps += o.bisection_steps;
    for (const auto& w : o.warnings) {
        if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
    }
}

namespace {

using FillCdfs = std::function<void(double, std::span<double>)>;

// Serving-SNR level beyond which P[γ_s > x] < tail, found by doubling.
double serving_cutoff(const SnrModel& model, double start, double tail) {
    double x = std::max(start, model.serving_scale() * model.scenario().fading.mean_power());
    while (model.serving_snr_ccdf(x) >= tail) x *= 2.0;
    return x;
}

void note_quadrature(SecrecyDiagnostics* diag, const quad::VectorQuadResult& r, double x_max,
                     const SnrModel& model) {
    if (!diag) return;
    SecrecyDiagnostics d;
    d.evaluations = r.evaluations;
    d.quadrature_converged = r.converged;
    d.x_max = x_max;
    d.series_truncated = model.series().truncated();
    if (!r.converged) d.warnings.push_back("quadrature did not reach its tolerance");
    if (d.series_truncated) d.warnings.push_back("fading series hit n_max before its tolerance");
    diag->merge(d);
}

// Σ_k weight_k (1/ln2) ∫ F_k(x) (1 - F_s(x)) / (1 + x) dx
double ergodic_vector(const SnrModel& model, const FillCdfs& fill, std::span<const double> weights,
                      const SecrecyControl& ctrl, SecrecyDiagnostics* diag) {
    ctrl.validate();
    const std::size_t dim = weights.size();
    const double mean = model.serving_scale() * model.scenario().fading.mean_power();
    const double x_max = serving_cutoff(model, mean, ctrl.tail_tol);
    const auto pts = quad::log_breakpoints(0.0, x_max, 1e-6 * mean);
    auto integrand = [&](double x, std::span<double> out) {
        fill(x, out);
        const double k = model.serving_snr_ccdf(x) / (1.0 + x);
        for (std::size_t j = 0; j < dim; ++j) out[j] *= weights[j] * k;
    };
    const auto r = quad::integrate_vector(integrand, dim, pts, ctrl.quad);
    note_quadrature(diag, r, x_max, model);
    double s = 0.0;
    for (double v : r.value) s += v;
    return std::max(0.0, s / std::numbers::ln2);
}

// 1 - Σ_k weight_k ∫_{x0}^∞ F_k(2^{-R}(1+x) - 1) f_s(x) dx, with Σ weights = mass
double outage_vector(const SnrModel& model, const FillCdfs& fill, std::span<const double> weights, double rate,
                     const SecrecyControl& ctrl, SecrecyDiagnostics* diag) {
    ctrl.validate();
    if (!(rate >= 0.0)) throw std::invalid_argument("target secrecy rate must be nonnegative");
    const std::size_t dim = weights.size();
    const double mean = model.serving_scale() * model.scenario().fading.mean_power();
    const double x0 = std::exp2(rate) - 1.0;
    if (model.serving_snr_ccdf(x0) < ctrl.tail_tol) return 1.0;
    const double x_max = serving_cutoff(model, std::max(mean, 2.0 * x0), ctrl.tail_tol);
    const auto offsets = quad::log_breakpoints(0.0, x_max - x0, 1e-6 * mean);
    std::vector<double> pts;
    pts.reserve(offsets.size());
    for (double o : offsets) pts.push_back(x0 + o);
    pts.back() = x_max;
    const double inv = std::exp2(-rate);
    auto integrand = [&](double x, std::span<double> out) {
        const double y = std::max(0.0, inv * (1.0 + x) - 1.0);
        fill(y, out);
        const double f = model.serving_snr_pdf(x);
        for (std::size_t j = 0; j < dim; ++j) out[j] *= weights[j] * f;
    };
    const auto r = quad::integrate_vector(integrand, dim, pts, ctrl.quad);
    note_quadrature(diag, r, x_max, model);
    double s = 0.0;
    for (double v : r.value) s += v;
    return std::clamp(1.0 - s, 0.0, 1.0);
}

}  // namespace

double ergodic_capacity_given_cdf(const SnrModel& model, const EavesdropperCdf& cdf, const SecrecyControl& ctrl,
                                  SecrecyDiagnostics* diag) {
    const double one = 1.0;
    return ergodic_vector(
        model, [&](double x, std::span<double> out) { out[0] = cdf(x); }, std::span<const double>(&one, 1), ctrl,
        diag);
}

double outage_probability_given_cdf(const SnrModel& model, const EavesdropperCdf& cdf, double rate,
                                    const SecrecyControl& ctrl, SecrecyDiagnostics* diag) {
    const double one = 1.0;
    return outage_vector(
        model, [&](double x, std::span<double> out) { out[0] = cdf(x); }, std::span<const double>(&one, 1), rate,
        ctrl, diag);
}

double outage_capacity_given(const SnrModel& model, const std::function<double(double)>& outage, double epsilon,
                             const SecrecyControl& ctrl, SecrecyDiagnostics* diag, double* rate_star) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("outage target epsilon must lie in (0, 1)");
    SecrecyDiagnostics d;
    auto finish = [&](double rate) {
        if (rate_star) *rate_star = rate;
        if (diag) diag->merge(d);
        return (1.0 - epsilon) * rate;
    };

    const double p0 = outage(0.0);
    if (p0 >= epsilon) {
        d.outage_infeasible = true;
        d.warnings.push_back("outage target infeasible: P_out(0) already exceeds epsilon");
        return finish(0.0);
    }
    double lo = 0.0;
    double hi = std::log2(1.0 + model.serving_snr_quantile_upper(ctrl.rate_bracket_tail));
    double p_hi = outage(hi);
    if (p_hi < epsilon) {
        d.warnings.push_back("outage stays below epsilon over the whole rate bracket");
        return finish(hi);
    }
    double best = lo;
    double best_res = std::fabs(p0 - epsilon);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double pm = outage(mid);
        ++d.bisection_steps;
        const double res = std::fabs(pm - epsilon);
        if (res < best_res) {
            best = mid;
            best_res = res;
        }
        if (res < 0.01 * ctrl.outage_tol || hi - lo < 1e-10) break;
        (pm < epsilon ? lo : hi) = mid;
    }
    if (best_res >= ctrl.outage_tol) d.warnings.push_back("bisection residual exceeds outage_tol");
    return finish(best);
}

ExactSecrecy::ExactSecrecy(const SnrModel& model, const SecrecyControl& ctrl) : model_(model), ctrl_(ctrl) {
    ctrl_.validate();
    if (model_.layer_count() != 1)
        throw std::invalid_argument(
            "exact evaluation supports a single eavesdropper layer; use the approx method for several altitudes");
    const auto& layer = model_.layer(0);
    const int N = layer.count;
    if (N > ctrl_.exact_max_eavesdroppers)
        throw std::invalid_argument("exact evaluation is limited to N <= " +
                                    std::to_string(ctrl_.exact_max_eavesdroppers) + " eavesdroppers (got " +
                                    std::to_string(N) + "); use the approx method instead");
    const auto pr = region_probabilities(layer);
    std::vector<Pair> all;
    all.reserve(static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(N + 2) / 2);
    for (int p = 0; p <= N; ++p) {
        for (int q = 0; p + q <= N; ++q) {
            const double w = case_probability(N, p, q, pr);
            if (w > 0.0) all.push_back({p, q, w});
        }
    }
    std::sort(all.begin(), all.end(), [](const Pair& a, const Pair& b) {
        if (a.prob != b.prob) return a.prob > b.prob;
        return a.p != b.p ? a.p < b.p : a.q < b.q;
    });
    double mass = 0.0;
    for (const auto& pq : all) {
        pairs_.push_back(pq);
        mass += pq.prob;
        p_max_ = std::max(p_max_, pq.p);
        q_max_ = std::max(q_max_, pq.q);
        if (mass >= 1.0 - ctrl_.pair_mass_tol) break;
    }
    mass_ = mass;
}

void ExactSecrecy::fill_pair_cdfs(double x, std::span<double> out) const {
    const LobeCdfs c = x > 0.0 ? model_.single_eav_cdfs(x, 0) : LobeCdfs{0.0, 0.0};
    std::vector<double> ap(static_cast<std::size_t>(p_max_) + 1), bq(static_cast<std::size_t>(q_max_) + 1);
    ap[0] = 1.0;
    bq[0] = 1.0;
    for (std::size_t i = 1; i < ap.size(); ++i) ap[i] = ap[i - 1] * c.mainlobe;
    for (std::size_t i = 1; i < bq.size(); ++i) bq[i] = bq[i - 1] * c.sidelobe;
    for (std::size_t k = 0; k < pairs_.size(); ++k) out[k] = ap[pairs_[k].p] * bq[pairs_[k].q];
}

double ExactSecrecy::mixture_cdf(double x) const {
    std::vector<double> f(pairs_.size());
    fill_pair_cdfs(x, f);
    double s = 0.0;
    for (std::size_t k = 0; k < pairs_.size(); ++k) s += pairs_[k].prob * f[k];
    return s;
}

namespace {
std::vector<double> pair_weights(const std::vector<ExactSecrecy::Pair>& pairs) {
    std::vector<double> w;
    w.reserve(pairs.size());
    for (const auto& pq : pairs) w.push_back(pq.prob);
    return w;
}
}  // namespace

double ExactSecrecy::ergodic_capacity(SecrecyDiagnostics* diag) const {
    const auto w = pair_weights(pairs_);
    const double c = ergodic_vector(
        model_, [&](double x, std::span<double> out) { fill_pair_cdfs(x, out); }, w, ctrl_, diag);
    if (diag) {
        diag->pairs_used = static_cast<int>(pairs_.size());
        diag->pair_mass = mass_;
    }
    return c;
}

double ExactSecrecy::outage_probability(double rate, SecrecyDiagnostics* diag) const {
    const auto w = pair_weights(pairs_);
    // Dropped pairs (mass 1 - mass_) end up counted as outage.
    const double p = outage_vector(
        model_, [&](double x, std::span<double> out) { fill_pair_cdfs(x, out); }, w, rate, ctrl_, diag);
    if (diag) {
        diag->pairs_used = static_cast<int>(pairs_.size());
        diag->pair_mass = mass_;
    }
    return p;
}

double ExactSecrecy::outage_capacity(double epsilon, SecrecyDiagnostics* diag, double* rate_star) const {
    return outage_capacity_given(
        model_, [&](double r) { return outage_probability(r, diag); }, epsilon, ctrl_, diag, rate_star);
}

SecrecyReport ExactSecrecy::report(double rate, double epsilon) const {
    SecrecyReport rep;
    rep.method = Method::exact;
    rep.rate_target = rate;
    rep.epsilon = epsilon;
    rep.c_erg = ergodic_capacity(&rep.diagnostics);
    rep.p_out = outage_probability(rate, &rep.diagnostics);
    rep.c_out = outage_capacity(epsilon, &rep.diagnostics, &rep.rate_at_epsilon);
    return rep;
}

double ergodic_secrecy_capacity(const SnrModel& model, const SecrecyControl& ctrl, SecrecyDiagnostics* diag) {
    return ExactSecrecy(model, ctrl).ergodic_capacity(diag);
}

double secrecy_outage_probability(const SnrModel& model, double rate, const SecrecyControl& ctrl,
                                  SecrecyDiagnostics* diag) {
    return ExactSecrecy(model, ctrl).outage_probability(rate, diag);
}

double outage_secrecy_capacity(const SnrModel& model, double epsilon, const SecrecyControl& ctrl,
                               SecrecyDiagnostics* diag) {
    return ExactSecrecy(model, ctrl).outage_capacity(epsilon, diag);
}

}  // namespace satsec
