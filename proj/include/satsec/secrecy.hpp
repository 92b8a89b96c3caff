#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "satsec/quadrature.hpp"
#include "satsec/snrdist.hpp"

namespace satsec {

using quad::QuadratureControl;

enum class Method { exact, approx, asymptotic, montecarlo };

const char* method_name(Method m);

/// Numerical policy shared by the exact and approximate evaluators.
struct SecrecyControl {
    QuadratureControl quad;
    /// Integrals over the serving SNR stop where P[γ_s > x] drops below this.
    double tail_tol = 1e-10;
    /// Exact mode stops adding (p, q) terms once their total probability
    /// reaches 1 - pair_mass_tol.
    double pair_mass_tol = 1e-9;
    int exact_max_eavesdroppers = 500;
    /// Required |P_out(R*) - ε| for outage capacity.
    double outage_tol = 1e-4;
    /// Upper bisection bracket is log2(1 + the (1 - tail) serving quantile).
    double rate_bracket_tail = 1e-6;

    void validate() const;
};

struct SecrecyDiagnostics {
    int pairs_used = 0;
    double pair_mass = 1.0;
    double x_max = 0.0;
    int evaluations = 0;
    bool quadrature_converged = true;
    bool series_truncated = false;
    bool outage_infeasible = false;
    int bisection_steps = 0;
    std::vector<std::string> warnings;

    void merge(const SecrecyDiagnostics& other);
};

struct SecrecyReport {
    static constexpr double nan = std::numeric_limits<double>::quiet_NaN();

    Method method = Method::exact;
    double c_erg = nan;
    double p_out = nan;
    double c_out = nan;
    double rate_target = nan;      // R_t used for p_out
    double epsilon = nan;          // ε used for c_out
    double rate_at_epsilon = nan;  // R_t*
    // 95% half-widths, Monte-Carlo only
    double c_erg_ci = nan;
    double p_out_ci = nan;
    long long n_trials = 0;
    SecrecyDiagnostics diagnostics;
};

/// Aggregate eavesdropper SNR CDF F_{γe*}(x).
using EavesdropperCdf = std::function<double(double)>;

/// (1/ln 2) ∫ F_e(x) (1 - F_s(x)) / (1 + x) dx for an arbitrary eavesdropper law.
double ergodic_capacity_given_cdf(const SnrModel& model, const EavesdropperCdf& cdf, const SecrecyControl& ctrl,
                                  SecrecyDiagnostics* diag = nullptr);

/// 1 - ∫_{2^R - 1}^∞ F_e(2^{-R}(1 + x) - 1) f_s(x) dx.
double outage_probability_given_cdf(const SnrModel& model, const EavesdropperCdf& cdf, double rate,
                                    const SecrecyControl& ctrl, SecrecyDiagnostics* diag = nullptr);

/// Solves P_out(R) = ε by bisection and returns (1 - ε) R*. Returns 0 and
/// marks the target infeasible when P_out(0) >= ε already.
double outage_capacity_given(const SnrModel& model, const std::function<double(double)>& outage, double epsilon,
                             const SecrecyControl& ctrl, SecrecyDiagnostics* diag = nullptr,
                             double* rate_star = nullptr);

/// Exact evaluation over every (p, q) split of a single binomial layer.
class ExactSecrecy {
public:
    /// Throws std::invalid_argument for multi-layer scenarios and for N above
    /// the exact-mode cap, suggesting the approximate evaluator instead.
    ExactSecrecy(const SnrModel& model, const SecrecyControl& ctrl = {});

    double ergodic_capacity(SecrecyDiagnostics* diag = nullptr) const;
    double outage_probability(double rate, SecrecyDiagnostics* diag = nullptr) const;
    double outage_capacity(double epsilon, SecrecyDiagnostics* diag = nullptr, double* rate_star = nullptr) const;

    /// Σ 𝒫[N,p,q] F^{(p,q)}(x) over the retained pairs.
    double mixture_cdf(double x) const;

    SecrecyReport report(double rate, double epsilon) const;

    struct Pair {
        int p;
        int q;
        double prob;
    };
    const std::vector<Pair>& pairs() const { return pairs_; }
    double retained_mass() const { return mass_; }

private:
    void fill_pair_cdfs(double x, std::span<double> out) const;

    const SnrModel& model_;
    SecrecyControl ctrl_;
    std::vector<Pair> pairs_;
    int p_max_ = 0;
    int q_max_ = 0;
    double mass_ = 0.0;
};

double ergodic_secrecy_capacity(const SnrModel& model, const SecrecyControl& ctrl = {},
                                SecrecyDiagnostics* diag = nullptr);
double secrecy_outage_probability(const SnrModel& model, double rate, const SecrecyControl& ctrl = {},
                                  SecrecyDiagnostics* diag = nullptr);
double outage_secrecy_capacity(const SnrModel& model, double epsilon, const SecrecyControl& ctrl = {},
                               SecrecyDiagnostics* diag = nullptr);

}  // namespace satsec
