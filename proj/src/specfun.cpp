#include "satsec/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace satsec::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kMaxIter = 100000;

void require(bool ok, const char* what) {
    if (!ok) throw std::domain_error(what);
}

// log of x^a e^{-x} / Γ(a+1)
double log_prefactor(double a, double x) {
    return a * std::log(x) - x - log_gamma(a + 1.0);
}

// Σ_k x^k / ((a+1)...(a+k)); converges for all x, fast when x < a+1.
double p_series(double a, double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < kMaxIter; ++k) {
        term *= x / (a + k);
        sum += term;
        if (term < sum * kEps) return sum;
    }
    throw std::runtime_error("incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the continued fraction for Q(a, x) Γ(a) e^{x} x^{-a}.
double q_continued_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

void SeriesControl::validate() const {
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("series rel_tol must lie in (0, 1), got " + std::to_string(rel_tol));
    if (n_max < 1) throw std::invalid_argument("series n_max must be positive, got " + std::to_string(n_max));
}

double log_gamma(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double regularized_gamma_p(double a, double x) {
    require(a > 0.0, "regularized_gamma_p: a must be positive");
    require(x >= 0.0, "regularized_gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < a + 1.0) return std::exp(log_prefactor(a, x)) * p_series(a, x);
    return 1.0 - regularized_gamma_q(a, x);
}

double regularized_gamma_q(double a, double x) {
    require(a > 0.0, "regularized_gamma_q: a must be positive");
    require(x >= 0.0, "regularized_gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    if (x < a + 1.0) return 1.0 - regularized_gamma_p(a, x);
    return std::exp(a * std::log(x) - x - log_gamma(a)) * q_continued_fraction(a, x);
}

double lower_incomplete_gamma(double a, double x) {
    const double p = regularized_gamma_p(a, x);
    if (p == 0.0) return 0.0;
    return std::exp(std::log(p) + log_gamma(a));
}

double upper_incomplete_gamma(double a, double x) {
    const double q = regularized_gamma_q(a, x);
    if (q == 0.0) return 0.0;
    return std::exp(std::log(q) + log_gamma(a));
}

double exponential_integral_e1(double x) {
    require(x > 0.0, "exponential_integral_e1: x must be positive");
    if (x <= 1.0) {
        // E1(x) = -γ - ln x - Σ_{k>=1} (-x)^k / (k k!)
        double sum = 0.0;
        double fact_term = 1.0;  // (-x)^k / k!
        for (int k = 1; k < kMaxIter; ++k) {
            fact_term *= -x / k;
            const double term = fact_term / k;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * kEps) break;
        }
        return -kEulerGamma - std::log(x) - sum;
    }
    double b = x + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h * std::exp(-x);
    }
    throw std::runtime_error("E1 continued fraction did not converge");
}

double upper_incomplete_gamma_nonpos(int t, double x) {
    require(t >= 0, "upper_incomplete_gamma_nonpos: t must be nonnegative");
    require(x > 0.0, "upper_incomplete_gamma_nonpos: x must be positive");
    double g = exponential_integral_e1(x);
    const double ex = std::exp(-x);
    double xpow = 1.0;  // x^{-k}
    for (int k = 1; k <= t; ++k) {
        xpow /= x;
        g = (xpow * ex - g) / k;
    }
    return g;
}

double scaled_upper_incomplete_gamma_nonpos(int t, double x) {
    require(t >= 0, "scaled_upper_incomplete_gamma_nonpos: t must be nonnegative");
    require(x > 0.0, "scaled_upper_incomplete_gamma_nonpos: x must be positive");
    if (x <= t + 1.0) {
        // e^x E1(x) computed directly to keep the seed accurate for moderate x
        double g = std::exp(x) * exponential_integral_e1(x);
        double xpow = 1.0;
        for (int k = 1; k <= t; ++k) {
            xpow /= x;
            g = (xpow - g) / k;
        }
        return g;
    }
    return std::exp(-t * std::log(x)) * q_continued_fraction(-static_cast<double>(t), x);
}

double pochhammer(double x, int n) {
    require(n >= 0, "pochhammer: n must be nonnegative");
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x + k;
    return r;
}

void regularized_gamma_p_ladder(double a, double x, std::span<double> out) {
    require(a > 0.0, "regularized_gamma_p_ladder: a must be positive");
    require(x >= 0.0, "regularized_gamma_p_ladder: x must be nonnegative");
    if (out.empty()) return;
    const std::size_t top = out.size() - 1;
    if (x == 0.0) {
        for (auto& v : out) v = 0.0;
        return;
    }
    const double lx = std::log(x);
    double p = regularized_gamma_p(a + static_cast<double>(top), x);
    out[top] = p;
    for (std::size_t k = top; k-- > 0;) {
        const double s = a + static_cast<double>(k);
        p += std::exp(s * lx - x - log_gamma(s + 1.0));
        out[k] = p < 1.0 ? p : 1.0;
    }
}

void regularized_gamma_q_ladder(double a, double x, std::span<double> out) {
    require(a > 0.0, "regularized_gamma_q_ladder: a must be positive");
    require(x >= 0.0, "regularized_gamma_q_ladder: x must be nonnegative");
    if (out.empty()) return;
    if (x == 0.0) {
        for (auto& v : out) v = 1.0;
        return;
    }
    const double lx = std::log(x);
    double q = regularized_gamma_q(a, x);
    out[0] = q;
    for (std::size_t k = 1; k < out.size(); ++k) {
        const double s = a + static_cast<double>(k - 1);
        q += std::exp(s * lx - x - log_gamma(s + 1.0));
        out[k] = q < 1.0 ? q : 1.0;
    }
}

}  // namespace satsec::specfun
