#pragma once

#include <span>

namespace satsec::specfun {

/// Truncation policy for the infinite n-series that appear in every
/// shadowed-Rician expression.
struct SeriesControl {
    double rel_tol = 1e-12;
    int n_max = 500;

    void validate() const;
};

/// A truncated series sum plus how it was obtained.
struct SeriesValue {
    double value = 0.0;
    int terms = 0;
    bool truncated = false;  // n_max was reached before rel_tol was met
};

/// log Γ(x) for x > 0; reentrant (does not touch the global signgam).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a, x) = γ(a, x) / Γ(a).
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x), computed
/// directly so that small tails keep their relative precision.
double regularized_gamma_q(double a, double x);

/// γ(a, x) = ∫₀ˣ t^{a-1} e^{-t} dt. Throws std::domain_error for a <= 0 or x < 0.
double lower_incomplete_gamma(double a, double x);

/// Γ(a, x) for a > 0.
double upper_incomplete_gamma(double a, double x);

/// E₁(x) for x > 0: power series below 1, continued fraction above.
double exponential_integral_e1(double x);

/// Γ(-t, x) for integer t >= 0 and x > 0, obtained by downward recurrence
/// Γ(a-1, x) = (Γ(a, x) - x^{a-1} e^{-x}) / (a-1) starting from Γ(0, x) = E₁(x).
double upper_incomplete_gamma_nonpos(int t, double x);

/// e^x Γ(-t, x). Uses the recurrence for x <= t + 1 and the continued
/// fraction for Γ(a, x) otherwise, where the recurrence would cancel.
double scaled_upper_incomplete_gamma_nonpos(int t, double x);

/// Pochhammer symbol (x)_n = x (x+1) ... (x+n-1); (x)_0 = 1.
double pochhammer(double x, int n);

/// Fills out[k] = P(a + k, x) for k = 0 .. out.size()-1.
///
/// Only the top entry is evaluated directly; the rest follow from the
/// downward recurrence P(s, x) = P(s+1, x) + x^s e^{-x} / Γ(s+1).
/// All recurrence terms are nonnegative.
void regularized_gamma_p_ladder(double a, double x, std::span<double> out);

/// Fills out[k] = Q(a + k, x) using the upward recurrence
/// Q(s+1, x) = Q(s, x) + x^s e^{-x} / Γ(s+1).
void regularized_gamma_q_ladder(double a, double x, std::span<double> out);

}  // namespace satsec::specfun
