#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace satsec::quad {

struct QuadratureControl {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_intervals = 4000;
    int workers = 1;  // threads used to evaluate nodes; 0 = hardware concurrency

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct VectorQuadResult {
    std::vector<double> value;
    std::vector<double> error;
    int evaluations = 0;
    bool converged = false;
};

/// f(x, out) writes dim integrand components at x into out.
using VectorIntegrand = std::function<void(double, std::span<double>)>;

/// Globally adaptive 21-point Gauss-Kronrod integration of a vector-valued
/// integrand over the union of [breakpoints[i], breakpoints[i+1]].
///
/// Component j is accepted once its summed error estimate is at most
/// max(abs_tol, rel_tol * |value_j|). Every round bisects the worst
/// intervals together and evaluates their nodes in parallel; sums are then
/// formed in interval order, so the result does not depend on the number of
/// workers.
VectorQuadResult integrate_vector(const VectorIntegrand& f, std::size_t dim,
                                  std::span<const double> breakpoints,
                                  const QuadratureControl& ctrl);

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadratureControl& ctrl = {});

QuadResult integrate(const std::function<double(double)>& f,
                     std::span<const double> breakpoints,
                     const QuadratureControl& ctrl = {});

/// Breakpoints lo, then one per decade of (lo, hi], then hi. Used for
/// integrands whose scale spans many orders of magnitude. lo may be 0, in
/// which case the first breakpoint after it is first_positive.
std::vector<double> log_breakpoints(double lo, double hi, double first_positive);

}  // namespace satsec::quad
