#include "satsec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "satsec/parallel.hpp"

namespace satsec::quad {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr int kNodes = 21;

struct Interval {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> value;
    std::vector<double> error;
};

// Kronrod abscissa index 2j+1 coincides with Gauss abscissa j.
void evaluate_interval(const VectorIntegrand& f, std::size_t dim, Interval& iv, std::vector<double>& scratch) {
    static const auto& xk = Kronrod::abscissa();
    static const auto& wk = Kronrod::weights();
    static const auto& wg = Gauss::weights();

    const double c = 0.5 * (iv.a + iv.b);
    const double h = 0.5 * (iv.b - iv.a);
    iv.value.assign(dim, 0.0);
    iv.error.assign(dim, 0.0);
    std::vector<double> gauss(dim, 0.0);
    scratch.resize(dim);

    auto accumulate = [&](double x, std::size_t k) {
        f(x, scratch);
        for (std::size_t j = 0; j < dim; ++j) {
            iv.value[j] += wk[k] * scratch[j];
            if (k % 2 == 1) gauss[j] += wg[k / 2] * scratch[j];
        }
    };
    accumulate(c, 0);
    for (std::size_t k = 1; k < xk.size(); ++k) {
        accumulate(c - h * xk[k], k);
        accumulate(c + h * xk[k], k);
    }
    for (std::size_t j = 0; j < dim; ++j) {
        iv.value[j] *= h;
        iv.error[j] = std::fabs(iv.value[j] - h * gauss[j]);
    }
}

double tolerance(const QuadratureControl& ctrl, double value) {
    return std::max(ctrl.abs_tol, ctrl.rel_tol * std::fabs(value));
}

}  // namespace

void QuadratureControl::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || (abs_tol == 0.0 && rel_tol == 0.0))
        throw std::invalid_argument("quadrature tolerances must be nonnegative and not both zero");
    if (max_intervals < 1) throw std::invalid_argument("quadrature max_intervals must be positive");
    if (workers < 0) throw std::invalid_argument("quadrature workers must be nonnegative");
}

VectorQuadResult integrate_vector(const VectorIntegrand& f, std::size_t dim,
                                  std::span<const double> breakpoints,
                                  const QuadratureControl& ctrl) {
    ctrl.validate();
    if (dim == 0) throw std::invalid_argument("integrate_vector: dim must be positive");
    if (breakpoints.size() < 2) throw std::invalid_argument("integrate_vector: need at least two breakpoints");
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (!std::isfinite(breakpoints[i]) || !std::isfinite(breakpoints[i + 1]) || breakpoints[i + 1] < breakpoints[i])
            throw std::invalid_argument("integrate_vector: breakpoints must be finite and nondecreasing");
    }

    std::vector<Interval> intervals;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        if (breakpoints[i + 1] > breakpoints[i]) intervals.push_back({breakpoints[i], breakpoints[i + 1], {}, {}});
    }

    VectorQuadResult res;
    res.value.assign(dim, 0.0);
    res.error.assign(dim, 0.0);
    if (intervals.empty()) {
        res.converged = true;
        return res;
    }

    auto evaluate = [&](std::vector<Interval>& batch) {
        parallel_for(batch.size(), ctrl.workers, [&](std::size_t i) {
            std::vector<double> scratch;
            evaluate_interval(f, dim, batch[i], scratch);
        });
        res.evaluations += static_cast<int>(batch.size()) * kNodes;
    };
    evaluate(intervals);

    for (;;) {
        std::fill(res.value.begin(), res.value.end(), 0.0);
        std::fill(res.error.begin(), res.error.end(), 0.0);
        for (const auto& iv : intervals) {
            for (std::size_t j = 0; j < dim; ++j) {
                res.value[j] += iv.value[j];
                res.error[j] += iv.error[j];
            }
        }
        std::vector<double> tol(dim);
        bool done = true;
        for (std::size_t j = 0; j < dim; ++j) {
            tol[j] = tolerance(ctrl, res.value[j]);
            if (!(res.error[j] <= tol[j])) done = false;
        }
        if (done) {
            res.converged = true;
            return res;
        }
        if (static_cast<int>(intervals.size()) >= ctrl.max_intervals) return res;

        // Badness of an interval: its largest error as a fraction of the component tolerance.
        std::vector<double> badness(intervals.size(), 0.0);
        double worst = 0.0;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                if (res.error[j] > tol[j]) badness[i] = std::max(badness[i], intervals[i].error[j] / tol[j]);
            }
            worst = std::max(worst, badness[i]);
        }
        if (!(worst > 0.0) || !std::isfinite(worst)) return res;

        const std::size_t room = static_cast<std::size_t>(ctrl.max_intervals) - intervals.size();
        std::vector<std::size_t> split;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (badness[i] >= 0.25 * worst) split.push_back(i);
        }
        std::stable_sort(split.begin(), split.end(),
                         [&](std::size_t l, std::size_t r) { return badness[l] > badness[r]; });
        if (split.size() > room) split.resize(std::max<std::size_t>(room, 1));

        std::vector<Interval> children;
        children.reserve(2 * split.size());
        bool degenerate = false;
        for (std::size_t i : split) {
            const double mid = 0.5 * (intervals[i].a + intervals[i].b);
            if (!(mid > intervals[i].a && mid < intervals[i].b)) degenerate = true;
            children.push_back({intervals[i].a, mid, {}, {}});
            children.push_back({mid, intervals[i].b, {}, {}});
        }
        if (degenerate) return res;
        evaluate(children);

        std::vector<bool> is_split(intervals.size(), false);
        for (std::size_t i : split) is_split[i] = true;
        std::vector<Interval> next;
        next.reserve(intervals.size() + split.size());
        // Keep intervals in left-to-right order so summation order is fixed.
        std::vector<std::size_t> child_of(intervals.size(), 0);
        for (std::size_t k = 0; k < split.size(); ++k) child_of[split[k]] = 2 * k;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            if (is_split[i]) {
                next.push_back(std::move(children[child_of[i]]));
                next.push_back(std::move(children[child_of[i] + 1]));
            } else {
                next.push_back(std::move(intervals[i]));
            }
        }
        intervals = std::move(next);
    }
}

QuadResult integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                     const QuadratureControl& ctrl) {
    auto vr = integrate_vector([&](double x, std::span<double> out) { out[0] = f(x); }, 1, breakpoints, ctrl);
    return {vr.value[0], vr.error[0], vr.evaluations, vr.converged};
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b, const QuadratureControl& ctrl) {
    const double pts[2] = {a, b};
    return integrate(f, std::span<const double>(pts, 2), ctrl);
}

std::vector<double> log_breakpoints(double lo, double hi, double first_positive) {
    if (!(hi > lo)) throw std::invalid_argument("log_breakpoints: need hi > lo");
    if (lo < 0.0) throw std::invalid_argument("log_breakpoints: lo must be nonnegative");
    std::vector<double> pts{lo};
    double start = lo > 0.0 ? lo : first_positive;
    if (!(start > 0.0)) throw std::invalid_argument("log_breakpoints: first_positive must be positive when lo is 0");
    if (lo == 0.0 && start < hi) pts.push_back(start);
    double p = std::pow(10.0, std::floor(std::log10(start)) + 1.0);
    while (p < hi) {
        if (p > pts.back()) pts.push_back(p);
        p *= 10.0;
    }
    pts.push_back(hi);
    return pts;
}

}  // namespace satsec::quad
