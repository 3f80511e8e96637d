#pragma once

// Derivative-free scalar solvers shared by the feature detectors.

#include <cmath>
#include <utility>

#include "tcq/error.hpp"

namespace tcq {

struct ScalarMinimum {
    double x;
    double value;
};

/// Root of `f` in [lo, hi] by bisection. f(lo) and f(hi) must differ in sign
/// (a zero at either end is returned directly).
template <typename F>
double bisect(F &&f, double lo, double hi, double tol = 1e-12, int max_iter = 200) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) throw SolverFailure("bisect: interval does not bracket a sign change");
    for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Golden-section search for a minimum of `f` on [lo, hi]. Assumes the
/// function is unimodal there; otherwise returns some local minimum.
template <typename F>
ScalarMinimum golden_section_minimize(F &&f, double lo, double hi, double tol = 1e-10, int max_iter = 200) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < max_iter && b - a > tol; ++it) {
        // Ties go left so the search is deterministic toward smaller x.
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc <= fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
}

} // namespace tcq
