#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fermiscatter/errors.hpp"

namespace fermiscatter::num {

// Root of f on [lo, hi] with f(lo), f(hi) of opposite sign. Bisection with
// secant refinement: unconditionally convergent on monotone targets, fast
// near the root. Converges the bracket to rel_tol*|x| + abs_tol.
template <class Func>
double solve_bracketed(Func&& f, double lo, double hi, double rel_tol = 1e-12,
                       double abs_tol = 0.0, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw NumericError("solve_bracketed: endpoints do not bracket a root");

    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(hi - lo) <= rel_tol * std::max(std::abs(lo), std::abs(hi)) + abs_tol)
            return 0.5 * (lo + hi);
        // secant through the bracket endpoints, fall back to the midpoint
        double x = lo - flo * (hi - lo) / (fhi - flo);
        const double mid = 0.5 * (lo + hi);
        const double width = hi - lo;
        if (!(x > lo + 0.01 * width && x < hi - 0.01 * width)) x = mid;
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
            fhi = fx;
        }
    }
    return 0.5 * (lo + hi);
}

// Grow [lo, hi] geometrically around a seed until f changes sign across it.
// f must be monotone increasing for the growth directions to be meaningful.
template <class Func>
std::pair<double, double> grow_bracket(Func&& f, double seed, double step = 1.0,
                                       int max_grow = 200) {
    double lo = seed - step;
    double hi = seed + step;
    for (int it = 0; it < max_grow && f(lo) > 0.0; ++it) {
        step *= 2.0;
        lo -= step;
    }
    if (f(lo) > 0.0)
        throw NumericError("grow_bracket: no sign change below seed " + std::to_string(seed));
    step = std::abs(hi - seed);
    for (int it = 0; it < max_grow && f(hi) < 0.0; ++it) {
        step *= 2.0;
        hi += step;
    }
    if (f(hi) < 0.0)
        throw NumericError("grow_bracket: no sign change above seed " + std::to_string(seed));
    return {lo, hi};
}

}  // namespace fermiscatter::num
