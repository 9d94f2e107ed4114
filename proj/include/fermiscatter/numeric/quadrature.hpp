#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fermiscatter/errors.hpp"

namespace fermiscatter::num {

namespace detail {

// Gauss 7 / Kronrod 15 nodes on [0,1] half-interval (abscissa, G7 weight, K15 weight).
inline constexpr double gk15[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.0, 0.204432940075298},
    {0.586087235467691, 0.0, 0.169004726639267},
    {0.864864423359769, 0.0, 0.104790010322250},
    {0.991455371120813, 0.0, 0.022935322010529},
};

template <class Func>
double gk15_panel(Func&& f, double a, double b, double& err) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    const double y0 = f(c);
    double g7 = gk15[0][1] * y0;
    double k15 = gk15[0][2] * y0;
    for (int i = 1; i < 8; ++i) {
        const double dx = m * gk15[i][0];
        const double yi = f(c + dx) + f(c - dx);
        g7 += gk15[i][1] * yi;
        k15 += gk15[i][2] * yi;
    }
    g7 *= m;
    k15 *= m;
    // |G7 - K15| overestimates the K15 error; conservative on purpose.
    err = std::abs(g7 - k15);
    return k15;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod integration on [a, b]. Splits the segment
// with the largest error estimate until
//   sum(err) <= max(abs_tol, rel_tol * |integral|).
// Throws NumericError when the segment budget is exhausted.
template <class Func>
double integrate(Func&& f, double a, double b, double rel_tol = 1e-10,
                 double abs_tol = 0.0, std::size_t max_segments = 2000) {
    struct Segment {
        double a, b, value, err;
    };
    if (a == b) return 0.0;

    std::vector<Segment> segs;
    segs.reserve(64);
    double err0 = 0.0;
    const double v0 = detail::gk15_panel(f, a, b, err0);
    segs.push_back({a, b, v0, err0});

    for (;;) {
        double total = 0.0, err_total = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err_total += segs[i].err;
            if (segs[i].err > segs[worst].err) worst = i;
        }
        if (err_total <= std::max(abs_tol, rel_tol * std::abs(total))) return total;
        if (segs.size() >= max_segments)
            throw NumericError("adaptive quadrature: segment budget exhausted, err=" +
                               std::to_string(err_total));

        const Segment s = segs[worst];
        const double mid = 0.5 * (s.a + s.b);
        if (!(mid > s.a && mid < s.b))
            throw NumericError("adaptive quadrature: interval underflow");
        double e1 = 0.0, e2 = 0.0;
        const double v1 = detail::gk15_panel(f, s.a, mid, e1);
        const double v2 = detail::gk15_panel(f, mid, s.b, e2);
        segs[worst] = {s.a, mid, v1, e1};
        segs.push_back({mid, s.b, v2, e2});
    }
}

}  // namespace fermiscatter::num
