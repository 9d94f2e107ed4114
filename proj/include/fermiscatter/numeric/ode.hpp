#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fermiscatter/errors.hpp"

namespace fermiscatter::num {

struct OdeOptions {
    double rel_tol = 1e-6;
    double abs_tol = 0.0;     // per component, added to rel_tol * |y|
    double h_init = 0.0;      // 0 -> (t1 - t0) / 100
    int max_steps = 200000;
};

// Cash-Karp embedded Runge-Kutta 4(5), adaptive step. Observer is called as
// observer(t, y) for the initial state and after every accepted step.
template <std::size_t N, class Rhs, class Observer>
void integrate_ode(Rhs&& rhs, std::array<double, N>& y, double t0, double t1,
                   const OdeOptions& opt, Observer&& observer) {
    using State = std::array<double, N>;

    static constexpr double a2 = 0.2, a3 = 0.3, a4 = 0.6, a5 = 1.0, a6 = 0.875;
    static constexpr double b21 = 0.2;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0,
                            b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                            b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                            b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                            d6 = c6 - 0.25;

    if (!(t1 > t0)) throw std::invalid_argument("integrate_ode: t1 must exceed t0");
    double t = t0;
    double h = opt.h_init > 0 ? opt.h_init : (t1 - t0) / 100.0;
    observer(t, y);

    State k1, k2, k3, k4, k5, k6, ytmp, ynew, yerr;
    for (int step = 0; step < opt.max_steps; ++step) {
        if (t >= t1) return;
        h = std::min(h, t1 - t);

        rhs(t, y, k1);
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * b21 * k1[i];
        rhs(t + a2 * h, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
        rhs(t + a3 * h, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
        rhs(t + a4 * h, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
        rhs(t + a5 * h, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] + b64 * k4[i] +
                                  b65 * k5[i]);
        rhs(t + a6 * h, ytmp, k6);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            ynew[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
            yerr[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
            const double scale =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            if (scale > 0.0) err = std::max(err, std::abs(yerr[i]) / scale);
        }

        if (err <= 1.0) {
            t += h;
            y = ynew;
            observer(t, y);
            const double grow = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            h *= std::clamp(grow, 1.0, 5.0);
        } else {
            h *= std::max(0.9 * std::pow(err, -0.25), 0.1);
            if (!(t + h > t)) {
                throw NumericError("integrate_ode: step size underflow at t=" +
                                   std::to_string(t));
            }
        }
    }
    throw NumericError("integrate_ode: max_steps exceeded at t=" + std::to_string(t));
}

}  // namespace fermiscatter::num
