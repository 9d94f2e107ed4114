#pragma once

#include <span>
#include <vector>

#include "fermiscatter/species.hpp"

namespace fermiscatter {

// Condon point of the repulsive 1/r^3 branch for blue detuning:
// r_C = lambdabar (Gamma/Delta)^{1/3}. Red detuning (delta <= 0) is a domain
// error: that side has discrete photoassociation resonances.
double condon_radius(const AtomSpecies& species, double delta);

// Loss-rate detuning exponent for a short-range pair correlation p(r) ~ r^gamma:
// loss ~ Delta^{-alpha} with alpha = (gamma + 6)/3. gamma = 0 gives the
// distinguishable-particle alpha = 2, gamma = 2 (p-wave) gives 8/3.
double loss_exponent(double pair_correlation_exponent);

struct LossPoint {
    double delta;  // rad/s or any consistent unit
    double loss;
};

// amplitude * Delta^{-(gamma+6)/3} over the grid; all deltas must be > 0.
std::vector<LossPoint> loss_curve(std::span<const double> delta_grid, double gamma,
                                  double amplitude);

// -ln(N/N0); throws std::domain_error for nonpositive counts.
double atom_loss_metric(double n_final, double n_initial);

struct FitResult {
    double exponent;         // log-log slope (negative for decaying laws)
    double exponent_stderr;  // from the residual covariance
    double amplitude;        // exp(intercept), in data units
};

struct FitPoint {
    double x;
    double y;
    double y_err = 0.0;  // 0 => unweighted
};

// Least squares on (ln x, ln y); weighted by (y/y_err)^2 when errors are
// given for every point. Requires >= 3 points with positive x, y and
// nonzero x spread.
FitResult fit_power_law(std::span<const FitPoint> points);

}  // namespace fermiscatter
