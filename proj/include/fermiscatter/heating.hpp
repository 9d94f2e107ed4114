#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fermiscatter/trap_scattering.hpp"

namespace fermiscatter {

struct PulseSimConfig {
    AtomSpecies species;
    TrapConfig trap;
    ProbeBeam beam;
    double initial_t_over_tf = 0.2;
    // Energy deposited per scattering event; defaults to 2 recoil energies
    // (absorption kick plus isotropic-emission average).
    std::optional<double> heat_per_event;
    bool include_overlap = false;
    AngleAverage angle_average = AngleAverage::isotropic;
    // Disable to force the unblocked rate (beta_bar = 1), e.g. as a control.
    bool pauli_blocking = true;
    double ode_rel_tol = 1e-6;
    int suppression_table_points = 48;

    double resolved_heat_per_event() const;
    void validate() const;
};

struct HeatingTrajectory {
    struct Row {
        double t;          // s
        double t_over_tf;
        double photons;    // cumulative per atom
        double rate;       // instantaneous photons/s per atom
    };
    std::vector<Row> rows;
};

// Integrate the recoil-heating feedback loop over the probe pulse:
//   dPhi/dt = R0 * beta_bar(T) [* overlap(T)],   dE/dt = N * heat * dPhi/dt,
// with R0 the peak-intensity Rayleigh rate and beta_bar the angle-averaged
// trap suppression; T is recovered from E at every step.
HeatingTrajectory evolve_heating(const PulseSimConfig& config);

struct PowerSweepRow {
    double power;             // W
    double photons_per_atom;  // at the end of the pulse
    double final_t_over_tf;
};

// One evolve_heating per power over the pulse duration. The suppression
// table is built once for the largest power and shared across the sweep.
std::vector<PowerSweepRow> photons_vs_power(const PulseSimConfig& config,
                                            std::span<const double> powers);

struct TwoSlopeFit {
    double slope_low;        // photons per W
    double intercept_low;    // photons
    double slope_high;
    double intercept_high;
};

// Ordinary least-squares lines through the lowest / highest fractions of the
// power grid. Requires >= 4 points in each region.
TwoSlopeFit two_slope_analysis(std::span<const PowerSweepRow> rows, double low_fraction,
                               double high_fraction);

}  // namespace fermiscatter
