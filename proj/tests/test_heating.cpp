#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"
#include "fermiscatter/heating.hpp"
#include "fermiscatter/thermo.hpp"

using namespace fermiscatter;
namespace c = fermiscatter::constants;

namespace {

PulseSimConfig fig3_config() {
    PulseSimConfig cfg;
    cfg.species = lithium6();
    cfg.trap = {2.0 * c::pi * 34e3, 2.0 * c::pi * 770.0, 6e5};
    cfg.beam.waist = 110e-6;
    cfg.beam.power = 2e-3;
    cfg.beam.detuning = -2.0 * c::pi * 112e9;
    cfg.beam.pulse_duration = 50e-3;
    cfg.initial_t_over_tf = 0.2;
    cfg.suppression_table_points = 32;
    return cfg;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::exp(std::log(hi / lo) * i / (n - 1));
    return g;
}

}  // namespace

TEST_SUITE("heating") {

TEST_CASE("zero power: flat trajectory") {
    PulseSimConfig cfg = fig3_config();
    cfg.beam.power = 0.0;
    const HeatingTrajectory traj = evolve_heating(cfg);
    REQUIRE(traj.rows.size() >= 2);
    CHECK(traj.rows.back().photons == 0.0);
    CHECK(traj.rows.back().t_over_tf == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(traj.rows.back().rate == 0.0);
}

TEST_CASE("blocking disabled: photons strictly linear in time") {
    PulseSimConfig cfg = fig3_config();
    cfg.pauli_blocking = false;
    const double r0 =
        rayleigh_rate(cfg.species, cfg.beam.peak_intensity(), cfg.beam.detuning);
    const HeatingTrajectory traj = evolve_heating(cfg);
    for (const auto& row : traj.rows)
        CHECK(row.photons == doctest::Approx(r0 * row.t).epsilon(1e-12));
}

TEST_CASE("trajectory monotonicity and energy bookkeeping") {
    PulseSimConfig cfg = fig3_config();
    const HeatingTrajectory traj = evolve_heating(cfg);
    REQUIRE(traj.rows.size() >= 3);
    CHECK(traj.rows.front().photons == 0.0);
    CHECK(traj.rows.front().t_over_tf == doctest::Approx(0.2).epsilon(1e-12));

    double prev_t = -1.0, prev_phi = -1.0;
    for (const auto& row : traj.rows) {
        CHECK(row.t_over_tf >= prev_t);
        CHECK(row.photons >= prev_phi);
        CHECK(row.rate > 0.0);
        prev_t = row.t_over_tf;
        prev_phi = row.photons;
    }

    // Delta E = N * Phi * heat_per_event along the whole trajectory
    const double tf = fermi_temperature(cfg.trap);
    const double e0 = total_energy_trapped(cfg.trap, 0.2 * tf);
    const double e_end =
        total_energy_trapped(cfg.trap, traj.rows.back().t_over_tf * tf);
    const double expect = cfg.trap.atom_number * traj.rows.back().photons *
                          cfg.resolved_heat_per_event();
    CHECK(e_end - e0 == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("halving the ODE tolerance barely moves the answer") {
    PulseSimConfig cfg = fig3_config();
    const double phi1 = evolve_heating(cfg).rows.back().photons;
    cfg.ode_rel_tol = 0.5e-6;
    const double phi2 = evolve_heating(cfg).rows.back().photons;
    CHECK(phi1 == doctest::Approx(phi2).epsilon(1e-5));
}

TEST_CASE("low-power limit: slope = S0 * dR/dP * t_pulse") {
    PulseSimConfig cfg = fig3_config();
    const std::vector<double> powers = {2e-5, 4e-5};
    const auto rows = photons_vs_power(cfg, powers);
    const double slope_num = (rows[1].photons_per_atom - rows[0].photons_per_atom) /
                             (powers[1] - powers[0]);
    const double tf = fermi_temperature(cfg.trap);
    const double s0 = suppression_trap_angle_averaged(cfg.species, cfg.trap, 0.2 * tf,
                                                      AngleAverage::isotropic);
    ProbeBeam unit = cfg.beam;
    unit.power = 1.0;
    const double dr_dp = rayleigh_rate(cfg.species, unit.peak_intensity(), unit.detuning);
    const double slope_analytic = s0 * dr_dp * cfg.beam.pulse_duration;
    CHECK(slope_num == doctest::Approx(slope_analytic).epsilon(0.02));
    CHECK(slope_analytic < dr_dp * cfg.beam.pulse_duration);  // below unblocked
}

TEST_CASE("power sweep: monotonicity, slopes, intercept") {
    PulseSimConfig cfg = fig3_config();
    const auto powers = log_grid(0.15e-3, 40e-3, 16);
    const auto rows = photons_vs_power(cfg, powers);
    REQUIRE(rows.size() == powers.size());

    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].photons_per_atom > rows[i - 1].photons_per_atom);
        CHECK(rows[i].final_t_over_tf > rows[i - 1].final_t_over_tf);
    }

    const TwoSlopeFit fit = two_slope_analysis(rows, 0.3, 0.3);
    CHECK(fit.slope_low < fit.slope_high);
    CHECK(fit.intercept_high < 0.0);

    // the missing photons cannot exceed the fully blocked deficit
    const double tf = fermi_temperature(cfg.trap);
    const double s0 = suppression_trap_angle_averaged(cfg.species, cfg.trap, 0.2 * tf,
                                                      AngleAverage::isotropic);
    ProbeBeam top = cfg.beam;
    top.power = powers.back();
    const double r_top = rayleigh_rate(cfg.species, top.peak_intensity(), top.detuning);
    CHECK(std::abs(fit.intercept_high) <=
          (1.0 - s0) * r_top * cfg.beam.pulse_duration);
}

TEST_CASE("unblocked control: equal slopes, zero intercept") {
    PulseSimConfig cfg = fig3_config();
    cfg.pauli_blocking = false;
    const auto powers = log_grid(0.15e-3, 40e-3, 16);
    const auto rows = photons_vs_power(cfg, powers);
    const TwoSlopeFit fit = two_slope_analysis(rows, 0.3, 0.3);
    CHECK(fit.slope_low / fit.slope_high == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(fit.intercept_high) <= 1e-8);
}

TEST_CASE("overlap factor feeds back on the rate") {
    PulseSimConfig cfg = fig3_config();
    cfg.beam.power = 10e-3;
    const double phi_plain = evolve_heating(cfg).rows.back().photons;
    cfg.include_overlap = true;
    const double phi_overlap = evolve_heating(cfg).rows.back().photons;
    CHECK(phi_overlap < phi_plain);  // expansion only ever reduces the signal
    CHECK(phi_overlap > 0.0);
}

TEST_CASE("dipole-pattern weighting runs and stays close to isotropic") {
    PulseSimConfig cfg = fig3_config();
    cfg.angle_average = AngleAverage::dipole;
    cfg.beam.power = 5e-3;
    const double phi_dip = evolve_heating(cfg).rows.back().photons;
    cfg.angle_average = AngleAverage::isotropic;
    const double phi_iso = evolve_heating(cfg).rows.back().photons;
    CHECK(phi_dip == doctest::Approx(phi_iso).epsilon(0.05));
}

TEST_CASE("two-slope analysis on synthetic data") {
    SUBCASE("exact line recovered to 1e-12") {
        std::vector<PowerSweepRow> rows;
        for (int i = 0; i < 12; ++i) {
            const double p = 1e-3 * (1 + i);
            rows.push_back({p, 3.0 + 1234.5 * p, 0.3});
        }
        const TwoSlopeFit fit = two_slope_analysis(rows, 0.34, 0.34);
        CHECK(fit.slope_low == doctest::Approx(1234.5).epsilon(1e-12));
        CHECK(fit.slope_high == doctest::Approx(1234.5).epsilon(1e-12));
        CHECK(fit.intercept_high == doctest::Approx(3.0).epsilon(1e-12));
    }

    SUBCASE("degenerate region") {
        std::vector<PowerSweepRow> rows(10, PowerSweepRow{2e-3, 1.0, 0.3});
        CHECK_THROWS_AS(two_slope_analysis(rows, 0.4, 0.4), NumericError);
    }

    SUBCASE("too few points") {
        std::vector<PowerSweepRow> rows;
        for (int i = 0; i < 6; ++i) rows.push_back({1e-3 * (1 + i), 1.0 * i, 0.3});
        CHECK_THROWS_AS(two_slope_analysis(rows, 0.3, 0.3), std::invalid_argument);
    }
}

TEST_CASE("input validation") {
    PulseSimConfig cfg = fig3_config();
    cfg.initial_t_over_tf = -0.1;
    CHECK_THROWS_AS(evolve_heating(cfg), std::domain_error);

    cfg = fig3_config();
    const std::vector<double> bad = {2e-3, 1e-3};
    CHECK_THROWS_AS(photons_vs_power(cfg, bad), std::invalid_argument);
}

}  // TEST_SUITE
