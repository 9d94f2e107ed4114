#include "fermiscatter/heating.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"
#include "fermiscatter/numeric/interp.hpp"
#include "fermiscatter/numeric/ode.hpp"

namespace fermiscatter {

namespace c = constants;

double PulseSimConfig::resolved_heat_per_event() const {
    if (heat_per_event) return *heat_per_event;
    return 2.0 * recoil_energy(species);
}

void PulseSimConfig::validate() const {
    species.validate();
    trap.validate();
    beam.validate();
    if (!(initial_t_over_tf > 0))
        throw std::domain_error("PulseSimConfig: initial T/T_F must be > 0");
    if (!(resolved_heat_per_event() >= 0))
        throw std::domain_error("PulseSimConfig: heat_per_event must be >= 0");
    if (suppression_table_points < 8)
        throw std::domain_error("PulseSimConfig: suppression table needs >= 8 points");
}

namespace {

// beta_bar(T) sampled on a log-spaced temperature grid covering the whole
// trajectory, then monotone-cubic interpolated. The table is the one
// expensive object of a sweep; it depends on everything except the power.
num::MonotoneCubic build_suppression_table(const PulseSimConfig& cfg, double t_low,
                                           double t_high) {
    const int n = cfg.suppression_table_points;
    std::vector<double> lt(n), sb(n);
    const double l0 = std::log(t_low), l1 = std::log(t_high);
    for (int i = 0; i < n; ++i) {
        lt[i] = l0 + (l1 - l0) * i / (n - 1);
        sb[i] = suppression_trap_angle_averaged(cfg.species, cfg.trap, std::exp(lt[i]),
                                                cfg.angle_average);
    }
    return num::MonotoneCubic(std::move(lt), std::move(sb));
}

struct HeatingModel {
    const PulseSimConfig& cfg;
    double rate0;                  // unblocked peak Rayleigh rate, photons/s
    double heat;                   // J per event
    double n_atoms;
    num::MonotoneCubic beta_bar;   // empty when blocking disabled

    double suppression(double temperature) const {
        if (beta_bar.empty()) return 1.0;
        return std::clamp(beta_bar(std::log(temperature)), 0.0, 1.0);
    }

    double rate_at(double temperature) const {
        double r = rate0 * suppression(temperature);
        if (cfg.include_overlap) {
            const auto state = ThermoState::trapped(cfg.species, cfg.trap, temperature);
            r *= beam_overlap_factor(state, cfg.beam);
        }
        return r;
    }
};

}  // namespace

HeatingTrajectory evolve_heating(const PulseSimConfig& config) {
    config.validate();
    const double tf = fermi_temperature(config.trap);
    const double t0 = config.initial_t_over_tf * tf;
    const double e0 = total_energy_trapped(config.trap, t0);
    const double n_atoms = config.trap.atom_number;
    const double heat = config.resolved_heat_per_event();
    const double rate0 =
        rayleigh_rate(config.species, config.beam.peak_intensity(), config.beam.detuning);
    const double pulse = config.beam.pulse_duration;

    HeatingTrajectory traj;
    if (rate0 <= 0.0) {
        traj.rows.push_back({0.0, config.initial_t_over_tf, 0.0, 0.0});
        traj.rows.push_back({pulse, config.initial_t_over_tf, 0.0, 0.0});
        return traj;
    }

    HeatingModel model{config, rate0, heat, n_atoms, {}};
    if (config.pauli_blocking) {
        const double e_upper = e0 + n_atoms * rate0 * heat * pulse;  // beta, overlap <= 1
        const double t_upper = invert_energy_to_temperature(config.trap, e_upper);
        model.beta_bar =
            build_suppression_table(config, 0.995 * t0, std::max(1.05 * t_upper, 1.01 * t0));
    }

    std::array<double, 2> y = {e0, 0.0};  // total energy, photons per atom
    num::OdeOptions opt;
    opt.rel_tol = config.ode_rel_tol;
    opt.abs_tol = 0.0;
    auto rhs = [&](double, const std::array<double, 2>& yy, std::array<double, 2>& dy) {
        const double temp = invert_energy_to_temperature(config.trap, yy[0]);
        const double r = model.rate_at(temp);
        dy[0] = n_atoms * heat * r;
        dy[1] = r;
    };
    auto observe = [&](double t, const std::array<double, 2>& yy) {
        const double temp = invert_energy_to_temperature(config.trap, yy[0]);
        traj.rows.push_back({t, temp / tf, yy[1], model.rate_at(temp)});
    };
    num::integrate_ode<2>(rhs, y, 0.0, pulse, opt, observe);
    return traj;
}

std::vector<PowerSweepRow> photons_vs_power(const PulseSimConfig& config,
                                            std::span<const double> powers) {
    config.validate();
    if (powers.empty()) throw std::invalid_argument("photons_vs_power: empty power grid");
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!(powers[i] > 0))
            throw std::invalid_argument("photons_vs_power: powers must be positive");
        if (i > 0 && !(powers[i] > powers[i - 1]))
            throw std::invalid_argument("photons_vs_power: powers must be ascending");
    }

    // Share one suppression table across the sweep: run the top power first
    // (its trajectory spans the largest temperature range), reusing the
    // table object built inside evolve_heating would couple the rows, so we
    // simply fix the table range from the top power here.
    std::vector<PowerSweepRow> rows;
    rows.reserve(powers.size());
    const double tf = fermi_temperature(config.trap);

    PulseSimConfig cfg = config;
    num::MonotoneCubic shared_table;
    if (config.pauli_blocking) {
        const double t0 = config.initial_t_over_tf * tf;
        const double e0 = total_energy_trapped(config.trap, t0);
        const double heat = config.resolved_heat_per_event();
        ProbeBeam top = config.beam;
        top.power = powers.back();
        const double rate_top =
            rayleigh_rate(config.species, top.peak_intensity(), top.detuning);
        const double e_upper =
            e0 + config.trap.atom_number * rate_top * heat * config.beam.pulse_duration;
        const double t_upper = invert_energy_to_temperature(config.trap, e_upper);
        shared_table = build_suppression_table(config, 0.995 * t0,
                                               std::max(1.05 * t_upper, 1.01 * t0));
    }

    for (const double p : powers) {
        cfg.beam.power = p;
        const double heat = cfg.resolved_heat_per_event();
        const double rate0 =
            rayleigh_rate(cfg.species, cfg.beam.peak_intensity(), cfg.beam.detuning);
        const double t0 = cfg.initial_t_over_tf * tf;
        const double e0 = total_energy_trapped(cfg.trap, t0);

        if (rate0 <= 0.0) {
            rows.push_back({p, 0.0, cfg.initial_t_over_tf});
            continue;
        }
        HeatingModel model{cfg, rate0, heat, cfg.trap.atom_number, shared_table};
        std::array<double, 2> y = {e0, 0.0};
        num::OdeOptions opt;
        opt.rel_tol = cfg.ode_rel_tol;
        auto rhs = [&](double, const std::array<double, 2>& yy, std::array<double, 2>& dy) {
            const double temp = invert_energy_to_temperature(cfg.trap, yy[0]);
            const double r = model.rate_at(temp);
            dy[0] = cfg.trap.atom_number * heat * r;
            dy[1] = r;
        };
        num::integrate_ode<2>(rhs, y, 0.0, cfg.beam.pulse_duration, opt,
                              [](double, const std::array<double, 2>&) {});
        const double t_final = invert_energy_to_temperature(cfg.trap, y[0]);
        rows.push_back({p, y[1], t_final / tf});
    }
    return rows;
}

namespace {

struct Line {
    double slope, intercept;
};

Line ols_line(std::span<const PowerSweepRow> rows, std::size_t begin, std::size_t count) {
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = begin; i < begin + count; ++i) {
        sx += rows[i].power;
        sy += rows[i].photons_per_atom;
    }
    const double mx = sx / count, my = sy / count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = begin; i < begin + count; ++i) {
        const double dx = rows[i].power - mx;
        sxx += dx * dx;
        sxy += dx * (rows[i].photons_per_atom - my);
    }
    if (!(sxx > 0)) throw NumericError("two_slope_analysis: degenerate power region");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

}  // namespace

TwoSlopeFit two_slope_analysis(std::span<const PowerSweepRow> rows, double low_fraction,
                               double high_fraction) {
    const std::size_t n = rows.size();
    const auto region = [n](double frac) {
        return static_cast<std::size_t>(std::lround(frac * static_cast<double>(n)));
    };
    const std::size_t n_low = region(low_fraction);
    const std::size_t n_high = region(high_fraction);
    if (n_low < 4 || n_high < 4 || n_low + n_high > n)
        throw std::invalid_argument(
            "two_slope_analysis: need >= 4 points in each region and non-overlapping "
            "regions");
    const Line low = ols_line(rows, 0, n_low);
    const Line high = ols_line(rows, n - n_high, n_high);
    return {low.slope, low.intercept, high.slope, high.intercept};
}

}  // namespace fermiscatter
