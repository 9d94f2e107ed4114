#include "fermiscatter/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"
#include "fermiscatter/fermi_dirac.hpp"
#include "fermiscatter/numeric/roots.hpp"

namespace fermiscatter {

namespace c = constants;

double TrapConfig::omega_bar() const { return std::cbrt(omega_r * omega_r * omega_z); }

void TrapConfig::validate() const {
    if (!(omega_r > 0) || !(omega_z > 0) || !(atom_number > 0))
        throw std::domain_error("TrapConfig: frequencies and atom number must be positive");
}

double thermal_wavelength(const AtomSpecies& species, double temperature) {
    if (!(temperature > 0)) throw std::domain_error("thermal_wavelength: T must be > 0");
    return c::planck_h / std::sqrt(2.0 * c::pi * species.mass * c::k_boltzmann * temperature);
}

double fermi_temperature(const TrapConfig& trap) {
    trap.validate();
    return c::hbar *
           std::cbrt(trap.omega_r * trap.omega_r * trap.omega_z * 6.0 * trap.atom_number) /
           c::k_boltzmann;
}

double fermi_wavevector(double density) {
    if (!(density > 0)) throw std::domain_error("fermi_wavevector: n must be > 0");
    return std::cbrt(6.0 * c::pi * c::pi * density);
}

double fermi_energy_homogeneous(const AtomSpecies& species, double density) {
    const double kf = fermi_wavevector(density);
    return c::hbar * c::hbar * kf * kf / (2.0 * species.mass);
}

namespace {

// Solve F_j(eta) = target for the strictly increasing F_j. Seed from the
// Boltzmann (target small) or Sommerfeld (target large) limits, grow the
// bracket geometrically, then bisection + secant.
double invert_fd(double j, double target) {
    if (!(target > 0)) throw std::domain_error("invert_fd: target must be > 0");
    double seed;
    if (target < 0.5) {
        seed = std::log(target);
    } else {
        seed = std::pow(target * std::tgamma(j + 2.0), 1.0 / (j + 1.0));
    }
    auto fn = [j, target](double eta) { return fermi_dirac_integral(j, eta) - target; };
    const auto [lo, hi] = num::grow_bracket(fn, seed, 1.0);
    return num::solve_bracketed(fn, lo, hi, 1e-13, 1e-13);
}

}  // namespace

double solve_mu_homogeneous(const AtomSpecies& species, double density,
                            double temperature) {
    if (!(density > 0) || !(temperature > 0))
        throw std::domain_error("solve_mu_homogeneous: need n > 0 and T > 0");
    const double lt = thermal_wavelength(species, temperature);
    const double d = density * lt * lt * lt;
    const double eta = invert_fd(0.5, d);
    return eta * c::k_boltzmann * temperature;
}

double solve_mu_trapped(const TrapConfig& trap, double temperature) {
    trap.validate();
    if (!(temperature > 0)) throw std::domain_error("solve_mu_trapped: T must be > 0");
    const double bho = c::hbar * trap.omega_bar() / (c::k_boltzmann * temperature);
    const double target = trap.atom_number * bho * bho * bho;
    const double eta = invert_fd(2.0, target);
    return eta * c::k_boltzmann * temperature;
}

ThermoState ThermoState::homogeneous(const AtomSpecies& species, double density,
                                     double temperature) {
    species.validate();
    ThermoState s;
    s.species_ = species;
    s.trapped_ = false;
    s.density_ = density;
    s.temperature_ = temperature;
    s.mu_ = solve_mu_homogeneous(species, density, temperature);
    return s;
}

ThermoState ThermoState::trapped(const AtomSpecies& species, const TrapConfig& trap,
                                 double temperature) {
    species.validate();
    ThermoState s;
    s.species_ = species;
    s.trap_ = trap;
    s.trapped_ = true;
    s.temperature_ = temperature;
    s.mu_ = solve_mu_trapped(trap, temperature);
    return s;
}

const TrapConfig& ThermoState::trap() const {
    if (!trapped_) throw std::logic_error("ThermoState: homogeneous state has no trap");
    return trap_;
}

double ThermoState::eta() const { return mu_ / (c::k_boltzmann * temperature_); }

double ThermoState::fugacity() const { return std::exp(eta()); }

double ThermoState::lambda_t() const { return thermal_wavelength(species_, temperature_); }

double ThermoState::density() const {
    if (!trapped_) return density_;
    const double lt = lambda_t();
    return fermi_dirac_integral(0.5, eta()) / (lt * lt * lt);
}

double density_profile(const ThermoState& state, const std::array<double, 3>& position) {
    if (!state.is_trapped())
        throw std::domain_error("density_profile: requires a trapped state");
    const TrapConfig& trap = state.trap();
    const double m = state.species().mass;
    const double v = 0.5 * m *
                     (trap.omega_r * trap.omega_r *
                          (position[0] * position[0] + position[1] * position[1]) +
                      trap.omega_z * trap.omega_z * position[2] * position[2]);
    const double eta_local = state.eta() - v / (c::k_boltzmann * state.temperature());
    const double lt = state.lambda_t();
    return fermi_dirac_integral(0.5, eta_local) / (lt * lt * lt);
}

std::array<double, 3> cloud_rms_widths(const ThermoState& state) {
    if (!state.is_trapped())
        throw std::domain_error("cloud_rms_widths: requires a trapped state");
    const TrapConfig& trap = state.trap();
    const double eta = state.eta();
    const double ratio = fermi_dirac_integral(3.0, eta) / fermi_dirac_integral(2.0, eta);
    const double kt = c::k_boltzmann * state.temperature();
    const double m = state.species().mass;
    auto sigma = [&](double w) { return std::sqrt(kt * ratio / (m * w * w)); };
    return {sigma(trap.omega_r), sigma(trap.omega_r), sigma(trap.omega_z)};
}

double total_energy_trapped(const TrapConfig& trap, double temperature) {
    const double mu = solve_mu_trapped(trap, temperature);
    const double eta = mu / (c::k_boltzmann * temperature);
    const double ratio = fermi_dirac_integral(3.0, eta) / fermi_dirac_integral(2.0, eta);
    return 3.0 * trap.atom_number * c::k_boltzmann * temperature * ratio;
}

double total_energy_trapped(const ThermoState& state) {
    if (!state.is_trapped())
        throw std::domain_error("total_energy_trapped: requires a trapped state");
    const double eta = state.eta();
    const double ratio = fermi_dirac_integral(3.0, eta) / fermi_dirac_integral(2.0, eta);
    return 3.0 * state.trap().atom_number * c::k_boltzmann * state.temperature() * ratio;
}

double invert_energy_to_temperature(const TrapConfig& trap, double energy) {
    trap.validate();
    const double tf = fermi_temperature(trap);
    const double e0 = 0.75 * trap.atom_number * c::k_boltzmann * tf;
    if (energy < e0 * (1.0 - 1e-9))
        throw std::domain_error("invert_energy_to_temperature: E below ground-state energy");

    // E(T) is strictly increasing; bracket between a tiny T and the
    // classical estimate E = 3 N kB T grown upward.
    const double t_lo = 1e-6 * tf;
    if (energy <= total_energy_trapped(trap, t_lo)) return t_lo;
    double t_hi = std::max(tf, energy / (3.0 * trap.atom_number * c::k_boltzmann));
    for (int it = 0; it < 200 && total_energy_trapped(trap, t_hi) < energy; ++it)
        t_hi *= 2.0;
    auto fn = [&](double t) { return total_energy_trapped(trap, t) - energy; };
    return num::solve_bracketed(fn, t_lo, t_hi, 1e-12);
}

double peak_phase_space_density(const ThermoState& state) {
    const double lt = state.lambda_t();
    return state.density() * lt * lt * lt;
}

}  // namespace fermiscatter
