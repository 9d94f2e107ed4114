#pragma once

#include <array>

#include "fermiscatter/species.hpp"

namespace fermiscatter {

// Harmonic trap: two degenerate radial axes (omega_r) and one axial (omega_z).
struct TrapConfig {
    double omega_r = 0.0;      // rad/s
    double omega_z = 0.0;      // rad/s
    double atom_number = 0.0;  // N

    double omega_bar() const;  // (omega_r^2 omega_z)^{1/3}
    void validate() const;
};

// Lambda_t = h / sqrt(2 pi m kB T)
double thermal_wavelength(const AtomSpecies& species, double temperature);

// T_F = hbar (omega_r^2 omega_z 6N)^{1/3} / kB
double fermi_temperature(const TrapConfig& trap);

// Spin-polarized homogeneous gas: E_F = hbar^2 (6 pi^2 n)^{2/3} / 2m.
double fermi_energy_homogeneous(const AtomSpecies& species, double density);
double fermi_wavevector(double density);  // (6 pi^2 n)^{1/3}

// Chemical potential from n Lambda_t^3 = -Li_{3/2}(-z); residual <= 1e-10.
double solve_mu_homogeneous(const AtomSpecies& species, double density,
                            double temperature);

// Global mu0 from N = (kB T / hbar omega_bar)^3 * [-Li_3(-e^{beta mu0})].
double solve_mu_trapped(const TrapConfig& trap, double temperature);

// Equilibrium state of the ideal Fermi gas, homogeneous or trapped. The
// chemical potential is solved at construction; instances are immutable.
class ThermoState {
  public:
    static ThermoState homogeneous(const AtomSpecies& species, double density,
                                   double temperature);
    static ThermoState trapped(const AtomSpecies& species, const TrapConfig& trap,
                               double temperature);

    bool is_trapped() const { return trapped_; }
    const AtomSpecies& species() const { return species_; }
    const TrapConfig& trap() const;
    double temperature() const { return temperature_; }
    double chemical_potential() const { return mu_; }
    double eta() const;       // mu / (kB T)
    double fugacity() const;  // exp(eta)
    double lambda_t() const;
    // Homogeneous density, or the trap-center density for a trapped state.
    double density() const;

  private:
    ThermoState() = default;
    AtomSpecies species_;
    TrapConfig trap_{};
    bool trapped_ = false;
    double density_ = 0.0;  // homogeneous only
    double temperature_ = 0.0;
    double mu_ = 0.0;
};

// Local density approximation n(r) with V(r) harmonic from the trap.
double density_profile(const ThermoState& state, const std::array<double, 3>& position);

// rms widths (sigma_x, sigma_y, sigma_z); <x_i^2> = kB T/(m w_i^2) * Li4/Li3 ratio.
std::array<double, 3> cloud_rms_widths(const ThermoState& state);

// E = 3 N kB T * Li4(-z)/Li3(-z)
double total_energy_trapped(const ThermoState& state);
double total_energy_trapped(const TrapConfig& trap, double temperature);

// Inverse of total_energy_trapped at fixed trap; relative residual <= 1e-8.
// Throws std::domain_error below the ground-state energy (3/4) N kB T_F.
double invert_energy_to_temperature(const TrapConfig& trap, double energy);

// D = n Lambda_t^3 (trap-center value for trapped states).
double peak_phase_space_density(const ThermoState& state);

}  // namespace fermiscatter
