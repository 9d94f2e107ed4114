#pragma once

#include <string>

namespace fermiscatter {

// Atomic constants for a two-level scatterer. All SI; linewidth is the
// angular natural linewidth Gamma.
struct AtomSpecies {
    double mass = 0.0;                      // kg
    double wavelength = 0.0;                // m, resonance
    double linewidth_gamma = 0.0;           // rad/s
    double saturation_intensity = 0.0;      // W/m^2
    double fine_structure_splitting = 0.0;  // Hz

    double wavenumber() const;          // k = 2 pi / wavelength
    double reduced_wavelength() const;  // wavelength / 2 pi
    void validate() const;              // throws std::domain_error
};

// Built-in lithium-6 D2 parameters.
AtomSpecies lithium6();

// Plain-text key=value file with keys
//   mass_amu, wavelength_nm, gamma_MHz, isat_mW_cm2, fs_split_GHz
AtomSpecies load_species_file(const std::string& path);

struct ScatteringGeometry {
    double angle_theta = 0.0;     // rad, incident-to-scattered angle, (0, pi]
    double detuning_delta = 0.0;  // rad/s, signed; negative = red
};

// Photon recoil energy hbar^2 k^2 / 2m at the resonance wavenumber.
double recoil_energy(const AtomSpecies& species);     // J
double recoil_frequency(const AtomSpecies& species);  // Hz, = E_rec / h

// q = 2 k sin(theta/2); throws std::domain_error outside (0, pi].
double momentum_transfer(const AtomSpecies& species, double angle_theta);

// |n alpha| with alpha = 6 pi lambdabar^3 Gamma / (Delta + i Gamma).
double polarizability_parameter(const AtomSpecies& species, double density,
                                double detuning);

// 6 pi n lambdabar^2 l
double resonant_optical_density(const AtomSpecies& species, double density,
                                double length);

// Steady-state two-level scattering rate
//   R = (Gamma/2) s / (1 + s + (2 Delta/Gamma)^2),  s = I / I_sat.
double rayleigh_rate(const AtomSpecies& species, double intensity, double detuning);

}  // namespace fermiscatter
