#include "fermiscatter/species.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"

namespace fermiscatter {

namespace c = constants;

double AtomSpecies::wavenumber() const { return 2.0 * c::pi / wavelength; }

double AtomSpecies::reduced_wavelength() const { return wavelength / (2.0 * c::pi); }

void AtomSpecies::validate() const {
    if (!(mass > 0) || !(wavelength > 0) || !(linewidth_gamma > 0) ||
        !(saturation_intensity > 0) || !(fine_structure_splitting > 0))
        throw std::domain_error("AtomSpecies: all fields must be strictly positive");
}

AtomSpecies lithium6() {
    AtomSpecies s;
    s.mass = 6.0151228874 * c::atomic_mass_unit;
    s.wavelength = 671e-9;
    s.linewidth_gamma = 2.0 * c::pi * 5.87e6;
    s.saturation_intensity = 25.4;  // W/m^2, D2 two-level value
    s.fine_structure_splitting = 10.05e9;
    return s;
}

AtomSpecies load_species_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("species file: cannot open '" + path + "'");
    std::map<std::string, double> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        try {
            std::size_t used = 0;
            const double x = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            kv[key] = x;
        } catch (const std::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + val +
                              "'");
        }
    }
    auto need = [&](const char* key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw ConfigError("species file '" + path + "': missing key '" + key + "'");
        return it->second;
    };
    AtomSpecies s;
    s.mass = need("mass_amu") * c::atomic_mass_unit;
    s.wavelength = need("wavelength_nm") * 1e-9;
    s.linewidth_gamma = 2.0 * c::pi * need("gamma_MHz") * 1e6;
    s.saturation_intensity = need("isat_mW_cm2") * 10.0;  // mW/cm^2 -> W/m^2
    s.fine_structure_splitting = need("fs_split_GHz") * 1e9;
    s.validate();
    return s;
}

double recoil_energy(const AtomSpecies& species) {
    const double k = species.wavenumber();
    return c::hbar * c::hbar * k * k / (2.0 * species.mass);
}

double recoil_frequency(const AtomSpecies& species) {
    return recoil_energy(species) / c::planck_h;
}

double momentum_transfer(const AtomSpecies& species, double angle_theta) {
    if (!(angle_theta > 0.0) || !(angle_theta <= c::pi))
        throw std::domain_error("momentum_transfer: angle must be in (0, pi]");
    return 2.0 * species.wavenumber() * std::sin(0.5 * angle_theta);
}

double polarizability_parameter(const AtomSpecies& species, double density,
                                double detuning) {
    const double lb = species.reduced_wavelength();
    const double g = species.linewidth_gamma;
    const double mod = g / std::hypot(detuning, g);
    return std::abs(density) * 6.0 * c::pi * lb * lb * lb * mod;
}

double resonant_optical_density(const AtomSpecies& species, double density,
                                double length) {
    if (!(density > 0) || !(length >= 0))
        throw std::domain_error("resonant_optical_density: need n > 0, length >= 0");
    const double lb = species.reduced_wavelength();
    return 6.0 * c::pi * density * lb * lb * length;
}

double rayleigh_rate(const AtomSpecies& species, double intensity, double detuning) {
    if (!(intensity >= 0)) throw std::domain_error("rayleigh_rate: intensity must be >= 0");
    const double s = intensity / species.saturation_intensity;
    const double d = 2.0 * detuning / species.linewidth_gamma;
    return 0.5 * species.linewidth_gamma * s / (1.0 + s + d * d);
}

}  // namespace fermiscatter
