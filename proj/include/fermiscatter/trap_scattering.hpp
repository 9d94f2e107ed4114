#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fermiscatter/thermo.hpp"

namespace fermiscatter {

struct ProbeBeam {
    double waist = 0.0;           // m, 1/e^2 intensity radius
    double power = 0.0;           // W
    double detuning = 0.0;        // rad/s, signed
    double pulse_duration = 0.0;  // s

    double peak_intensity() const;  // 2 P / (pi w^2), W/m^2
    void validate() const;
};

// Detection-aperture averaging over the collection cone (off by default:
// point aperture at the nominal q).
struct ApertureOptions {
    bool average = false;
    double numerical_aperture = 0.27;
    int polar_points = 6;
    int azimuthal_points = 8;
};

// LDA trap average of the homogeneous suppression factor at fixed momentum
// transfer q:
//   S_trap(q, T) = int d3r n(r) beta(q; mu0 - V(r), T) / int d3r n(r).
// With aperture averaging on, q is additionally averaged over the detection
// cone of half-angle asin(NA) centered on the 90-degree direction.
double suppression_trap_averaged(const AtomSpecies& species, const TrapConfig& trap,
                                 double temperature, double q,
                                 const ApertureOptions& aperture = {});

// Trap average of a caller-supplied homogeneous kernel evaluated at the
// local eta; the building block for angle and aperture averages.
double suppression_trap_kernel_average(const TrapConfig& trap, double temperature,
                                       const std::function<double(double)>& kernel);

enum class AngleAverage { isotropic, dipole };

// Trap suppression averaged over photon emission directions, weighting
// q(theta) = 2 k sin(theta/2) isotropically or with the dipole pattern
// (3/8)(1 + cos^2 theta). Governs the total (angle-integrated) scattering
// rate that drives recoil heating.
double suppression_trap_angle_averaged(const AtomSpecies& species, const TrapConfig& trap,
                                       double temperature, AngleAverage weighting);

// Gaussian-beam / Gaussian-cloud overlap of the two cloud axes transverse to
// the beam (one radial, one axial; the beam propagates perpendicular to the
// trap's long axis):
//   prod_i 1 / sqrt(1 + 4 sigma_i^2 / w^2),  normalized to 1 for sigma -> 0.
double beam_overlap_factor(const ThermoState& state, const ProbeBeam& beam);

struct SuppressionCurve {
    struct Row {
        double t_over_tf;
        double suppression;
        double overlap;
        double product;
    };
    std::vector<Row> rows;
};

// Suppression, beam overlap and their product over a reduced-temperature
// grid (strictly increasing, positive).
SuppressionCurve detected_signal_curve(const AtomSpecies& species, const TrapConfig& trap,
                                       const ProbeBeam& beam, double q,
                                       std::span<const double> t_over_tf_grid,
                                       const ApertureOptions& aperture = {});

}  // namespace fermiscatter
