#include "fermiscatter/trap_scattering.hpp"

#include <cmath>
#include <stdexcept>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/fermi_dirac.hpp"
#include "fermiscatter/numeric/gauss.hpp"
#include "fermiscatter/numeric/quadrature.hpp"
#include "fermiscatter/structure_factor.hpp"

namespace fermiscatter {

namespace c = constants;

double ProbeBeam::peak_intensity() const { return 2.0 * power / (c::pi * waist * waist); }

void ProbeBeam::validate() const {
    if (!(waist > 0) || !(pulse_duration > 0))
        throw std::domain_error("ProbeBeam: waist and pulse duration must be positive");
    if (!(power >= 0)) throw std::domain_error("ProbeBeam: power must be >= 0");
}

double suppression_trap_kernel_average(const TrapConfig& trap, double temperature,
                                       const std::function<double(double)>& kernel) {
    const double mu0 = solve_mu_trapped(trap, temperature);
    const double eta0 = mu0 / (c::k_boltzmann * temperature);

    // Shell decomposition of the harmonic trap: with w = beta*V(r) the
    // ellipsoidal shell volume is proportional to sqrt(w) dw, so
    //   S = int sqrt(w) F_{1/2}(eta0-w) beta(eta0-w) dw / (same without beta).
    // Substituting w = v^2 removes the sqrt kink at the origin.
    const double wmax = std::max(eta0, 0.0) + 45.0;
    const double vmax = std::sqrt(wmax);
    const double num = num::integrate(
        [&](double v) {
            const double eta_local = eta0 - v * v;
            return 2.0 * v * v * fermi_dirac_integral(0.5, eta_local) * kernel(eta_local);
        },
        0.0, vmax, 1e-6);
    const double den = num::integrate(
        [&](double v) { return 2.0 * v * v * fermi_dirac_integral(0.5, eta0 - v * v); },
        0.0, vmax, 1e-8);
    return num / den;
}

namespace {

double thermal_q(const AtomSpecies& species, double temperature, double q) {
    return c::hbar * q /
           std::sqrt(2.0 * species.mass * c::k_boltzmann * temperature);
}

double suppression_fixed_q(const AtomSpecies& species, const TrapConfig& trap,
                           double temperature, double q) {
    const double qt = thermal_q(species, temperature, q);
    return suppression_trap_kernel_average(
        trap, temperature, [qt](double eta) { return beta_kernel(qt, eta, 1e-8); });
}

}  // namespace

double suppression_trap_averaged(const AtomSpecies& species, const TrapConfig& trap,
                                 double temperature, double q,
                                 const ApertureOptions& aperture) {
    species.validate();
    trap.validate();
    if (!(temperature > 0) || !(q >= 0))
        throw std::domain_error("suppression_trap_averaged: need T > 0, q >= 0");
    if (!aperture.average) return suppression_fixed_q(species, trap, temperature, q);

    // Average the detected q over the collection cone around the nominal
    // direction. With the incident axis x and detection axis y,
    // cos(theta_scatter) = sin(psi) cos(phi) for a ray at polar angle psi
    // from the detection axis, so q = k sqrt(2 (1 - sin(psi) cos(phi))).
    const double k = species.wavenumber();
    const double alpha = std::asin(aperture.numerical_aperture);
    const auto [xc, wc] = num::gauss_legendre(aperture.polar_points);
    const auto [xp, wp] = num::gauss_legendre(aperture.azimuthal_points);
    const double c0 = std::cos(alpha);

    double total = 0.0, weight = 0.0;
    for (int i = 0; i < aperture.polar_points; ++i) {
        const double cospsi = 0.5 * (1.0 + c0) + 0.5 * (1.0 - c0) * xc[i];
        const double sinpsi = std::sqrt(std::max(0.0, 1.0 - cospsi * cospsi));
        const double wpsi = wc[i] * 0.5 * (1.0 - c0);  // solid-angle measure d(cos psi)
        for (int jj = 0; jj < aperture.azimuthal_points; ++jj) {
            // phi in [0, pi]; the [pi, 2 pi] half contributes identically
            const double phi = 0.5 * c::pi * (1.0 + xp[jj]);
            const double wphi = wp[jj] * 0.5;
            const double qeff = k * std::sqrt(2.0 * (1.0 - sinpsi * std::cos(phi)));
            const double w = wpsi * wphi;
            total += w * suppression_fixed_q(species, trap, temperature, qeff);
            weight += w;
        }
    }
    return total / weight;
}

double suppression_trap_angle_averaged(const AtomSpecies& species, const TrapConfig& trap,
                                       double temperature, AngleAverage weighting) {
    species.validate();
    trap.validate();
    const double erec_over_kt =
        (c::hbar * c::hbar * species.wavenumber() * species.wavenumber() /
         (2.0 * species.mass)) /
        (c::k_boltzmann * temperature);

    // q(theta)^2 = 4 k^2 sin^2(theta/2) => (hbar q)^2/(2m kB T) = 2 E_rec (1-c)/kB T
    static const auto gl = num::gauss_legendre(16);
    const auto& [nodes, weights] = gl;
    std::vector<double> qts(nodes.size()), ws(nodes.size());
    double wsum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double cth = nodes[i];
        qts[i] = std::sqrt(2.0 * erec_over_kt * (1.0 - cth));
        ws[i] = weights[i] * (weighting == AngleAverage::dipole
                                  ? (3.0 / 8.0) * (1.0 + cth * cth)
                                  : 0.5);
        wsum += ws[i];
    }
    for (auto& w : ws) w /= wsum;

    return suppression_trap_kernel_average(trap, temperature, [&](double eta) {
        double acc = 0.0;
        for (std::size_t i = 0; i < qts.size(); ++i)
            acc += ws[i] * beta_kernel(qts[i], eta, 1e-7);
        return acc;
    });
}

double beam_overlap_factor(const ThermoState& state, const ProbeBeam& beam) {
    beam.validate();
    const auto sigma = cloud_rms_widths(state);
    const double w2 = beam.waist * beam.waist;
    // transverse axes: one radial (x) and the axial (z)
    const double fx = 1.0 / std::sqrt(1.0 + 4.0 * sigma[0] * sigma[0] / w2);
    const double fz = 1.0 / std::sqrt(1.0 + 4.0 * sigma[2] * sigma[2] / w2);
    return fx * fz;
}

SuppressionCurve detected_signal_curve(const AtomSpecies& species, const TrapConfig& trap,
                                       const ProbeBeam& beam, double q,
                                       std::span<const double> t_over_tf_grid,
                                       const ApertureOptions& aperture) {
    if (t_over_tf_grid.empty())
        throw std::invalid_argument("detected_signal_curve: empty grid");
    for (std::size_t i = 0; i < t_over_tf_grid.size(); ++i) {
        if (!(t_over_tf_grid[i] > 0))
            throw std::invalid_argument("detected_signal_curve: grid must be positive");
        if (i > 0 && !(t_over_tf_grid[i] > t_over_tf_grid[i - 1]))
            throw std::invalid_argument(
                "detected_signal_curve: grid must be strictly increasing");
    }
    const double tf = fermi_temperature(trap);
    SuppressionCurve curve;
    curve.rows.reserve(t_over_tf_grid.size());
    for (const double t : t_over_tf_grid) {
        const double temp = t * tf;
        const double s = suppression_trap_averaged(species, trap, temp, q, aperture);
        const double ov =
            beam_overlap_factor(ThermoState::trapped(species, trap, temp), beam);
        curve.rows.push_back({t, s, ov, s * ov});
    }
    return curve;
}

}  // namespace fermiscatter
