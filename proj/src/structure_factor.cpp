#include "fermiscatter/structure_factor.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"
#include "fermiscatter/numeric/quadrature.hpp"

namespace fermiscatter {

namespace c = constants;

double pair_correlation_boltzmann(double r, double lambda_t, Statistics statistics) {
    if (!(r >= 0) || !(lambda_t > 0))
        throw std::domain_error("pair_correlation_boltzmann: need r >= 0, Lambda_t > 0");
    const double g = std::exp(-2.0 * c::pi * r * r / (lambda_t * lambda_t));
    return statistics == Statistics::fermion ? 1.0 - g : 1.0 + g;
}

double s_q_gaussian(double q, double phase_space_density, double lambda_t,
                    Statistics statistics) {
    if (!(phase_space_density >= 0))
        throw std::domain_error("s_q_gaussian: D must be >= 0");
    const double term = phase_space_density *
                        std::exp(-q * q * lambda_t * lambda_t / (8.0 * c::pi)) /
                        (2.0 * std::sqrt(2.0));
    return statistics == Statistics::fermion ? 1.0 - term : 1.0 + term;
}

double beta_zero_temperature(double q, double k_fermi) {
    if (!(k_fermi > 0)) throw std::domain_error("beta_zero_temperature: k_F must be > 0");
    if (!(q >= 0)) throw std::domain_error("beta_zero_temperature: q must be >= 0");
    const double x = q / (2.0 * k_fermi);
    if (x >= 1.0) return 1.0;
    return 1.5 * x - 0.5 * x * x * x;
}

namespace {

inline double fermi_occ(double t, double eta) {
    // 1/(exp(t-eta)+1); exp overflow saturates to +inf -> 0, which is exact
    return 1.0 / (std::exp(t - eta) + 1.0);
}

inline double softplus(double x) {
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Angular average of f over the directions of k + q at fixed |k| = u
// (thermal units, energies t = u^2):
//   <f>(u) = 1/(4 u qt) * int_{(u-qt)^2}^{(u+qt)^2} f(t) dt
//          = 1/(4 u qt) * [ln(1+e^{eta-(u-qt)^2}) - ln(1+e^{eta-(u+qt)^2})].
// For 4 u qt small the integral is Taylor-expanded about its midpoint to
// avoid cancellation; the qt = 0 limit is exactly f(u^2).
inline double fermi_occ_angle_avg(double u, double qt, double eta) {
    if (u * qt < 1e-4) {
        const double tbar = u * u + qt * qt;
        const double f = fermi_occ(tbar, eta);
        return f + (2.0 / 3.0) * u * u * qt * qt * f * (1.0 - f) * (1.0 - 2.0 * f);
    }
    const double a = eta - (u - qt) * (u - qt);
    const double b = eta - (u + qt) * (u + qt);
    return (softplus(a) - softplus(b)) / (4.0 * u * qt);
}

}  // namespace

double beta_kernel(double q_thermal, double eta, double rel_tol) {
    if (!(q_thermal >= 0)) throw std::domain_error("beta_kernel: q must be >= 0");
    const double umax = std::sqrt(std::max(eta, 0.0) + 45.0);
    const double qt = q_thermal;
    const double num = num::integrate(
        [qt, eta](double u) {
            return u * u * fermi_occ(u * u, eta) * fermi_occ_angle_avg(u, qt, eta);
        },
        0.0, umax, 0.1 * rel_tol);
    const double den = num::integrate(
        [eta](double u) { return u * u * fermi_occ(u * u, eta); }, 0.0, umax,
        0.1 * rel_tol);
    return 1.0 - num / den;
}

double beta_kernel_direct2d(double q_thermal, double eta, double rel_tol) {
    const double umax = std::sqrt(std::max(eta, 0.0) + 45.0);
    const double qt = q_thermal;
    const double num = num::integrate(
        [qt, eta, rel_tol](double u) {
            const double inner = num::integrate(
                [u, qt, eta](double mu) {
                    return fermi_occ(u * u + qt * qt + 2.0 * u * qt * mu, eta);
                },
                -1.0, 1.0, 0.03 * rel_tol, 1e-14);
            return u * u * fermi_occ(u * u, eta) * 0.5 * inner;
        },
        0.0, umax, 0.1 * rel_tol);
    const double den = num::integrate(
        [eta](double u) { return u * u * fermi_occ(u * u, eta); }, 0.0, umax,
        0.1 * rel_tol);
    return 1.0 - num / den;
}

double beta_homogeneous(double q, const ThermoState& state) {
    if (state.is_trapped())
        throw std::domain_error("beta_homogeneous: requires a homogeneous state");
    if (!(q >= 0)) throw std::domain_error("beta_homogeneous: q must be >= 0");
    const double m = state.species().mass;
    const double qt = c::hbar * q /
                      std::sqrt(2.0 * m * c::k_boltzmann * state.temperature());
    return beta_kernel(qt, state.eta(), 1e-8);
}

double beta_lattice_oracle(double q, const ThermoState& state, int grid_points,
                           double cutoff, const LatticeOracleOptions& options) {
    if (state.is_trapped())
        throw std::domain_error("beta_lattice_oracle: requires a homogeneous state");
    if (grid_points < 32)
        throw std::invalid_argument("beta_lattice_oracle: grid_points must be >= 32");
    if (!(cutoff >= 4.0))
        throw std::invalid_argument("beta_lattice_oracle: cutoff must be >= 4");
    const std::size_t g = static_cast<std::size_t>(grid_points);
    if (g * g * g > options.point_budget)
        throw std::invalid_argument("beta_lattice_oracle: grid_points^3 exceeds budget");

    const double m = state.species().mass;
    const double kt_scale = std::sqrt(2.0 * m * c::k_boltzmann * state.temperature()) /
                            c::hbar;  // thermal wavevector
    const double kf = fermi_wavevector(state.density());
    const double kmax = cutoff * std::max(kf, kt_scale);
    const double h = 2.0 * kmax / grid_points;
    const double eta = state.eta();
    const double esc = 1.0 / (kt_scale * kt_scale);  // (hbar k)^2/(2 m kB T) = esc * k^2

    std::vector<double> axis(g);
    for (std::size_t i = 0; i < g; ++i) axis[i] = -kmax + (i + 0.5) * h;

    double occ_sum = 0.0;
    double blocked_sum = 0.0;
    for (std::size_t ix = 0; ix < g; ++ix) {
        const double kx2 = axis[ix] * axis[ix];
        for (std::size_t iy = 0; iy < g; ++iy) {
            const double rho2 = kx2 + axis[iy] * axis[iy];
            for (std::size_t iz = 0; iz < g; ++iz) {
                const double kz = axis[iz];
                const double f = fermi_occ(esc * (rho2 + kz * kz), eta);
                const double kzq = kz + q;
                const double f2 = fermi_occ(esc * (rho2 + kzq * kzq), eta);
                occ_sum += f;
                blocked_sum += f * (1.0 - f2);
            }
        }
    }
    if (!(occ_sum > 0)) throw NumericError("beta_lattice_oracle: empty occupation sum");
    return blocked_sum / occ_sum;
}

}  // namespace fermiscatter
