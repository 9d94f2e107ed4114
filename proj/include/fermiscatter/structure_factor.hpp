#pragma once

#include <cstddef>

#include "fermiscatter/thermo.hpp"

namespace fermiscatter {

enum class Statistics { fermion, boson };

// Boltzmann-limit pair correlation g(r) = 1 -/+ exp(-2 pi r^2 / Lambda_t^2)
// (minus for fermions, plus for bosons).
double pair_correlation_boltzmann(double r, double lambda_t, Statistics statistics);

// Gaussian-ansatz structure factor
//   S(q) = 1 -/+ D exp(-q^2 Lambda_t^2 / 8 pi) / 2^{3/2}
// valid for phase space density D well below 1.
double s_q_gaussian(double q, double phase_space_density, double lambda_t,
                    Statistics statistics);

// Zero-temperature S(q) of the ideal Fermi gas: with x = q / 2 k_F,
//   (3/2) x - (1/2) x^3 for x <= 1, else 1.
double beta_zero_temperature(double q, double k_fermi);

// Pauli suppression factor of the homogeneous ideal Fermi gas,
//   beta(q) = int d3k f(k) (1 - f(k+q)) / int d3k f(k),
// which equals the static structure factor S(q): the final-state blocking
// average and the density-fluctuation sum rule coincide for the ideal gas.
// Dimensionless arguments: q_thermal = hbar q / sqrt(2 m kB T) and
// eta = mu/(kB T). The angular integral over k+q is done in closed form
// (log(1+e^x)), leaving one adaptive quadrature.
double beta_kernel(double q_thermal, double eta, double rel_tol = 1e-9);

// Same quantity by direct nested (k, cos-theta) quadrature; retained as an
// independent cross-check of the reduced kernel.
double beta_kernel_direct2d(double q_thermal, double eta, double rel_tol = 1e-7);

// beta(q) for a solved homogeneous state (alias: static structure factor).
double beta_homogeneous(double q, const ThermoState& state);
inline double static_structure_factor(double q, const ThermoState& state) {
    return beta_homogeneous(q, state);
}

// Brute-force oracle: Riemann sum of f(k)(1 - f(k+q)) / f(k) on a cubic
// momentum lattice with grid_points per axis spanning
// [-K, K], K = cutoff * max(k_F, k_thermal). First-order convergent in the
// grid spacing at low T (Fermi-surface discontinuity).
struct LatticeOracleOptions {
    std::size_t point_budget = std::size_t(1) << 28;  // max grid_points^3
};
double beta_lattice_oracle(double q, const ThermoState& state, int grid_points,
                           double cutoff, const LatticeOracleOptions& options = {});

}  // namespace fermiscatter
