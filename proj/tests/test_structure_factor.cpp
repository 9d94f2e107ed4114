#include <doctest.h>

#include <cmath>

#include "fermiscatter/constants.hpp"
#include "fermiscatter/structure_factor.hpp"
#include "oracles.hpp"

using namespace fermiscatter;
namespace c = fermiscatter::constants;

namespace {

// homogeneous state with a given T/T_F: beta depends only on (q/k_thermal, eta)
ThermoState state_at(double t_over_tf, double density = 1e19) {
    const AtomSpecies li = lithium6();
    const double tf = fermi_energy_homogeneous(li, density) / c::k_boltzmann;
    return ThermoState::homogeneous(li, density, t_over_tf * tf);
}

double q_of_x(const ThermoState& s, double x) {
    return 2.0 * x * fermi_wavevector(s.density());
}

}  // namespace

TEST_SUITE("structure_factor") {

TEST_CASE("Boltzmann pair correlation") {
    CHECK(pair_correlation_boltzmann(0.0, 1e-6, Statistics::fermion) == 0.0);
    CHECK(pair_correlation_boltzmann(0.0, 1e-6, Statistics::boson) == 2.0);
    CHECK(pair_correlation_boltzmann(1e-6, 1e-6, Statistics::fermion) ==
          doctest::Approx(1.0 - std::exp(-2.0 * c::pi)).epsilon(1e-12));
}

TEST_CASE("Gaussian-ansatz S(q)") {
    const double lt = 0.5e-6, d = 0.3;
    CHECK(s_q_gaussian(1e9, d, lt, Statistics::fermion) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(s_q_gaussian(0.0, d, lt, Statistics::fermion) ==
          doctest::Approx(1.0 - d / std::pow(2.0, 1.5)).epsilon(1e-12));

    // Fourier transform of the pair correlation reproduces the formula
    for (const double qlt : {0.0, 0.7, 2.0, 5.0}) {
        const double q = qlt / lt;
        CHECK(s_q_gaussian(q, d, lt, Statistics::fermion) ==
              doctest::Approx(oracles::sq_from_pair_correlation(q, d, lt, true))
                  .epsilon(1e-6));
        CHECK(s_q_gaussian(q, d, lt, Statistics::boson) ==
              doctest::Approx(oracles::sq_from_pair_correlation(q, d, lt, false))
                  .epsilon(1e-6));
    }

    // sign structure
    for (double qlt = 0.0; qlt <= 10.0; qlt += 0.5) {
        CHECK(s_q_gaussian(qlt / lt, d, lt, Statistics::fermion) <= 1.0);
        CHECK(s_q_gaussian(qlt / lt, d, lt, Statistics::boson) >= 1.0);
    }
}

TEST_CASE("zero-temperature closed form") {
    const double kf = 1e7;
    CHECK(beta_zero_temperature(0.0, kf) == 0.0);
    CHECK(beta_zero_temperature(2.0 * kf, kf) == 1.0);
    CHECK(beta_zero_temperature(kf, kf) == doctest::Approx(0.6875).epsilon(1e-14));
    CHECK(beta_zero_temperature(3.0 * kf, kf) == 1.0);
}

TEST_CASE("beta kernel reference values") {
    // frozen from an independent high-precision evaluation of the reduced
    // integral (25-digit arithmetic)
    CHECK(beta_kernel(0.70689, 4.345143034419506) ==
          doctest::Approx(0.386502330126).epsilon(1e-6));
    CHECK(beta_kernel(1.0, 0.0) == doctest::Approx(0.860075194266).epsilon(1e-6));
    CHECK(beta_kernel(0.5, -2.2672791068878033) ==
          doctest::Approx(0.969817949374).epsilon(1e-6));
    CHECK(beta_kernel(2.0, 10.0) == doctest::Approx(0.472147095256).epsilon(1e-6));
}

TEST_CASE("matches the zero-T structure factor at T/T_F = 1e-3") {
    const auto s = state_at(1e-3);
    const double kf = fermi_wavevector(s.density());
    for (const double x : {0.1, 0.3, 0.5, 0.8, 1.0}) {
        const double expect = beta_zero_temperature(2.0 * x * kf, kf);
        CHECK(beta_homogeneous(q_of_x(s, x), s) ==
              doctest::Approx(expect).epsilon(0.005));
    }
    CHECK(beta_homogeneous(q_of_x(s, 1.5), s) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("classical limit") {
    const auto s = state_at(10.0);
    CHECK(beta_homogeneous(fermi_wavevector(s.density()), s) ==
          doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("Gaussian approximation agrees at D = 0.1") {
    const AtomSpecies li = lithium6();
    const double temp = 1e-6;
    const double lt = thermal_wavelength(li, temp);
    const double n = 0.1 / (lt * lt * lt);
    const auto s = ThermoState::homogeneous(li, n, temp);
    for (double qlt = 0.0; qlt <= 10.0; qlt += 0.5) {
        const double q = qlt / lt;
        const double b = beta_homogeneous(q, s);
        const double g = s_q_gaussian(q, 0.1, lt, Statistics::fermion);
        CHECK(std::abs(b - g) <= 2e-3);
        CHECK(b >= 0.0);
        CHECK(b <= 1.0);
    }
}

TEST_CASE("reduced kernel vs direct 2-D quadrature") {
    for (const double eta : {-3.0, 0.0, 4.345143034419506, 20.0}) {
        for (const double qt : {0.05, 0.5, 1.5, 4.0}) {
            CHECK(beta_kernel(qt, eta) ==
                  doctest::Approx(beta_kernel_direct2d(qt, eta)).epsilon(1e-4));
        }
    }
}

TEST_CASE("monotonicity and bounds") {
    SUBCASE("nondecreasing in T at fixed q and density") {
        const double density = 1e19;
        for (const double x : {0.15, 0.3, 0.45, 0.6, 0.75, 0.9, 1.05, 1.2, 1.35, 1.5}) {
            double prev = -1.0;
            for (const double t :
                 {0.05, 0.1, 0.2, 0.35, 0.5, 0.75, 1.0, 1.5, 2.5, 4.0}) {
                const auto s = state_at(t, density);
                const double b = beta_homogeneous(q_of_x(s, x), s);
                CHECK(b >= prev - 1e-9);
                CHECK(b >= 0.0);
                CHECK(b <= 1.0);
                prev = b;
            }
        }
    }

    SUBCASE("nondecreasing in q at fixed state") {
        const auto s = state_at(0.25);
        double prev = -1.0;
        for (double x = 0.0; x <= 2.0; x += 0.1) {
            const double b = beta_homogeneous(q_of_x(s, x), s);
            CHECK(b >= prev - 1e-9);
            prev = b;
        }
    }

    SUBCASE("beta -> 1 far outside the Fermi surface") {
        const auto s = state_at(0.1);
        CHECK(beta_homogeneous(10.0 * fermi_wavevector(s.density()), s) ==
              doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("lattice oracle") {
    SUBCASE("agrees with the quadrature kernel") {
        const auto s = state_at(0.2);
        const double q = q_of_x(s, 0.3);
        const double quad = beta_homogeneous(q, s);
        const double lat128 = beta_lattice_oracle(q, s, 128, 5.0);
        CHECK(lat128 == doctest::Approx(quad).epsilon(0.01));

        // refinement reduces the error (first-order in the spacing)
        const double lat64 = beta_lattice_oracle(q, s, 64, 5.0);
        CHECK(std::abs(lat128 - quad) <= std::abs(lat64 - quad) + 2e-4);
    }

    SUBCASE("q = 0 self-consistency, vanishing at low T") {
        const auto cold = state_at(0.05);
        const double b0 = beta_lattice_oracle(0.0, cold, 96, 5.0);
        CHECK(b0 == doctest::Approx(beta_homogeneous(0.0, cold)).epsilon(0.02));
        CHECK(b0 < 0.1);
        const auto hot = state_at(5.0);
        CHECK(beta_lattice_oracle(0.0, hot, 96, 5.0) > 0.9);
    }

    SUBCASE("tail truncation: doubling the cutoff at fixed spacing") {
        const auto s = state_at(0.5);
        const double q = q_of_x(s, 0.4);
        const double a = beta_lattice_oracle(q, s, 64, 4.0);
        const double b = beta_lattice_oracle(q, s, 128, 8.0);  // same spacing
        CHECK(std::abs(a - b) < 1e-4);
    }

    SUBCASE("precondition and budget guards") {
        const auto s = state_at(0.5);
        CHECK_THROWS_AS(beta_lattice_oracle(1e6, s, 16, 5.0), std::invalid_argument);
        CHECK_THROWS_AS(beta_lattice_oracle(1e6, s, 64, 2.0), std::invalid_argument);
        LatticeOracleOptions tiny;
        tiny.point_budget = 1000;
        CHECK_THROWS_AS(beta_lattice_oracle(1e6, s, 64, 5.0, tiny), std::invalid_argument);
    }
}

}  // TEST_SUITE
