#include "fermiscatter/fermi_dirac.hpp"

#include <cmath>
#include <stdexcept>

#include "fermiscatter/numeric/quadrature.hpp"

namespace fermiscatter {

namespace {

// c_{2n} = 2 * (1 - 2^{1-2n}) * zeta(2n), the coefficients of the Sommerfeld
// expansion F_j(eta) ~ eta^{j+1}/Gamma(j+2) [1 + sum_n c_{2n} P_{2n}(j) eta^{-2n}]
// with P_{2n}(j) = (j+1) j (j-1) ... (j+2-2n).
constexpr double zeta_even[7] = {
    1.6449340668482264,  // zeta(2)
    1.0823232337111382,  // zeta(4)
    1.0173430619844491,  // zeta(6)
    1.0040773561979443,  // zeta(8)
    1.0009945751278181,  // zeta(10)
    1.0002460865533080,  // zeta(12)
    1.0000612481350587,  // zeta(14)
};

double sommerfeld_coeff(int n) {
    return 2.0 * (1.0 - std::exp2(1.0 - 2.0 * n)) * zeta_even[n - 1];
}

// x^p for small p that is often integral or half-integral (hot path).
double pow_small(double x, double p) {
    const int ip = static_cast<int>(p);
    if (p == ip && ip >= 0 && ip <= 9) {
        double r = 1.0;
        for (int i = 0; i < ip; ++i) r *= x;
        return r;
    }
    if (p - 0.5 == static_cast<int>(p - 0.5)) return pow_small(x, p - 0.5) * std::sqrt(x);
    return std::pow(x, p);
}

// Alternating series sum_k (-1)^{k+1} z^k / k^{j+1}; geometric convergence
// for z <= 0.9.
double fugacity_series(double j, double eta) {
    const double z = std::exp(eta);
    double sum = 0.0;
    double zk = 1.0;
    for (int k = 1; k <= 600; ++k) {
        zk *= z;
        const double term = (k % 2 ? zk : -zk) / pow_small(k, j + 1.0);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) return sum;
    }
    return sum;
}

double sommerfeld(double j, double eta) {
    double corr = 1.0;
    double prod = 1.0;
    for (int n = 1; n <= 7; ++n) {
        prod *= (j + 1.0 - (2 * n - 2)) * (j + 1.0 - (2 * n - 1));
        if (prod == 0.0) break;  // integer j: the series terminates
        corr += sommerfeld_coeff(n) * prod * std::pow(eta, -2.0 * n);
    }
    return std::pow(eta, j + 1.0) / std::tgamma(j + 2.0) * corr;
}

// int_0^inf t^j f(t) dt with t = u^2, killing the t^{1/2}-type kink at 0:
// F_j = 2/Gamma(j+1) * int_0^umax u^{2j+1} / (exp(u^2 - eta) + 1) du.
double quadrature_path(double j, double eta) {
    const double umax = std::sqrt(std::max(eta, 0.0) + 45.0);
    const double p = 2.0 * j + 1.0;
    const double val = num::integrate(
        [p, eta](double u) { return pow_small(u, p) / (std::exp(u * u - eta) + 1.0); },
        0.0, umax, 1e-11);
    return 2.0 * val / std::tgamma(j + 1.0);
}

}  // namespace

double fermi_dirac_integral(double j, double eta) {
    if (!(j >= 0.0) || !std::isfinite(j) || !std::isfinite(eta))
        throw std::domain_error("fermi_dirac_integral: need finite j >= 0");
    // ln(0.9): fugacity series region boundary
    if (eta <= -0.10536051565782630) return fugacity_series(j, eta);
    if (eta > 30.0) return sommerfeld(j, eta);
    return quadrature_path(j, eta);
}

double polylog_fd(double s, double eta) { return fermi_dirac_integral(s - 1.0, eta); }

}  // namespace fermiscatter
