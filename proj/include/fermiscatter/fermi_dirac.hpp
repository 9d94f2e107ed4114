#pragma once

namespace fermiscatter {

// Complete Fermi-Dirac integral
//
//   F_j(eta) = 1/Gamma(j+1) * int_0^inf t^j / (exp(t - eta) + 1) dt
//            = -Li_{j+1}(-exp(eta))
//
// for real j >= 0 and any eta. Relative accuracy 1e-8 or better over the
// full range (typically ~1e-12). Evaluation strategy:
//   z = exp(eta) <= 0.9 : alternating fugacity series,
//   eta > 30            : Sommerfeld asymptotic series,
//   otherwise           : adaptive quadrature with t = u^2 substitution.
// Throws std::domain_error for j < 0 or non-finite arguments.
double fermi_dirac_integral(double j, double eta);

// -Li_s(-exp(eta)) for s >= 1; alias of fermi_dirac_integral(s - 1, eta).
double polylog_fd(double s, double eta);

}  // namespace fermiscatter
