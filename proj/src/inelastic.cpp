#include "fermiscatter/inelastic.hpp"

#include <cmath>
#include <stdexcept>

#include "fermiscatter/errors.hpp"

namespace fermiscatter {

double condon_radius(const AtomSpecies& species, double delta) {
    if (!(delta > 0))
        throw std::domain_error("condon_radius: requires blue detuning (delta > 0)");
    return species.reduced_wavelength() * std::cbrt(species.linewidth_gamma / delta);
}

double loss_exponent(double pair_correlation_exponent) {
    if (!(pair_correlation_exponent >= 0))
        throw std::domain_error("loss_exponent: gamma must be >= 0");
    return (pair_correlation_exponent + 6.0) / 3.0;
}

std::vector<LossPoint> loss_curve(std::span<const double> delta_grid, double gamma,
                                  double amplitude) {
    const double alpha = loss_exponent(gamma);
    std::vector<LossPoint> out;
    out.reserve(delta_grid.size());
    for (const double d : delta_grid) {
        if (!(d > 0)) throw std::domain_error("loss_curve: all deltas must be > 0");
        out.push_back({d, amplitude * std::pow(d, -alpha)});
    }
    return out;
}

double atom_loss_metric(double n_final, double n_initial) {
    if (!(n_final > 0) || !(n_initial > 0))
        throw std::domain_error("atom_loss_metric: counts must be > 0");
    return -std::log(n_final / n_initial);
}

FitResult fit_power_law(std::span<const FitPoint> points) {
    const std::size_t n = points.size();
    if (n < 3) throw NumericError("fit_power_law: need >= 3 points");

    bool all_err = true, any_err = false;
    for (const auto& p : points) {
        if (!(p.x > 0) || !(p.y > 0))
            throw std::domain_error("fit_power_law: x and y must be > 0");
        if (p.y_err > 0)
            any_err = true;
        else
            all_err = false;
    }
    if (any_err && !all_err)
        throw std::invalid_argument("fit_power_law: give y_err for all points or none");

    // weights in log space: sigma_lny = y_err / y
    double sw = 0.0, swx = 0.0, swy = 0.0;
    std::vector<double> lx(n), ly(n), w(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(points[i].x);
        ly[i] = std::log(points[i].y);
        if (any_err) {
            const double s = points[i].y_err / points[i].y;
            w[i] = 1.0 / (s * s);
        } else {
            w[i] = 1.0;
        }
        sw += w[i];
        swx += w[i] * lx[i];
        swy += w[i] * ly[i];
    }
    const double mx = swx / sw, my = swy / sw;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = lx[i] - mx;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (ly[i] - my);
    }
    if (!(sxx > 0)) throw NumericError("fit_power_law: zero spread in x");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double chi2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (intercept + slope * lx[i]);
        chi2 += w[i] * r * r;
    }
    const double s2 = chi2 / static_cast<double>(n - 2);
    return {slope, std::sqrt(s2 / sxx), std::exp(intercept)};
}

}  // namespace fermiscatter
