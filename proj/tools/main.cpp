#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fermiscatter/config.hpp"
#include "fermiscatter/constants.hpp"
#include "fermiscatter/errors.hpp"
#include "fermiscatter/fermi_dirac.hpp"
#include "fermiscatter/heating.hpp"
#include "fermiscatter/inelastic.hpp"
#include "fermiscatter/numeric/quadrature.hpp"
#include "fermiscatter/species.hpp"
#include "fermiscatter/structure_factor.hpp"
#include "fermiscatter/table_io.hpp"
#include "fermiscatter/thermo.hpp"
#include "fermiscatter/trap_scattering.hpp"

namespace fs = fermiscatter;
namespace c = fermiscatter::constants;

namespace {

constexpr const char* kVersion = "1.0.0";

constexpr const char* kDefaultConfig = R"(
[species]
name = lithium-6

[trap]
omega_r_hz = 34000
omega_z_hz = 770
atom_number = 600000

[beam]
waist_um = 110
power_mw = 2.35
detuning_ghz = -100
pulse_ms = 25

[constants]
t_over_tf = 0.2
theta_deg = 90

[fig2]
theta_deg = 90
t_over_tf = 0.15:3:40:log

[fig3]
power_mw = 0.15:40:28:log
detuning_ghz = -112
pulse_ms = 50
initial_t_over_tf = 0.2
include_overlap = false
angle_average = isotropic
blocking = true
heat_per_event_recoils = 2
low_fraction = 0.3
high_fraction = 0.3

[fig4]
delta_ghz = 100:500:25:log
gamma = 2
amplitude = 1

[sq]
d = 0.1
t_uk = 1
statistics = fermion
qlam = 0:10:51

[fit]
delta_min_ghz = 0
)";

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::vector<std::string> grid_overrides;
    bool aperture_average = false;
    std::uint64_t seed = 20211025;
};

// grid flag name -> config location
const std::map<std::string, std::pair<std::string, std::string>> kGridTargets = {
    {"t_over_tf", {"fig2", "t_over_tf"}},
    {"power_mw", {"fig3", "power_mw"}},
    {"delta_ghz", {"fig4", "delta_ghz"}},
    {"qlam", {"sq", "qlam"}},
};

fs::KeyValueConfig resolve_config(const CliOptions& opt) {
    fs::KeyValueConfig cfg = fs::KeyValueConfig::parse_string(kDefaultConfig, "<defaults>");
    if (!opt.config_path.empty()) {
        const fs::KeyValueConfig user = fs::KeyValueConfig::parse_file(opt.config_path);
        // overlay user keys onto the defaults
        const fs::KeyValueConfig merged = fs::KeyValueConfig::parse_string(
            cfg.serialize() + "\n" + user.serialize(), opt.config_path);
        cfg = merged;
    }
    for (const std::string& g : opt.grid_overrides) {
        const auto eq = g.find('=');
        if (eq == std::string::npos)
            throw fs::ConfigError("--grid: expected name=min:max:count[:log]");
        const std::string name = g.substr(0, eq);
        const std::string spec = g.substr(eq + 1);
        const auto it = kGridTargets.find(name);
        if (it == kGridTargets.end())
            throw fs::ConfigError("--grid: unknown grid '" + name + "'");
        fs::GridSpec::parse(spec);  // validate now, fail early
        cfg.set(it->second.first, it->second.second, spec);
    }
    return cfg;
}

fs::AtomSpecies species_from(const fs::KeyValueConfig& cfg) {
    const std::string file = cfg.get_string("species", "file", "");
    const std::string name = cfg.get_string("species", "name", "lithium-6");
    if (!file.empty()) return fs::load_species_file(file);
    if (name == "lithium-6" || name == "li6" || name == "6Li") return fs::lithium6();
    throw fs::ConfigError("species: unknown builtin '" + name + "' (use [species] file=...)");
}

fs::TrapConfig trap_from(const fs::KeyValueConfig& cfg) {
    fs::TrapConfig trap;
    trap.omega_r = 2.0 * c::pi * cfg.get_number("trap", "omega_r_hz", 34000.0);
    trap.omega_z = 2.0 * c::pi * cfg.get_number("trap", "omega_z_hz", 770.0);
    trap.atom_number = cfg.get_number("trap", "atom_number", 6e5);
    trap.validate();
    return trap;
}

fs::ProbeBeam beam_from(const fs::KeyValueConfig& cfg) {
    fs::ProbeBeam beam;
    beam.waist = cfg.get_number("beam", "waist_um", 110.0) * 1e-6;
    beam.power = cfg.get_number("beam", "power_mw", 2.35) * 1e-3;
    beam.detuning = 2.0 * c::pi * cfg.get_number("beam", "detuning_ghz", -100.0) * 1e9;
    beam.pulse_duration = cfg.get_number("beam", "pulse_ms", 25.0) * 1e-3;
    beam.validate();
    return beam;
}

void emit_table(const fs::Table& table, const fs::KeyValueConfig& cfg,
                const CliOptions& opt, const std::string& default_stem) {
    const std::string content = opt.format == "json"
                                    ? fs::to_json(table, cfg.hash_hex(), kVersion)
                                    : fs::to_csv(table);
    const std::string path =
        opt.out_path.empty() ? default_stem + "." + opt.format : opt.out_path;
    fs::write_text_file(path, content);
    std::cout << "wrote " << path << " (" << table.rows.size() << " rows)\n";
}

void emit_report(const std::vector<std::pair<std::string, std::string>>& kv,
                 const CliOptions& opt) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    std::cout << out;
    if (!opt.out_path.empty()) fs::write_text_file(opt.out_path, out);
}

// ---------------------------------------------------------------------------

int cmd_constants(const CliOptions& opt) {
    const fs::KeyValueConfig cfg = resolve_config(opt);
    const fs::AtomSpecies sp = species_from(cfg);
    const fs::TrapConfig trap = trap_from(cfg);
    const fs::ProbeBeam beam = beam_from(cfg);
    const double t_over_tf = cfg.get_number("constants", "t_over_tf", 0.2);
    const double theta = cfg.get_number("constants", "theta_deg", 90.0) * c::pi / 180.0;

    const double tf = fs::fermi_temperature(trap);
    const double temp = t_over_tf * tf;
    const auto state = fs::ThermoState::trapped(sp, trap, temp);
    const double q = fs::momentum_transfer(sp, theta);
    const double n_peak = state.density();

    // density-weighted mean density over the cloud, int n^2 / N
    const double eta0 = state.eta();
    const double vmax = std::sqrt(std::max(eta0, 0.0) + 45.0);
    auto shell = [&](auto&& f) {
        return fs::num::integrate(
            [&](double v) { return 2.0 * v * v * f(eta0 - v * v); }, 0.0, vmax, 1e-9);
    };
    const double i1 = shell([](double e) { return fs::fermi_dirac_integral(0.5, e); });
    const double i2 = shell([](double e) {
        const double f = fs::fermi_dirac_integral(0.5, e);
        return f * f;
    });
    const double lt = state.lambda_t();
    const double n_avg = (i2 / i1) / (lt * lt * lt);

    const auto sigma = fs::cloud_rms_widths(state);
    const double cloud_length = 2.0 * sigma[2];
    const double rate = fs::rayleigh_rate(sp, beam.peak_intensity(), beam.detuning);

    auto f = fs::format_float;
    emit_report(
        {
            {"species", cfg.get_string("species", "name", "lithium-6")},
            {"mass_kg", f(sp.mass)},
            {"wavelength_nm", f(sp.wavelength * 1e9)},
            {"recoil_kHz", f(fs::recoil_frequency(sp) / 1e3)},
            {"recoil_J", f(fs::recoil_energy(sp))},
            {"t_fermi_uK", f(tf * 1e6)},
            {"e_fermi_J", f(c::k_boltzmann * tf)},
            {"ef_over_erec", f(c::k_boltzmann * tf / fs::recoil_energy(sp))},
            {"t_over_tf", f(t_over_tf)},
            {"theta_deg", f(theta * 180.0 / c::pi)},
            {"q_per_m", f(q)},
            {"q_over_k", f(q / sp.wavenumber())},
            {"k_fermi_per_m", f(fs::fermi_wavevector(n_peak))},
            {"lambda_t_um", f(lt * 1e6)},
            {"density_peak_per_cm3", f(n_peak * 1e-6)},
            {"density_avg_per_cm3", f(n_avg * 1e-6)},
            {"phase_space_density_peak", f(fs::peak_phase_space_density(state))},
            {"sigma_r_um", f(sigma[0] * 1e6)},
            {"sigma_z_um", f(sigma[2] * 1e6)},
            {"n_alpha", f(fs::polarizability_parameter(sp, n_peak, beam.detuning))},
            {"od_resonant", f(fs::resonant_optical_density(sp, n_peak, cloud_length))},
            {"rayleigh_per_s", f(rate)},
            {"photons_per_pulse", f(rate * beam.pulse_duration)},
        },
        opt);
    return 0;
}

int cmd_fig2(const CliOptions& opt) {
    const fs::KeyValueConfig cfg = resolve_config(opt);
    const fs::AtomSpecies sp = species_from(cfg);
    const fs::TrapConfig trap = trap_from(cfg);
    const fs::ProbeBeam beam = beam_from(cfg);
    const double theta = cfg.get_number("fig2", "theta_deg", 90.0) * c::pi / 180.0;
    const fs::GridSpec grid =
        fs::GridSpec::parse(cfg.get_string("fig2", "t_over_tf", "0.15:3:40:log"));
    const double q = fs::momentum_transfer(sp, theta);

    fs::ApertureOptions aperture;
    aperture.average = opt.aperture_average;

    const std::vector<double> tgrid = grid.points();
    const fs::SuppressionCurve curve =
        fs::detected_signal_curve(sp, trap, beam, q, tgrid, aperture);

    fs::Table table;
    table.columns = {"t_over_tf", "suppression", "overlap", "product"};
    for (const auto& row : curve.rows)
        table.rows.push_back({row.t_over_tf, row.suppression, row.overlap, row.product});
    emit_table(table, cfg, opt, "fig2");
    return 0;
}

fs::PulseSimConfig pulse_config_from(const fs::KeyValueConfig& cfg) {
    fs::PulseSimConfig pc;
    pc.species = species_from(cfg);
    pc.trap = trap_from(cfg);
    pc.beam = beam_from(cfg);
    pc.beam.detuning = 2.0 * c::pi * cfg.get_number("fig3", "detuning_ghz", -112.0) * 1e9;
    pc.beam.pulse_duration = cfg.get_number("fig3", "pulse_ms", 50.0) * 1e-3;
    pc.initial_t_over_tf = cfg.get_number("fig3", "initial_t_over_tf", 0.2);
    pc.include_overlap = cfg.get_bool("fig3", "include_overlap", false);
    pc.pauli_blocking = cfg.get_bool("fig3", "blocking", true);
    const std::string avg = cfg.get_string("fig3", "angle_average", "isotropic");
    if (avg == "isotropic")
        pc.angle_average = fs::AngleAverage::isotropic;
    else if (avg == "dipole")
        pc.angle_average = fs::AngleAverage::dipole;
    else
        throw fs::ConfigError("fig3: angle_average must be isotropic or dipole");
    const double recoils = cfg.get_number("fig3", "heat_per_event_recoils", 2.0);
    pc.heat_per_event = recoils * fs::recoil_energy(pc.species);
    return pc;
}

int cmd_fig3(const CliOptions& opt, double trajectory_power_mw) {
    const fs::KeyValueConfig cfg = resolve_config(opt);
    fs::PulseSimConfig pc = pulse_config_from(cfg);

    if (trajectory_power_mw > 0) {
        pc.beam.power = trajectory_power_mw * 1e-3;
        const fs::HeatingTrajectory traj = fs::evolve_heating(pc);
        fs::Table table;
        table.columns = {"t_ms", "t_over_tf", "photons", "rate"};
        for (const auto& r : traj.rows)
            table.rows.push_back({r.t * 1e3, r.t_over_tf, r.photons, r.rate});
        emit_table(table, cfg, opt, "trajectory");
        return 0;
    }

    const fs::GridSpec grid =
        fs::GridSpec::parse(cfg.get_string("fig3", "power_mw", "0.15:40:28:log"));
    std::vector<double> powers = grid.points();
    for (double& p : powers) p *= 1e-3;

    const auto rows = fs::photons_vs_power(pc, powers);
    fs::Table table;
    table.columns = {"power_mw", "photons_per_atom", "final_t_over_tf"};
    for (const auto& r : rows)
        table.rows.push_back({r.power * 1e3, r.photons_per_atom, r.final_t_over_tf});
    emit_table(table, cfg, opt, "fig3");

    const double lf = cfg.get_number("fig3", "low_fraction", 0.3);
    const double hf = cfg.get_number("fig3", "high_fraction", 0.3);
    const fs::TwoSlopeFit fit = fs::two_slope_analysis(rows, lf, hf);
    auto f = fs::format_float;
    std::cout << "slope_low_per_mw = " << f(fit.slope_low * 1e-3) << "\n"
              << "slope_high_per_mw = " << f(fit.slope_high * 1e-3) << "\n"
              << "slope_ratio = " << f(fit.slope_low / fit.slope_high) << "\n"
              << "intercept_high = " << f(fit.intercept_high) << "\n";
    return 0;
}

int cmd_fig4(const CliOptions& opt) {
    const fs::KeyValueConfig cfg = resolve_config(opt);
    const fs::GridSpec grid =
        fs::GridSpec::parse(cfg.get_string("fig4", "delta_ghz", "100:500:25:log"));
    const double gamma = cfg.get_number("fig4", "gamma", 2.0);
    const double amplitude = cfg.get_number("fig4", "amplitude", 1.0);
    const double dmin = cfg.get_number("fit", "delta_min_ghz", 0.0);
    if (grid.min < dmin)
        throw fs::ConfigError("fig4: grid extends below delta_min_ghz = " +
                              fs::format_float(dmin) +
                              " where the power law does not hold; refusing");

    const std::vector<double> deltas = grid.points();
    const auto curve = fs::loss_curve(deltas, gamma, amplitude);
    fs::Table table;
    table.columns = {"delta_ghz", "loss"};
    for (const auto& p : curve) table.rows.push_back({p.delta, p.loss});
    emit_table(table, cfg, opt, "fig4");
    return 0;
}

std::vector<fs::FitPoint> read_fit_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fs::ConfigError("fit: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw fs::ConfigError("fit: empty file '" + path + "'");
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (const char ch : s) {
            if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    };
    const auto header = split(line);
    if (header.size() < 2 || header[0] != "delta_ghz" || header[1] != "loss" ||
        (header.size() == 3 && header[2] != "loss_err") || header.size() > 3)
        throw fs::ConfigError("fit: expected header delta_ghz,loss[,loss_err] in '" + path +
                              "'");
    const bool has_err = header.size() == 3;
    std::vector<fs::FitPoint> points;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            throw fs::ConfigError(path + ":" + std::to_string(lineno) +
                                  ": wrong column count");
        try {
            fs::FitPoint p;
            p.x = std::stod(cells[0]);
            p.y = std::stod(cells[1]);
            if (has_err) p.y_err = std::stod(cells[2]);
            points.push_back(p);
        } catch (const std::exception&) {
            throw fs::ConfigError(path + ":" + std::to_string(lineno) + ": bad number");
        }
    }
    return points;
}

int cmd_fit(const CliOptions& opt, const std::string& input, bool selftest) {
    const fs::KeyValueConfig cfg = resolve_config(opt);

    if (selftest) {
        // Monte Carlo calibration of the fitter: exact Delta^-2 law with 5%
        // lognormal noise, 8 points per fit. Box-Muller on the raw engine
        // keeps the stream identical across standard libraries.
        const int n_seeds = 500;
        double sum_exp = 0.0;
        int covered = 0;
        for (int s = 0; s < n_seeds; ++s) {
            std::mt19937_64 rng(opt.seed + static_cast<std::uint64_t>(s));
            auto uniform = [&rng]() {
                return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            };
            std::vector<fs::FitPoint> pts;
            for (int i = 0; i < 8; ++i) {
                const double x = 100.0 * std::pow(5.0, i / 7.0);
                const double xi =
                    std::sqrt(-2.0 * std::log(uniform())) * std::cos(2.0 * c::pi * uniform());
                pts.push_back({x, std::pow(x, -2.0) * std::exp(0.05 * xi), 0.0});
            }
            const fs::FitResult r = fs::fit_power_law(pts);
            sum_exp += r.exponent;
            if (std::abs(r.exponent + 2.0) <= r.exponent_stderr) ++covered;
        }
        auto f = fs::format_float;
        emit_report({{"seeds", std::to_string(n_seeds)},
                     {"true_exponent", "-2"},
                     {"mean_exponent", f(sum_exp / n_seeds)},
                     {"bias", f(sum_exp / n_seeds + 2.0)},
                     {"stderr_coverage", f(static_cast<double>(covered) / n_seeds)}},
                    opt);
        return 0;
    }

    if (input.empty()) throw fs::ConfigError("fit: --input CSV required");
    const auto points = read_fit_csv(input);
    const double dmin = cfg.get_number("fit", "delta_min_ghz", 0.0);
    for (const auto& p : points)
        if (p.x < dmin)
            throw fs::ConfigError(
                "fit: data at delta_ghz = " + fs::format_float(p.x) +
                " lies below delta_min_ghz = " + fs::format_float(dmin) +
                " where the loss does not follow a power law; refusing to fit");
    const fs::FitResult r = fs::fit_power_law(points);
    auto f = fs::format_float;
    emit_report({{"points", std::to_string(points.size())},
                 {"exponent", f(r.exponent)},
                 {"exponent_stderr", f(r.exponent_stderr)},
                 {"amplitude", f(r.amplitude)}},
                opt);
    return 0;
}

int cmd_sq(const CliOptions& opt) {
    const fs::KeyValueConfig cfg = resolve_config(opt);
    const fs::AtomSpecies sp = species_from(cfg);
    const double d = cfg.get_number("sq", "d", 0.1);
    const double t = cfg.get_number("sq", "t_uk", 1.0) * 1e-6;
    const std::string stat_name = cfg.get_string("sq", "statistics", "fermion");
    fs::Statistics stat;
    if (stat_name == "fermion")
        stat = fs::Statistics::fermion;
    else if (stat_name == "boson")
        stat = fs::Statistics::boson;
    else
        throw fs::ConfigError("sq: statistics must be fermion or boson");
    const fs::GridSpec grid = fs::GridSpec::parse(cfg.get_string("sq", "qlam", "0:10:51"));
    if (grid.min < 0) throw fs::ConfigError("sq: q grid must be nonnegative");

    const double lt = fs::thermal_wavelength(sp, t);
    const double n = d / (lt * lt * lt);
    const auto state = fs::ThermoState::homogeneous(sp, n, t);

    fs::Table table;
    table.columns = {"q_lambda", "beta", "gaussian"};
    for (const double ql : grid.points()) {
        const double q = ql / lt;
        table.rows.push_back({ql, fs::beta_homogeneous(q, state),
                              fs::s_q_gaussian(q, d, lt, stat)});
    }
    emit_table(table, cfg, opt, "sq");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pauli-blocked light scattering in a degenerate Fermi gas"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    app.fallthrough(true);  // accept global options after the subcommand name

    CliOptions opt;
    app.add_option("--config", opt.config_path, "key=value config file");
    app.add_option("--out", opt.out_path, "output path");
    app.add_option("--format", opt.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--grid", opt.grid_overrides,
                   "override a sweep grid, name=min:max:count[:log]");
    app.add_flag("--aperture-average", opt.aperture_average,
                 "average the detected q over the NA=0.27 collection cone");
    app.add_option("--seed", opt.seed, "RNG seed (fit --selftest only)");

    auto* constants = app.add_subcommand("constants", "scalar diagnostics report");
    auto* fig2 = app.add_subcommand("fig2", "suppression/overlap/product vs T/T_F");
    auto* fig3 = app.add_subcommand("fig3", "photons per atom vs probe power");
    double traj_power_mw = 0.0;
    fig3->add_option("--trajectory-mw", traj_power_mw,
                     "write a single heating trajectory at this power instead");
    auto* fig4 = app.add_subcommand("fig4", "inelastic loss-scaling curve");
    auto* fit = app.add_subcommand("fit", "power-law fit of delta_ghz,loss CSV data");
    std::string fit_input;
    bool fit_selftest = false;
    fit->add_option("--input", fit_input, "input CSV: delta_ghz,loss[,loss_err]");
    fit->add_flag("--selftest", fit_selftest, "Monte Carlo fitter calibration");
    auto* sq = app.add_subcommand("sq", "homogeneous S(q) curve vs q Lambda_t");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (constants->parsed()) return cmd_constants(opt);
        if (fig2->parsed()) return cmd_fig2(opt);
        if (fig3->parsed()) return cmd_fig3(opt, traj_power_mw);
        if (fig4->parsed()) return cmd_fig4(opt);
        if (fit->parsed()) return cmd_fit(opt, fit_input, fit_selftest);
        if (sq->parsed()) return cmd_sq(opt);
    } catch (const fs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const fs::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
