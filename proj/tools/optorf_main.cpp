// optorf — forward modeling and parameter extraction for resonant opto-RF
// transduction in a three-level Λ system.
//
// Subcommands: simulate, fit, predict, export-synthetic, field, calibrate.
// Exit codes: 0 success, 2 parse/validation failure, 3 fit non-convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "optorf/calibration.hpp"
#include "optorf/config.hpp"
#include "optorf/csv.hpp"
#include "optorf/resonator.hpp"
#include "optorf/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;

struct CommonOpts {
    std::string config_path;
    std::optional<double> rescale_db;
    std::uint64_t seed = 1;
    std::string out_path;
};

optorf::ExperimentConfig make_config(const CommonOpts& opts) {
    optorf::ExperimentConfig cfg;
    if (!opts.config_path.empty()) cfg = optorf::load_config(opts.config_path);
    if (opts.rescale_db) cfg.model_rescale_db = *opts.rescale_db;
    cfg.validate();
    return cfg;
}

std::ostream& output_stream(const CommonOpts& opts, std::ofstream& file) {
    if (opts.out_path.empty()) return std::cout;
    file.open(opts.out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + opts.out_path);
    return file;
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_seed = false) {
    cmd->add_option("--config", opts.config_path, "experiment configuration (TOML)");
    cmd->add_option("--rescale-db", opts.rescale_db,
                    "model rescale in dB, overrides the config value");
    cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
    if (with_seed) cmd->add_option("--seed", opts.seed, "noise seed");
}

int run_simulate(const CommonOpts& opts, const std::string& axis, double start, double stop,
                 int steps) {
    const optorf::ExperimentConfig cfg = make_config(opts);
    optorf::SweepSpec spec{optorf::sweep_axis_from_name(axis), start, stop, steps};
    const auto rows = optorf::run_sweep(cfg, spec);
    std::ofstream file;
    std::ostream& os = output_stream(opts, file);
    os << "# axis: " << optorf::sweep_axis_name(spec.axis) << " ["
       << optorf::sweep_axis_unit(spec.axis) << "], rescale_db = " << cfg.model_rescale_db
       << "\n";
    os << "# axis_value, eta_eo_db, eta_q_db\n";
    for (const auto& row : rows)
        os << optorf::format_number(row.axis_value) << ", "
           << optorf::format_number(row.eta_eo_db) << ", "
           << optorf::format_number(row.eta_q_db) << "\n";
    return kExitOk;
}

int run_predict(const CommonOpts& opts) {
    const optorf::ExperimentConfig cfg = make_config(opts);
    const optorf::Prediction p = optorf::predict(cfg);
    std::ofstream file;
    std::ostream& os = output_stream(opts, file);
    char buf[160];

    os << "operating point: P_rf = " << cfg.rf_power_mw << " mW, P_o = " << cfg.pump_power_mw
       << " mW, f_rf = " << cfg.rf_frequency_ghz << " GHz, lambda = "
       << cfg.probe_wavelength_nm << " nm, T = " << cfg.temperature_k << " K\n\n";
    os << "  quantity                     model        reference\n";
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "mode_frequency_ghz",
                  p.mode_frequency_ghz, "12.49 (empty-box TE101)");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "rf_rabi_mhz",
                  p.rf_rabi_rad_s / (2.0 * optorf::constants::pi) * 1e-6, "~5 (on resonance)");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "position_factor",
                  p.position_factor, "0.95 (not folded into the Rabi frequency)");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "population_imbalance",
                  p.population_imbalance, "0.12 (thermal, 2.5 K)");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.2f    %s\n", "eta_eo_db", p.eta_eo_db,
                  "-84 measured peak; -14 dB rescale closes the gap");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.2f    %s\n", "eta_q_db", p.eta_q_db,
                  "eta_eo - 57.5 dB at the nominal powers");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.2f\n", "eta_q_offset_db", p.eta_q_offset_db);
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "vacuum_coupling_rad_s",
                  p.vacuum_coupling_rad_s, "single-quantum spin coupling g_mu");
    os << buf;
    std::snprintf(buf, sizeof buf, "  %-26s %10.4f    %s\n", "cooperativity_estimate",
                  p.cooperativity_estimate, "0.135 fitted from the reflection map");
    os << buf;
    os << "\n  rescale_db applied: " << p.rescale_db << "\n";
    os << "  note: the cooperativity estimate follows the printed vacuum-field and\n"
          "  g-factor conventions; half-field/rotating-wave operator choices move it\n"
          "  by factors of ~2, so read it as an order-of-magnitude cross-check.\n";
    return kExitOk;
}

int run_field(const CommonOpts& opts) {
    const optorf::ExperimentConfig cfg = make_config(opts);
    const optorf::ResonatorGeometry geom = cfg.geometry();
    const optorf::DriveConditions drive = cfg.drive();
    const optorf::CavityParams cavity = cfg.cavity();
    std::ofstream file;
    std::ostream& os = output_stream(opts, file);

    const double b_amp = optorf::intracavity_b_amplitude(geom, drive, cavity);
    const double mu = optorf::rf_rabi_frequency(geom, drive, cavity);
    const double g_mu = optorf::vacuum_coupling(geom, drive.omega_rf, cfg.spin_g_factor);
    os << "resonator " << cfg.box_a_mm << " x " << cfg.box_b_mm << " x " << cfg.box_d_mm
       << " mm, V = " << geom.volume() * 1e6 << " mL\n";
    os << "mode_frequency_ghz      = " << optorf::mode_frequency_hz(geom) * 1e-9 << "\n";
    os << "stored_energy_J         = "
       << optorf::stored_energy_from_power(geom, drive, cavity) << "\n";
    os << "b_amplitude_T           = " << b_amp << "\n";
    os << "b_amplitude_at_probe_T  = " << b_amp * geom.position_factor() << "\n";
    os << "position_factor         = " << geom.position_factor() << "\n";
    os << "rf_rabi_mhz             = " << mu / (2.0 * optorf::constants::pi) * 1e-6 << "\n";
    os << "vacuum_coupling_rad_s   = " << g_mu << "\n";
    os << "cooperativity_estimate  = "
       << optorf::cooperativity_estimate(geom, cfg.sample(), cavity, cfg.spins(),
                                         drive.omega_rf)
       << "\n";
    return kExitOk;
}

int run_calibrate(const CommonOpts& opts, double vsa, double vfringes, double eta_lo,
                  double contrast) {
    std::ofstream file;
    std::ostream& os = output_stream(opts, file);
    const optorf::HeterodyneCalibration cal{eta_lo, vsa, vfringes, contrast};
    const double eta = optorf::eta_eo_from_measurement(cal);
    os << "eta_eo_linear = " << optorf::format_number(eta) << "\n";
    os << "eta_eo_db     = " << optorf::format_number(optorf::db_power(eta)) << "\n";
    return kExitOk;
}

int run_export(const CommonOpts& opts, const std::string& kind, int n1, int n2, double span1,
               double span2, double noise, const std::optional<double>& peak_db,
               double floor_db, double fwhm) {
    const optorf::ExperimentConfig cfg = make_config(opts);
    if (opts.out_path.empty()) throw std::runtime_error("export-synthetic requires --out");
    if (kind == "s11") {
        const optorf::S11Map map =
            optorf::synthetic_s11_map(cfg, n1, n2, span1, span2 * 1e-3, noise, opts.seed);
        optorf::write_s11_map_file(opts.out_path, map);
    } else if (kind == "absorption") {
        const optorf::TransmissionSpectrum spectrum =
            optorf::synthetic_absorption(cfg, n1, span1, noise, opts.seed);
        optorf::write_spectrum_file(opts.out_path, spectrum);
    } else if (kind == "sweep") {
        std::vector<std::array<double, 3>> rows;
        if (peak_db) {
            // explicit beatnote line shape at the requested parameters
            const optorf::Prediction p = optorf::predict(cfg);
            rows = optorf::synthetic_sweep(0.0, span1, n1, *peak_db, floor_db, fwhm, noise,
                                           opts.seed, p.eta_q_offset_db);
        } else {
            // the model curve itself: with zero noise this is exactly the
            // simulate output over the same grid
            const optorf::SweepSpec spec{optorf::SweepAxis::spin_detuning, -span1 / 2.0,
                                         span1 / 2.0, n1};
            optorf::NoiseSource noise_src(opts.seed);
            for (const auto& row : optorf::run_sweep(cfg, spec)) {
                const double jitter = noise > 0.0 ? noise_src.gaussian(noise) : 0.0;
                rows.push_back({row.axis_value, row.eta_eo_db + jitter,
                                row.eta_q_db + jitter});
            }
        }
        std::ofstream os(opts.out_path);
        if (!os) throw std::runtime_error("cannot open output file: " + opts.out_path);
        optorf::write_sweep(os, rows, "# axis_value, eta_eo_db, eta_q_db");
    } else {
        throw std::runtime_error("unknown synthetic kind: " + kind);
    }
    return kExitOk;
}

int run_fit(const CommonOpts& opts, const std::string& kind, const std::string& data_path,
            int max_evals) {
    const optorf::ExperimentConfig cfg = make_config(opts);
    std::ofstream file;
    std::ostream& os = output_stream(opts, file);

    auto report = [&os](const char* name, double value, double sigma) {
        os << "  " << name << " = " << optorf::format_number(value);
        if (sigma > 0.0) os << " +/- " << optorf::format_number(sigma);
        os << "\n";
    };

    if (kind == "s11") {
        const optorf::S11Map data = optorf::read_s11_map_file(data_path);
        optorf::S11FitParams guess{cfg.cavity().kappa_c.rad_per_s,
                                   cfg.cavity().kappa_t.rad_per_s,
                                   cfg.spins().gamma.rad_per_s,
                                   cfg.spin_cooperativity,
                                   cfg.spin_g_factor,
                                   cfg.cavity().omega_c.rad_per_s,
                                   cfg.line_attenuation_db};
        optorf::S11FitParams lo{guess.kappa_c_rad / 3.0, guess.kappa_t_rad / 3.0,
                                guess.gamma_rad / 3.0,   0.0,
                                guess.g_factor / 1.5,    guess.omega_c_rad * 0.999,
                                -20.0};
        optorf::S11FitParams hi{guess.kappa_c_rad * 3.0, guess.kappa_t_rad * 3.0,
                                guess.gamma_rad * 3.0,   guess.cooperativity * 10.0,
                                guess.g_factor * 1.5,    guess.omega_c_rad * 1.001,
                                0.0};
        const optorf::S11FitResult result = optorf::fit_s11_map(data, guess, lo, hi, max_evals);
        os << "s11 map fit (" << data.fields_tesla.size() << " x "
           << data.frequencies_hz.size() << " grid)\n";
        const auto& u = result.fit.uncertainties;
        report("kappa_c_mhz", result.params.kappa_c_rad / (2e6 * optorf::constants::pi),
               u.empty() ? 0.0 : u[0] / (2e6 * optorf::constants::pi));
        report("kappa_t_mhz", result.params.kappa_t_rad / (2e6 * optorf::constants::pi),
               u.empty() ? 0.0 : u[1] / (2e6 * optorf::constants::pi));
        report("gamma_mhz", result.params.gamma_rad / (2e6 * optorf::constants::pi),
               u.empty() ? 0.0 : u[2] / (2e6 * optorf::constants::pi));
        report("cooperativity", result.params.cooperativity, u.empty() ? 0.0 : u[3]);
        report("g_factor", result.params.g_factor, u.empty() ? 0.0 : u[4]);
        report("cavity_frequency_ghz",
               result.params.omega_c_rad / (2e9 * optorf::constants::pi),
               u.empty() ? 0.0 : u[5] / (2e9 * optorf::constants::pi));
        report("attenuation_db", result.params.attenuation_db, u.empty() ? 0.0 : u[6]);
        os << "  sum_sq = " << optorf::format_number(result.fit.sum_sq)
           << ", n_evals = " << result.fit.n_evals
           << ", converged = " << (result.fit.converged ? "yes" : "no") << "\n";
        return result.fit.converged ? kExitOk : kExitNoConvergence;
    }

    if (kind == "absorption") {
        const optorf::TransmissionSpectrum data =
            optorf::read_spectrum_file(data_path, cfg.center_wavelength_nm);
        const optorf::ZeemanQuartet q = cfg.quartet();
        optorf::AbsorptionFitParams guess{q.od_direct,       q.od_crossed,
                                          q.lorentz_fwhm_hz, q.gauss_fwhm_hz,
                                          q.g_ground,        q.g_excited,
                                          0.0,               q.temperature_k};
        optorf::AbsorptionFitParams lo{0.0,  0.0,  0.0,   guess.gauss_fwhm_hz / 4.0,
                                       guess.g_ground / 1.5, guess.g_excited / 1.5,
                                       -2e9, guess.temperature_k / 2.0};
        optorf::AbsorptionFitParams hi{guess.od_direct * 4.0 + 0.1,
                                       guess.od_crossed * 4.0 + 0.1,
                                       guess.lorentz_fwhm_hz * 4.0 + 1e8,
                                       guess.gauss_fwhm_hz * 4.0,
                                       guess.g_ground * 1.5,
                                       guess.g_excited * 1.5,
                                       2e9,
                                       guess.temperature_k * 2.0};
        const optorf::AbsorptionFitResult result = optorf::fit_absorption(
            data, cfg.absorption_field_mt * 1e-3, guess, lo, hi, max_evals);
        os << "absorption fit (" << data.detunings_hz.size() << " points)\n";
        const auto& u = result.fit.uncertainties;
        report("od_direct", result.params.od_direct, u.empty() ? 0.0 : u[0]);
        report("od_crossed", result.params.od_crossed, u.empty() ? 0.0 : u[1]);
        report("total_fwhm_mhz", result.params.total_fwhm_hz() * 1e-6, 0.0);
        report("lorentz_fwhm_mhz", result.params.lorentz_fwhm_hz * 1e-6,
               u.empty() ? 0.0 : u[2] * 1e-6);
        report("gauss_fwhm_mhz", result.params.gauss_fwhm_hz * 1e-6,
               u.empty() ? 0.0 : u[3] * 1e-6);
        report("g_ground", result.params.g_ground, u.empty() ? 0.0 : u[4]);
        report("g_excited (free parameter)", result.params.g_excited, u.empty() ? 0.0 : u[5]);
        report("center_offset_mhz", result.params.center_offset_hz * 1e-6, 0.0);
        report("temperature_k", result.params.temperature_k, u.empty() ? 0.0 : u[7]);
        os << "  width split is a fit-internal parameterization; the total FWHM is the\n"
              "  physically meaningful width\n";
        os << "  sum_sq = " << optorf::format_number(result.fit.sum_sq)
           << ", n_evals = " << result.fit.n_evals
           << ", converged = " << (result.fit.converged ? "yes" : "no") << "\n";
        return result.fit.converged ? kExitOk : kExitNoConvergence;
    }

    if (kind == "sweep") {
        const auto data = optorf::read_sweep_file(data_path);
        const optorf::SweepFitResult result = optorf::fit_sweep(data, max_evals);
        os << "sweep fit (" << data.size() << " points)\n";
        report("center", result.model.center, 0.0);
        report("fwhm", result.model.fwhm, 0.0);
        report("peak_db", optorf::db_power(result.model.peak), 0.0);
        report("floor_db", optorf::db_power(std::max(result.model.floor, 1e-300)), 0.0);
        os << "  peak_significant = " << (result.peak_significant ? "yes" : "no") << "\n";
        os << "  sum_sq = " << optorf::format_number(result.fit.sum_sq)
           << ", n_evals = " << result.fit.n_evals
           << ", converged = " << (result.fit.converged ? "yes" : "no") << "\n";
        return result.fit.converged ? kExitOk : kExitNoConvergence;
    }

    throw std::runtime_error("unknown fit kind: " + kind);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"opto-RF transduction modeling and parameter extraction"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* simulate = app.add_subcommand("simulate", "sweep the model and emit CSV");
    std::string axis = "spin_detuning";
    double start = 0.0, stop = 0.0;
    int steps = 0;
    simulate->add_option("--axis", axis,
                         "spin_detuning | cavity_detuning | wavelength | rf_power")
        ->required();
    simulate->add_option("--start", start, "axis start (Hz / nm / mW)")->required();
    simulate->add_option("--stop", stop, "axis stop")->required();
    simulate->add_option("--steps", steps, "number of points (>= 2)")->required();
    add_common(simulate, opts);

    auto* fit = app.add_subcommand("fit", "fit a measurement file");
    std::string fit_kind, data_path;
    int max_evals = 60000;
    fit->add_option("kind", fit_kind, "s11 | absorption | sweep")->required();
    fit->add_option("data", data_path, "CSV data file")->required();
    fit->add_option("--max-evals", max_evals, "fit evaluation budget");
    add_common(fit, opts);

    auto* predict = app.add_subcommand("predict", "report the model operating point");
    add_common(predict, opts);

    auto* exporter =
        app.add_subcommand("export-synthetic", "write synthetic datasets for the fitters");
    std::string export_kind;
    int n1 = 50, n2 = 50;
    double span1 = 0.0, span2 = 0.0, noise = 0.0;
    std::optional<double> peak_db;
    double floor_db = -103.5, fwhm = 189e6;
    exporter->add_option("kind", export_kind, "s11 | absorption | sweep")->required();
    exporter->add_option("--n1", n1, "points on the first axis (frequency / detuning / sweep)");
    exporter->add_option("--n2", n2, "points on the second axis (field, s11 only)");
    exporter->add_option("--span1", span1,
                         "first-axis span (Hz for s11/absorption/sweep detunings)");
    exporter->add_option("--span2", span2, "second-axis span (mT, s11 only)");
    exporter->add_option("--noise", noise, "noise sigma (linear units; dB for sweep)");
    exporter->add_option("--peak-db", peak_db,
                         "sweep only: emit a Lorentzian line at this peak instead of the "
                         "model curve");
    exporter->add_option("--floor-db", floor_db, "sweep line shape: noise floor");
    exporter->add_option("--fwhm", fwhm, "sweep line shape: FWHM in axis units");
    add_common(exporter, opts, true);

    auto* field = app.add_subcommand("field", "resonator mode and coupling report");
    add_common(field, opts);

    auto* calibrate =
        app.add_subcommand("calibrate", "electro-optics efficiency from heterodyne voltages");
    double vsa = 0.0, vfringes = 0.0, eta_lo = 0.068, contrast = 0.8;
    calibrate->add_option("--vsa", vsa, "beatnote amplitude at the spectrum analyzer [V]")
        ->required();
    calibrate->add_option("--vfringes", vfringes, "DC fringe amplitude [V]")->required();
    calibrate->add_option("--eta-lo", eta_lo, "LO sideband efficiency");
    calibrate->add_option("--contrast", contrast, "beating contrast (informational)");
    add_common(calibrate, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (simulate->parsed()) return run_simulate(opts, axis, start, stop, steps);
        if (fit->parsed()) return run_fit(opts, fit_kind, data_path, max_evals);
        if (predict->parsed()) return run_predict(opts);
        if (exporter->parsed())
            return run_export(opts, export_kind, n1, n2, span1, span2, noise, peak_db,
                              floor_db, fwhm);
        if (field->parsed()) return run_field(opts);
        if (calibrate->parsed()) return run_calibrate(opts, vsa, vfringes, eta_lo, contrast);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitParse;
}
