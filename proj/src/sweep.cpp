#include "optorf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optorf/calibration.hpp"
#include "optorf/fitting.hpp"
#include "optorf/resonator.hpp"

namespace optorf {

SweepAxis sweep_axis_from_name(const std::string& name) {
    if (name == "spin_detuning") return SweepAxis::spin_detuning;
    if (name == "cavity_detuning") return SweepAxis::cavity_detuning;
    if (name == "wavelength") return SweepAxis::wavelength;
    if (name == "rf_power") return SweepAxis::rf_power;
    throw std::invalid_argument("unknown sweep axis: " + name);
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::spin_detuning: return "spin_detuning";
        case SweepAxis::cavity_detuning: return "cavity_detuning";
        case SweepAxis::wavelength: return "wavelength";
        case SweepAxis::rf_power: return "rf_power";
    }
    return "?";
}

std::string sweep_axis_unit(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::spin_detuning:
        case SweepAxis::cavity_detuning: return "Hz";
        case SweepAxis::wavelength: return "nm";
        case SweepAxis::rf_power: return "mW";
    }
    return "?";
}

void SweepSpec::validate() const {
    if (steps < 2) throw std::invalid_argument("SweepSpec: steps must be >= 2");
    if (!(start != stop)) throw std::invalid_argument("SweepSpec: start must differ from stop");
}

std::vector<double> SweepSpec::grid() const {
    validate();
    std::vector<double> xs(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        xs[static_cast<std::size_t>(i)] =
            start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return xs;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const SweepSpec& spec) {
    config.validate();
    const std::vector<double> xs = spec.grid();
    const CavityParams cavity = config.cavity();
    const ResonatorGeometry geom = config.geometry();
    const LambdaParams base = config.lambda_params();
    const AngularFrequency omega_o = config.omega_optical();

    std::vector<SweepRow> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        LambdaParams p = base;
        DriveConditions drive = config.drive();
        switch (spec.axis) {
            case SweepAxis::spin_detuning:
                p.spin_detuning += 2.0 * constants::pi * x;
                break;
            case SweepAxis::cavity_detuning:
                // moving the RF away from the (spin-resonant) cavity detunes
                // both the stored field and the spin leg
                drive.omega_rf =
                    AngularFrequency::from_rad_per_s(cavity.omega_c.rad_per_s +
                                                     2.0 * constants::pi * x);
                p.spin_detuning += 2.0 * constants::pi * x;
                break;
            case SweepAxis::wavelength:
                p.optical_detuning +=
                    wavelength_to_angular(x * 1e-9).rad_per_s - omega_o.rad_per_s;
                break;
            case SweepAxis::rf_power:
                drive.rf_power_w = x * 1e-3;
                break;
        }
        p.rf_rabi = rf_rabi_frequency(geom, drive, cavity);
        const double eta = model_rescale(eta_eo(p), config.model_rescale_db);
        const double eta_q = eta_q_from_eta_eo(eta, config.pump_power_w(), drive.rf_power_w,
                                               omega_o, drive.omega_rf);
        rows.push_back({x, db_power(eta), db_power(eta_q)});
    }
    return rows;
}

Prediction predict(const ExperimentConfig& config) {
    config.validate();
    const CavityParams cavity = config.cavity();
    const ResonatorGeometry geom = config.geometry();
    const DriveConditions drive = config.drive();

    Prediction out;
    out.mode_frequency_ghz = mode_frequency_hz(geom) * 1e-9;
    out.rf_rabi_rad_s = rf_rabi_frequency(geom, drive, cavity);
    out.position_factor = geom.position_factor();
    out.population_imbalance = config.population_imbalance();
    out.rescale_db = config.model_rescale_db;

    LambdaParams p = config.lambda_params();
    p.rf_rabi = out.rf_rabi_rad_s;
    out.eta_eo = model_rescale(eta_eo(p), config.model_rescale_db);
    out.eta_eo_db = db_power(out.eta_eo);
    out.eta_q_offset_db = db_power(config.pump_power_w() * drive.omega_rf.rad_per_s /
                                   (config.rf_power_w() * config.omega_optical().rad_per_s));
    out.eta_q_db = out.eta_eo_db + out.eta_q_offset_db;
    out.vacuum_coupling_rad_s = vacuum_coupling(geom, drive.omega_rf, config.spin_g_factor);
    out.cooperativity_estimate =
        cooperativity_estimate(geom, config.sample(), cavity, config.spins(), drive.omega_rf);
    return out;
}

// xorshift64* uniform generator feeding a Box-Muller transform; written out
// here so seeded files are byte-identical across standard libraries.
double NoiseSource::uniform() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    const std::uint64_t r = state_ * 0x2545f4914f6cdd1dull;
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
}

double NoiseSource::gaussian(double sigma) {
    if (sigma == 0.0) return 0.0;
    const double u1 = uniform();
    const double u2 = uniform();
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * constants::pi * u2);
}

S11Map synthetic_s11_map(const ExperimentConfig& config, int n_freq, int n_field,
                         double freq_span_hz, double field_span_tesla, double noise_sigma,
                         std::uint64_t seed) {
    if (n_freq < 1 || n_field < 1)
        throw std::invalid_argument("synthetic_s11_map: grid must be at least 1x1");
    config.validate();
    const CavityParams cavity = config.cavity();
    const SpinEnsembleParams spins = config.spins();

    const double f_center = cavity.omega_c.hz();
    // center the field axis on the spin-cavity crossing
    const double b_center =
        cavity.omega_c.rad_per_s * constants::hbar / (spins.g_factor * constants::mu_bohr);

    auto axis = [](double center, double span, int n) {
        std::vector<double> xs(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            xs[static_cast<std::size_t>(i)] =
                n == 1 ? center
                       : center - span / 2.0 + span * static_cast<double>(i) /
                                                   static_cast<double>(n - 1);
        return xs;
    };

    S11Map map = synthesize_s11_map(cavity, spins, axis(f_center, freq_span_hz, n_freq),
                                    axis(b_center, field_span_tesla, n_field),
                                    config.line_attenuation_db);
    if (noise_sigma > 0.0) {
        NoiseSource noise(seed);
        for (cplx& v : map.values)
            v += cplx(noise.gaussian(noise_sigma), noise.gaussian(noise_sigma));
    }
    return map;
}

TransmissionSpectrum synthetic_absorption(const ExperimentConfig& config, int n_points,
                                          double detuning_span_hz, double noise_sigma,
                                          std::uint64_t seed) {
    if (n_points < 2) throw std::invalid_argument("synthetic_absorption: need >= 2 points");
    config.validate();
    std::vector<double> detunings(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        detunings[static_cast<std::size_t>(i)] =
            -detuning_span_hz / 2.0 +
            detuning_span_hz * static_cast<double>(i) / static_cast<double>(n_points - 1);
    TransmissionSpectrum spectrum = synthesize_transmission(config.quartet(), detunings);
    if (noise_sigma > 0.0) {
        NoiseSource noise(seed);
        for (double& t : spectrum.transmission)
            t = std::clamp(t + noise.gaussian(noise_sigma), 1e-12, 1.0);
    }
    return spectrum;
}

std::vector<std::array<double, 3>> synthetic_sweep(double center, double span, int n_points,
                                                   double peak_db, double floor_db, double fwhm,
                                                   double noise_db, std::uint64_t seed,
                                                   double eta_q_offset_db) {
    if (n_points < 2) throw std::invalid_argument("synthetic_sweep: need >= 2 points");
    const LorentzianFloorModel model{center, fwhm, db_to_linear(peak_db),
                                     db_to_linear(floor_db)};
    NoiseSource noise(seed);
    std::vector<std::array<double, 3>> rows;
    rows.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = center - span / 2.0 +
                         span * static_cast<double>(i) / static_cast<double>(n_points - 1);
        const double eta_db = db_power(lorentzian_floor(x, model)) + noise.gaussian(noise_db);
        rows.push_back({x, eta_db, eta_db + eta_q_offset_db});
    }
    return rows;
}

}  // namespace optorf
