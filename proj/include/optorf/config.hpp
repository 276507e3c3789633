#ifndef OPTORF_CONFIG_HPP
#define OPTORF_CONFIG_HPP

/**
 * @file config.hpp
 * @brief Experiment configuration: every model parameter with documented
 *        defaults equal to the fitted values of the reference experiment.
 *        Files use TOML-syntax sections (key = value); unknown keys are
 *        rejected so typos cannot silently fall back to defaults.
 */

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "optorf/absorption.hpp"
#include "optorf/cavity_spin.hpp"
#include "optorf/resonator.hpp"
#include "optorf/transduction.hpp"

namespace optorf {

/// Configuration failure naming the offending section/key.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string& field, const std::string& message)
        : std::runtime_error("config field '" + field + "': " + message), field_(field) {}
    const std::string& field() const { return field_; }

  private:
    std::string field_;
};

struct ExperimentConfig {
    // [cavity]
    double cavity_frequency_ghz = 12.29;
    double kappa_c_mhz = 4.52;
    double kappa_t_mhz = 8.57;

    // [spins]
    double spin_g_factor = 8.20;
    double spin_linewidth_mhz = 219.14;
    double spin_cooperativity = 0.135;
    double line_attenuation_db = -5.4;

    // [absorption]
    double center_wavelength_nm = 1532.636;
    double od_direct = 0.518;
    double od_crossed = 0.028;
    double optical_fwhm_mhz = 755.0;
    double lorentz_fraction = 0.1;  ///< width split; broadening is mostly inhomogeneous
    double g_ground = 8.20;
    double g_excited = 7.80;
    double absorption_field_mt = 105.0;

    // [geometry]
    double box_a_mm = 15.0;
    double box_b_mm = 10.0;
    double box_d_mm = 20.0;
    double probe_x_mm = 7.5;
    double probe_z_mm = 2.0;

    // [drive]
    double rf_power_mw = 37.0;
    double rf_frequency_ghz = 12.29;
    double g_transverse = 8.45;

    // [sample]
    double host_density_per_cm3 = 1.3e22;
    double doping_ppm = 50.0;
    double isotope_fraction = 0.77;
    double crystal_volume_mm3 = 60.0;
    double temperature_k = 2.5;

    // [optics]
    double pump_power_mw = 1.05;
    double probe_wavelength_nm = 1532.727;
    double pump_rabi_mhz = 1.0;  ///< only enters the cooperativity-form report

    // [lambda]
    double optical_detuning_mhz = 0.0;
    double spin_detuning_mhz = 0.0;
    /// Fixed imbalance override; computed from the RF frequency and the sample
    /// temperature when unset.
    std::optional<double> pop_imbalance;

    // [model]
    double model_rescale_db = 0.0;

    // ---- derived views ----------------------------------------------------
    CavityParams cavity() const;
    SpinEnsembleParams spins() const;
    ZeemanQuartet quartet() const;
    ResonatorGeometry geometry() const;
    DriveConditions drive() const;
    SampleSpec sample() const;
    /// Λ-system parameters at the configured operating point.
    LambdaParams lambda_params() const;
    double population_imbalance() const;
    AngularFrequency omega_optical() const;
    double rf_power_w() const { return rf_power_mw * 1e-3; }
    double pump_power_w() const { return pump_power_mw * 1e-3; }

    /// Validates every sub-block; throws ConfigError naming the field.
    void validate() const;
};

/// Parses a TOML-syntax config file and overlays it on the defaults.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& is);

/// Writes the full configuration (documented defaults included).
void write_config(std::ostream& os, const ExperimentConfig& config);

}  // namespace optorf

#endif  // OPTORF_CONFIG_HPP
