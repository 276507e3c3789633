#ifndef OPTORF_SWEEP_HPP
#define OPTORF_SWEEP_HPP

/**
 * @file sweep.hpp
 * @brief Model-curve sweeps over the experimentally accessible axes and the
 *        seeded synthetic-data generators feeding the fit workflows.
 */

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "optorf/config.hpp"

namespace optorf {

enum class SweepAxis { spin_detuning, cavity_detuning, wavelength, rf_power };

SweepAxis sweep_axis_from_name(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);
/// Axis units: spin/cavity detunings in Hz, wavelength in nm (absolute),
/// RF power in mW.
std::string sweep_axis_unit(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::spin_detuning;
    double start = 0.0;
    double stop = 0.0;
    int steps = 0;

    void validate() const;  ///< steps >= 2 and start != stop
    std::vector<double> grid() const;
};

struct SweepRow {
    double axis_value = 0.0;
    double eta_eo_db = 0.0;
    double eta_q_db = 0.0;
};

/// Evaluates the transduction model along the sweep. The RF Rabi frequency
/// follows the cavity resonance; the model rescale from the configuration is
/// applied to both efficiency columns.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config, const SweepSpec& spec);

/// Point prediction at the configured operating point, with the reference
/// values the defaults describe for side-by-side comparison.
struct Prediction {
    double mode_frequency_ghz = 0.0;
    double rf_rabi_rad_s = 0.0;
    double position_factor = 0.0;
    double eta_eo = 0.0;            ///< linear, rescale applied
    double eta_eo_db = 0.0;
    double eta_q_db = 0.0;
    double eta_q_offset_db = 0.0;   ///< 10 log10(P_o w_rf / P_rf w_o)
    double cooperativity_estimate = 0.0;
    double vacuum_coupling_rad_s = 0.0;
    double population_imbalance = 0.0;
    double rescale_db = 0.0;
};

Prediction predict(const ExperimentConfig& config);

// ---- synthetic data -------------------------------------------------------

/// Deterministic Gaussian noise source (fixed algorithm, fixed seed => same
/// stream on every platform).
class NoiseSource {
  public:
    explicit NoiseSource(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    double gaussian(double sigma);

  private:
    double uniform();
    std::uint64_t state_;
};

/// Reflection map of the configured cavity over symmetric frequency/field
/// windows, with optional Gaussian noise of width sigma on the quadratures.
S11Map synthetic_s11_map(const ExperimentConfig& config, int n_freq, int n_field,
                         double freq_span_hz, double field_span_tesla, double noise_sigma,
                         std::uint64_t seed);

/// Transmission spectrum of the configured quartet with optional noise.
TransmissionSpectrum synthetic_absorption(const ExperimentConfig& config, int n_points,
                                          double detuning_span_hz, double noise_sigma,
                                          std::uint64_t seed);

/// Spin-detuning sweep with the model curve replaced by a Lorentzian of the
/// given peak/floor/width (dB, dB, axis units), plus dB-domain noise. This is
/// the beatnote-shaped dataset the sweep fit ingests.
std::vector<std::array<double, 3>> synthetic_sweep(double center, double span, int n_points,
                                                   double peak_db, double floor_db, double fwhm,
                                                   double noise_db, std::uint64_t seed,
                                                   double eta_q_offset_db);

}  // namespace optorf

#endif  // OPTORF_SWEEP_HPP
